//! The Hamiltonian case: two factorizations, no real norm roots.

use splitquat::algebra::Signature;
use splitquat::cli::parse_poly;
use splitquat::factorization::all_factorizations;
use splitquat::linkage::{build_linkage, verify_linkage};

fn main() -> splitquat::Result<()> {
    let c = parse_poly("t^2 - (2+j+2k)t + (1+2i+j+2k)", Signature::Hamiltonian)?;
    println!("C = {c}");
    println!("C C~ = {}", c.norm_polynomial());
    for f in all_factorizations(&c)? {
        println!("  {f}  divisor {}", f.divisor);
    }
    let fb = build_linkage(&c)?;
    print!("{}", verify_linkage(&fb)?);
    Ok(())
}
