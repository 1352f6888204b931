//! Factorizations of a split quaternion quadratic, with labels and the
//! complementary pairing.

use splitquat::algebra::Signature;
use splitquat::cli::parse_poly;
use splitquat::factorization::{all_factorizations, complementary};

fn main() -> splitquat::Result<()> {
    let c = parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", Signature::Split)?;
    println!("C = {c}");
    println!("C C~ = {}", c.norm_polynomial());

    let fs = all_factorizations(&c)?;
    for f in &fs {
        let k = complementary(f)?;
        assert_eq!(f.expand(), c);
        println!("{f}");
        println!("    complement {k}");
    }
    Ok(())
}
