//! Norm polynomials and their real root structure.
//!
//! Rational roots, surds `a ± √d` and irreducible quadratics are reported
//! separately; roots needing a second radicand are left unresolved.

use splitquat::algebra::Signature;
use splitquat::cli::parse_poly;

fn main() -> splitquat::Result<()> {
    for src in [
        "t^2 - (2+j+2k)t + (1-2i+j+2k)",
        "(t - (1+j))(t - (1-i+2j))",
        "(t - (2i+j))(t - (3j))",
        "(t - (j+3k))(t - (1-i+2j))",
    ] {
        let c = parse_poly(src, Signature::Split)?;
        let n = c.norm_polynomial();
        let roots = n.real_roots()?;
        println!("{c}");
        println!("  C C~ = {n}");
        println!("  real roots: {}", roots.real.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "));
        for p in &roots.complex {
            println!("  no real roots: {p}");
        }
        for p in &roots.unresolved {
            println!("  unresolved: {p}");
        }
    }
    Ok(())
}
