//! Runs the joint identities over both scalar backends.

use splitquat::algebra::{Approx, Scalar, Signature};
use splitquat::cli::{parse_poly, to_float};
use splitquat::linkage::{build_linkage, verify_linkage};

fn main() -> splitquat::Result<()> {
    let c = parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", Signature::Split)?;

    let exact = verify_linkage(&build_linkage(&c)?)?;
    println!("exact backend\n{exact}");

    let float = verify_linkage(&build_linkage(&to_float(&c))?)?;
    println!("float backend (tolerance {})\n{float}", splitquat::algebra::tolerance());

    // roots ±√10 and 1 ± √3 need two radicands, so only floats work here
    let c = parse_poly("(t - (j+3k))(t - (1-i+2j))", Signature::Split)?;
    match build_linkage(&c) {
        Err(e) => println!("exact backend: {e}"),
        Ok(_) => unreachable!(),
    }
    let report = verify_linkage(&build_linkage(&c.map(Approx::from_exact))?)?;
    println!("float backend\n{report}");
    assert!(exact.passed() && float.passed() && report.passed());
    Ok(())
}
