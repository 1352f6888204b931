//! The six legs of a generic split quadratic: joints, opposite quadrances,
//! coupler conics and focal points.

use splitquat::algebra::Signature;
use splitquat::cli::parse_poly;
use splitquat::geometry::quadrance;
use splitquat::linkage::{build_linkage, coupler_conic};

fn main() -> splitquat::Result<()> {
    let c = parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", Signature::Split)?;
    let fb = build_linkage(&c)?;
    for leg in &fb.legs {
        let label = leg.label.map(|l| l.to_string()).unwrap_or_default();
        println!("A{label} = {}  B{label} = {}", leg.fixed_joint, leg.moving_joint_initial);
    }
    for (i, j) in fb.complementary_pairs() {
        let (a, b) = (&fb.legs[i], &fb.legs[j]);
        println!(
            "\n{} / {}: q(A,B) = {}, {}; q(A,A') = {}, q(B,B') = {}",
            a.factorization,
            b.factorization,
            quadrance(&a.fixed_joint, &a.moving_joint_initial)?,
            quadrance(&b.fixed_joint, &b.moving_joint_initial)?,
            quadrance(&a.fixed_joint, &b.fixed_joint)?,
            quadrance(&a.moving_joint_initial, &b.moving_joint_initial)?,
        );
        let conic = coupler_conic(a, b)?;
        println!("coupler conic G(t) = {}", conic.reduced);
        let params: Vec<String> = conic.null_tangent_params.iter().map(|t| t.to_string()).collect();
        println!("null tangents at t = {}", params.join(", "));
        for p in &conic.focal_points {
            println!("  focal point {p}");
        }
    }
    Ok(())
}
