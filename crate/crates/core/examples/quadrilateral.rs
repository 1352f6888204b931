//! Completes an equal-quadrance quadrilateral from three of its vertices.

use splitquat::algebra::Exact;
use splitquat::geometry::{quadrance, ProjPoint};
use splitquat::linkage::construct_equal_quadrilateral;

fn main() -> splitquat::Result<()> {
    let a12 = ProjPoint::<Exact>::from_ints(0, 1, 0);
    let a34 = ProjPoint::from_ints(1, 2, 3);
    let b34 = ProjPoint::from_ints(0, 0, 1);
    for b12 in construct_equal_quadrilateral(&a12, &a34, &b34)? {
        println!("B12 = {b12}");
        println!("  q(A12,A34) = {}  q(B12,B34) = {}", quadrance(&a12, &a34)?, quadrance(&b12, &b34)?);
        println!("  q(A12,B12) = {}  q(A34,B34) = {}", quadrance(&a12, &b12)?, quadrance(&a34, &b34)?);
    }
    Ok(())
}
