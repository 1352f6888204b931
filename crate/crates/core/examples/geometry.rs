//! Points and lines of the split quaternion plane: joins, meets,
//! quadrance, reflections and rotations.

use splitquat::algebra::{Exact, Quaternion, Signature};
use splitquat::geometry::{join, meet, midpoints, quadrance, reflect, rotate, rotation_center, ProjLine, ProjPoint};

fn main() -> splitquat::Result<()> {
    let a = ProjPoint::<Exact>::from_ints(0, 1, 0);
    let b = ProjPoint::from_ints(0, 4, 3);
    let c = ProjPoint::from_ints(1, 3, 1);

    let ab = join(&a, &b)?;
    let bc = join(&b, &c)?;
    println!("{a} v {b} = {ab}, null: {}", ab.is_null());
    println!("{a} v {c} = {}, null: {}", join(&a, &c)?, join(&a, &c)?.is_null());
    println!("{ab} ^ {bc} = {}", meet(&ab, &bc)?);
    println!("q({a}, {b}) = {}", quadrance(&a, &b)?);

    let mirror = ProjLine::from_ints(3, 1, 1);
    let r = reflect(&mirror, &b)?;
    println!("reflection of {b} in {mirror}: {r}");
    assert_eq!(reflect(&mirror, &r)?, b);

    // x -> [h x h~] rotates about [h - h~]
    let h = Quaternion::from_ints(Signature::Split, 1, 0, 0, 2);
    println!("rotation center of {h}: {}", rotation_center(&h)?);
    let (ra, rb) = (rotate(&h, &a)?, rotate(&h, &b)?);
    println!("q before {}, after {}", quadrance(&a, &b)?, quadrance(&ra, &rb)?);

    for m in midpoints(&a, &b)? {
        println!("midpoint {m}: q = {} and {}", quadrance(&a, &m)?, quadrance(&m, &b)?);
    }
    Ok(())
}
