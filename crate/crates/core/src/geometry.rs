//! Projective plane over vectorial quaternions.
//!
//! With split quaternions the bilinear form `⟨a, b⟩ = a₁b₁ − a₂b₂ − a₃b₃`
//! gives universal hyperbolic geometry with the null circle `⟨x, x⟩ = 0` as
//! absolute. Hamiltonian quaternions give the elliptic plane and no real
//! null points. Points and lines share the same representation and the pole
//! of the line `[u]` is the point `[u]`.

use std::fmt;

use crate::algebra::{Quaternion, Scalar, Signature};
use crate::error::{Error, Result};

fn check_vectorial<S: Scalar>(a: &Quaternion<S>) -> Result<()> {
    if a.is_vectorial() {
        Ok(())
    } else {
        Err(Error::NotVectorial)
    }
}

fn eps<S: Scalar>(sig: Signature) -> S {
    S::from_i64(sig.epsilon())
}

/// `½(a b̄ + b ā)` for vectorial `a`, `b`.
pub fn inner_product<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Result<S> {
    check_vectorial(a)?;
    check_vectorial(b)?;
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(form(a, b))
}

pub(crate) fn form<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> S {
    a.x.clone() * b.x.clone() - eps::<S>(a.sig) * (a.y.clone() * b.y.clone() + a.z.clone() * b.z.clone())
}

/// `½(ab − ba)` for vectorial `a`, `b`.
pub fn cross_product<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Result<Quaternion<S>> {
    check_vectorial(a)?;
    check_vectorial(b)?;
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch);
    }
    Ok(cross(a, b))
}

pub(crate) fn cross<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    let p = |u: &S, v: &S| u.clone() * v.clone();
    Quaternion::vector(
        a.sig,
        -eps::<S>(a.sig) * (p(&a.y, &b.z) - p(&a.z, &b.y)),
        p(&a.z, &b.x) - p(&a.x, &b.z),
        p(&a.x, &b.y) - p(&a.y, &b.x),
    )
}

fn max_abs<S: Scalar>(q: &Quaternion<S>) -> S {
    q.vector_coords()
        .iter()
        .map(Scalar::abs)
        .fold(S::zero(), |m, c| if c > m { c } else { m })
}

fn vanishes<S: Scalar>(v: &S, scale: &S) -> bool {
    v.negligible_against(scale)
}

/// Projective class of a nonzero vectorial quaternion. Shared by points and
/// lines through [`ProjPoint`] and [`ProjLine`].
#[derive(Clone, Debug)]
struct Proj<S> {
    rep: Quaternion<S>,
}

impl<S: Scalar> Proj<S> {
    fn new(q: Quaternion<S>) -> Result<Self> {
        check_vectorial(&q)?;
        if q.vector_coords().iter().all(|c| c.is_zero()) {
            return Err(Error::degenerate("zero vector has no projective class"));
        }
        let c = S::normalize_projective(&q.vector_coords());
        Ok(Proj {
            rep: Quaternion::vector(q.sig, c[0].clone(), c[1].clone(), c[2].clone()),
        })
    }

    fn same(&self, other: &Self) -> bool {
        if self.rep.sig != other.rep.sig {
            return false;
        }
        let scale = max_abs(&self.rep) * max_abs(&other.rep);
        let (a, b) = (self.rep.vector_coords(), other.rep.vector_coords());
        (0..3).all(|i| {
            let j = (i + 1) % 3;
            let m = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            vanishes(&m, &scale)
        })
    }

    fn self_form(&self) -> S {
        form(&self.rep, &self.rep)
    }

    fn is_null(&self) -> bool {
        let scale = max_abs(&self.rep);
        vanishes(&self.self_form(), &(scale.clone() * scale))
    }
}

macro_rules! projective_type {
    ($name:ident, $what:literal) => {
        #[doc = concat!("Projective ", $what, " `[x]` of the plane.")]
        #[derive(Clone, Debug)]
        pub struct $name<S>(Proj<S>);

        impl<S: Scalar> $name<S> {
            /// Fails for non-vectorial or zero representatives.
            pub fn new(rep: Quaternion<S>) -> Result<Self> {
                Proj::new(rep).map($name)
            }

            /// Split-signature representative `x𝐢 + y𝐣 + z𝐤`.
            pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
                Self::new(Quaternion::from_ints(Signature::Split, 0, x, y, z)).expect("nonzero vector")
            }

            /// Canonical representative.
            pub fn rep(&self) -> &Quaternion<S> {
                &self.0.rep
            }

            pub fn coords(&self) -> [S; 3] {
                self.0.rep.vector_coords()
            }

            pub fn signature(&self) -> Signature {
                self.0.rep.sig
            }

            pub fn is_null(&self) -> bool {
                self.0.is_null()
            }

            pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> $name<T> {
                $name::new(self.0.rep.map(f)).expect("nonzero after conversion")
            }
        }

        impl<S: Scalar> PartialEq for $name<S> {
            fn eq(&self, other: &Self) -> bool {
                self.0.same(&other.0)
            }
        }

        impl<S: Scalar> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[{}]", self.0.rep)
            }
        }
    };
}

projective_type!(ProjPoint, "point");
projective_type!(ProjLine, "line");

impl<S: Scalar> ProjPoint<S> {
    /// The polar line `[x]`.
    pub fn polar(&self) -> ProjLine<S> {
        ProjLine(self.0.clone())
    }
}

impl<S: Scalar> ProjLine<S> {
    /// The pole `[u]`.
    pub fn pole(&self) -> ProjPoint<S> {
        ProjPoint(self.0.clone())
    }
}

/// `[a × b]`.
pub fn join<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjLine<S>> {
    if p.signature() != q.signature() {
        return Err(Error::SignatureMismatch);
    }
    if p == q {
        return Err(Error::degenerate(format!("join of coincident points {p}")));
    }
    ProjLine::new(cross(p.rep(), q.rep()))
}

/// `[u × v]`.
pub fn meet<S: Scalar>(l: &ProjLine<S>, m: &ProjLine<S>) -> Result<ProjPoint<S>> {
    if l.signature() != m.signature() {
        return Err(Error::SignatureMismatch);
    }
    if l == m {
        return Err(Error::degenerate(format!("meet of coincident lines {l}")));
    }
    ProjPoint::new(cross(l.rep(), m.rep()))
}

pub fn incident<S: Scalar>(u: &ProjLine<S>, x: &ProjPoint<S>) -> bool {
    let scale = max_abs(u.rep()) * max_abs(x.rep());
    vanishes(&form(u.rep(), x.rep()), &scale)
}

/// `1 − ⟨a,b⟩² / (⟨a,a⟩⟨b,b⟩)`.
pub fn quadrance<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> Result<S> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.is_null() || b.is_null() {
        return Err(Error::NullPoint);
    }
    let ab = form(a.rep(), b.rep());
    let d = (a.0.self_form() * b.0.self_form()).recip().ok_or(Error::NullPoint)?;
    Ok(S::one() - ab.clone() * ab * d)
}

/// Reflection in a non-null line, equivalently in its pole: `[m x m̄]`.
pub fn reflect<S: Scalar>(mirror: &ProjLine<S>, x: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    if mirror.is_null() {
        return Err(Error::degenerate(format!("reflection in null line {mirror}")));
    }
    ProjPoint::new(mirror.rep().sandwich(x.rep()))
}

/// `[h x h̄]`.
pub fn rotate<S: Scalar>(h: &Quaternion<S>, x: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    if h.sig != x.signature() {
        return Err(Error::SignatureMismatch);
    }
    if h.norm().is_zero() {
        return Err(Error::degenerate(format!("rotation by null quaternion {h}")));
    }
    ProjPoint::new(h.sandwich(x.rep()))
}

/// The fixed point `[h − h̄]` of the rotation by `h`.
pub fn rotation_center<S: Scalar>(h: &Quaternion<S>) -> Result<ProjPoint<S>> {
    if h.is_real() {
        return Err(Error::degenerate(format!("real quaternion {h} acts as identity")));
    }
    ProjPoint::new(h.vector_part())
}

/// Points `M` on the join of `A` and `B` with `q(A, M) = q(M, B)`.
///
/// Along the pencil `m = a + s b` the condition reduces to
/// `(⟨a,a⟩⟨b,b⟩ − ⟨a,b⟩²)(⟨a,a⟩ − s²⟨b,b⟩) = 0`. Null candidates and pairs
/// on a null line (where every point qualifies) yield no midpoints.
pub fn midpoints<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> Result<Vec<ProjPoint<S>>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.is_null() || b.is_null() {
        return Err(Error::NullPoint);
    }
    if a == b {
        return Err(Error::degenerate(format!("midpoints of coincident points {a}")));
    }
    let (aa, bb) = (a.0.self_form(), b.0.self_form());
    let ab = form(a.rep(), b.rep());
    let gram = aa.clone() * bb.clone() - ab.clone() * ab;
    if vanishes(&gram, &(aa.abs() * bb.abs())) {
        return Ok(Vec::new());
    }
    let ratio = aa.try_div(&bb)?;
    let Some(s) = ratio.sqrt()? else {
        return Ok(Vec::new());
    };
    let mut out: Vec<ProjPoint<S>> = Vec::new();
    for s in [s.clone(), -s] {
        let m = a.rep().clone() + b.rep().scale(&s);
        let Ok(p) = ProjPoint::new(m) else { continue };
        if !p.is_null() && !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Vanishing of the determinant of the three representatives.
pub fn collinear<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>, c: &ProjPoint<S>) -> bool {
    let (a, b, c) = (a.coords(), b.coords(), c.coords());
    let m = |i: usize, j: usize| b[i].clone() * c[j].clone() - b[j].clone() * c[i].clone();
    let det = a[0].clone() * m(1, 2) - a[1].clone() * m(0, 2) + a[2].clone() * m(0, 1);
    let scale = [&a, &b, &c]
        .iter()
        .map(|v| v.iter().map(Scalar::abs).fold(S::zero(), |m, c| if c > m { c } else { m }))
        .fold(S::one(), |acc, x| acc * x);
    vanishes(&det, &scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Approx, Exact};
    use proptest::prelude::*;

    type P = ProjPoint<Exact>;
    type L = ProjLine<Exact>;

    fn v(x: i64, y: i64, z: i64) -> Quaternion<Exact> {
        Quaternion::from_ints(Signature::Split, 0, x, y, z)
    }

    fn p(x: i64, y: i64, z: i64) -> P {
        P::from_ints(x, y, z)
    }

    fn l(x: i64, y: i64, z: i64) -> L {
        L::from_ints(x, y, z)
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(&v(0, 1, 0), &v(0, 0, 1)).unwrap(), Exact::int(0));
        assert_eq!(inner_product(&v(1, 0, 0), &v(1, 0, 0)).unwrap(), Exact::int(1));
        assert_eq!(inner_product(&v(0, 1, 0), &v(0, 1, 0)).unwrap(), Exact::int(-1));
        assert_eq!(inner_product(&v(0, 1, 0), &v(0, 4, 3)).unwrap(), Exact::int(-4));
        let real = Quaternion::from_ints(Signature::Split, 1, 0, 0, 0);
        assert_eq!(inner_product(&real, &v(1, 0, 0)), Err(Error::NotVectorial));
    }

    #[test]
    fn inner_product_matches_quaternion_definition() {
        let (a, b) = (v(2, -1, 3), v(1, 5, -2));
        let sym = &a * &b.conjugate() + &b * &a.conjugate();
        assert_eq!(sym.w, Exact::int(2) * inner_product(&a, &b).unwrap());
        let anti = &a * &b - &b * &a;
        assert_eq!(anti, cross_product(&a, &b).unwrap().scale(&Exact::int(2)));
    }

    #[test]
    fn cross_products() {
        assert_eq!(cross_product(&v(1, 0, 0), &v(0, 1, 0)).unwrap(), v(0, 0, 1));
        assert!(cross_product(&v(2, 3, 5), &v(2, 3, 5)).unwrap().is_zero());
        assert_eq!(cross_product(&v(0, 1, 0), &v(1, 3, 1)).unwrap(), v(-1, 0, -1));
    }

    #[test]
    fn joins_and_meets() {
        assert_eq!(join(&p(1, 0, 0), &p(0, 1, 0)).unwrap(), l(0, 0, 1));
        assert_eq!(join(&p(0, 1, 0), &p(1, 3, 1)).unwrap(), l(1, 0, 1));
        let (a, b, c) = (p(1, 2, 0), p(3, -1, 2), p(0, 1, 5));
        assert_eq!(meet(&join(&a, &b).unwrap(), &join(&a, &c).unwrap()).unwrap(), a);
        assert!(matches!(join(&a, &a), Err(Error::Degenerate(_))));
    }

    #[test]
    fn incidence() {
        assert!(incident(&l(0, 0, 1), &p(1, 0, 0)));
        assert!(incident(&l(1, 0, 1), &p(3, -1, 3)));
        assert!(!incident(&l(1, 0, 0), &p(1, 0, 0)));
    }

    #[test]
    fn quadrances() {
        assert_eq!(quadrance(&p(0, 1, 0), &p(0, 0, 1)).unwrap(), Exact::int(1));
        assert_eq!(quadrance(&p(0, 1, 0), &p(0, 1, 0)).unwrap(), Exact::int(0));
        assert_eq!(quadrance(&p(0, 1, 0), &p(0, 4, 3)).unwrap(), Exact::ratio(9, 25));
        assert_eq!(quadrance(&p(1, 1, 0), &p(0, 1, 0)), Err(Error::NullPoint));
    }

    #[test]
    fn null_tests() {
        assert!(p(1, 1, 0).is_null());
        assert!(l(1, 0, 1).is_null());
        assert!(!p(0, 1, 0).is_null());
    }

    #[test]
    fn reflections() {
        assert_eq!(reflect(&l(0, 1, 0), &p(1, 0, 0)).unwrap(), p(1, 0, 0));
        let m = l(2, 1, 0);
        let x = p(1, 3, -2);
        assert_eq!(reflect(&m, &reflect(&m, &x).unwrap()).unwrap(), x);
        // the pole of the mirror is fixed as well
        assert_eq!(reflect(&m, &m.pole()).unwrap(), m.pole());
        assert!(matches!(reflect(&l(1, 1, 0), &x), Err(Error::Degenerate(_))));
    }

    #[test]
    fn rotation_centers() {
        let h = Quaternion::from_ints(Signature::Split, 1, 0, 0, 2);
        assert_eq!(rotation_center(&h).unwrap(), p(0, 0, 1));
        let h = Quaternion::new(Signature::Split, Exact::int(1), Exact::int(0), Exact::ratio(8, 5), Exact::ratio(6, 5));
        let c = rotation_center(&h).unwrap();
        assert_eq!(c, p(0, 4, 3));
        assert_eq!(c.coords(), [Exact::int(0), Exact::int(4), Exact::int(3)]);
        assert_eq!(rotate(&h, &c).unwrap(), c);
        assert!(rotation_center(&Quaternion::<Exact>::one(Signature::Split)).is_err());
    }

    #[test]
    fn midpoints_of_orthogonal_exterior_points() {
        let ms = midpoints(&p(0, 1, 0), &p(0, 0, 1)).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(ms.contains(&p(0, 1, 1)) && ms.contains(&p(0, 1, -1)));
        for m in &ms {
            assert_eq!(quadrance(&p(0, 1, 0), m).unwrap(), Exact::ratio(1, 2));
            assert_eq!(quadrance(m, &p(0, 0, 1)).unwrap(), Exact::ratio(1, 2));
        }
    }

    #[test]
    fn midpoints_with_surds() {
        let (a, b) = (p(1, 0, 0), p(2, 1, 0));
        let ms = midpoints(&a, &b).unwrap();
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert_eq!(quadrance(&a, m).unwrap(), quadrance(m, &b).unwrap());
        }
        let back = midpoints(&b, &a).unwrap();
        assert!(back.iter().all(|m| ms.contains(m)));
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&p(1, 0, 0), &p(0, 1, 0), &p(1, 1, 0)));
        assert!(collinear(&p(0, 1, 0), &p(1, 3, 1), &p(3, -1, 3)));
        assert!(!collinear(&p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)));
    }

    #[test]
    fn float_points() {
        let a = ProjPoint::<Approx>::from_ints(0, 1, 0);
        let b = ProjPoint::<Approx>::from_ints(0, 4, 3);
        assert!((quadrance(&a, &b).unwrap().value() - 0.36).abs() < 1e-12);
        assert_eq!(a.map(|c| Approx::new(c.value() * 3.0)), a);
    }

    fn vec3() -> impl Strategy<Value = (i64, i64, i64)> {
        (-7i64..=7, -7i64..=7, -7i64..=7).prop_filter("nonzero", |&(x, y, z)| (x, y, z) != (0, 0, 0))
    }

    fn quat() -> impl Strategy<Value = Quaternion<Exact>> {
        (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
            .prop_map(|(w, x, y, z)| Quaternion::from_ints(Signature::Split, w, x, y, z))
    }

    proptest! {
        #[test]
        fn join_passes_through_both_points(a in vec3(), b in vec3()) {
            let (a, b) = (v(a.0, a.1, a.2), v(b.0, b.1, b.2));
            let c = cross_product(&a, &b).unwrap();
            prop_assert!(inner_product(&c, &a).unwrap().is_zero());
            prop_assert!(inner_product(&c, &b).unwrap().is_zero());
        }

        #[test]
        fn quadrance_is_projective(a in vec3(), b in vec3(), l in 1i64..5, m in -5i64..-1) {
            let (pa, pb) = (p(a.0, a.1, a.2), p(b.0, b.1, b.2));
            let (sa, sb) = (p(a.0 * l, a.1 * l, a.2 * l), p(b.0 * m, b.1 * m, b.2 * m));
            prop_assert_eq!(quadrance(&pa, &pb).ok(), quadrance(&sa, &sb).ok());
        }

        #[test]
        fn rotations_are_isometries(h in quat(), a in vec3(), b in vec3()) {
            prop_assume!(!h.norm().is_zero());
            let (pa, pb) = (p(a.0, a.1, a.2), p(b.0, b.1, b.2));
            let (ra, rb) = (rotate(&h, &pa).unwrap(), rotate(&h, &pb).unwrap());
            prop_assert_eq!(ra.is_null(), pa.is_null());
            prop_assert_eq!(quadrance(&ra, &rb).ok(), quadrance(&pa, &pb).ok());
        }

        #[test]
        fn reflections_are_isometric_involutions(m in vec3(), a in vec3(), b in vec3()) {
            let mirror = l(m.0, m.1, m.2);
            prop_assume!(!mirror.is_null());
            let (pa, pb) = (p(a.0, a.1, a.2), p(b.0, b.1, b.2));
            let ra = reflect(&mirror, &pa).unwrap();
            prop_assert_eq!(reflect(&mirror, &ra).unwrap(), pa.clone());
            prop_assert_eq!(quadrance(&ra, &reflect(&mirror, &pb).unwrap()).ok(), quadrance(&pa, &pb).ok());
            if incident(&mirror, &pa) {
                prop_assert_eq!(ra, pa);
            }
        }

        #[test]
        fn zero_quadrance_iff_null_join(a in vec3(), b in vec3()) {
            let (pa, pb) = (p(a.0, a.1, a.2), p(b.0, b.1, b.2));
            prop_assume!(!pa.is_null() && !pb.is_null() && pa != pb);
            let q = quadrance(&pa, &pb).unwrap();
            prop_assert_eq!(q.is_zero(), join(&pa, &pb).unwrap().is_null());
        }

        #[test]
        fn midpoints_are_equidistant(a in vec3(), b in vec3()) {
            let (pa, pb) = (p(a.0, a.1, a.2), p(b.0, b.1, b.2));
            prop_assume!(!pa.is_null() && !pb.is_null() && pa != pb);
            if let Ok(ms) = midpoints(&pa, &pb) {
                for m in ms {
                    prop_assert_eq!(quadrance(&pa, &m).unwrap(), quadrance(&m, &pb).unwrap());
                    prop_assert!(collinear(&pa, &pb, &m));
                }
            }
        }
    }
}
