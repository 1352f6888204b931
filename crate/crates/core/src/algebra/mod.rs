//! Quaternion arithmetic over the [`Exact`] and [`Approx`] scalar backends,
//! for both the Hamiltonian and the split signature.

mod quaternion;
pub mod scalar;

pub use quaternion::{Quaternion, Signature};
pub use scalar::{set_tolerance, tolerance, Approx, Exact, Scalar};

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = Quaternion<Exact>;

    fn q(sig: Signature, w: i64, x: i64, y: i64, z: i64) -> Q {
        Q::from_ints(sig, w, x, y, z)
    }

    fn qr(sig: Signature, c: [(i64, i64); 4]) -> Q {
        let s = |(n, d): (i64, i64)| Exact::ratio(n, d);
        Q::new(sig, s(c[0]), s(c[1]), s(c[2]), s(c[3]))
    }

    const S: Signature = Signature::Split;
    const H: Signature = Signature::Hamiltonian;

    #[test]
    fn split_table() {
        let (one, i, j, k) = (q(S, 1, 0, 0, 0), q(S, 0, 1, 0, 0), q(S, 0, 0, 1, 0), q(S, 0, 0, 0, 1));
        assert_eq!(&i * &i, -one.clone());
        assert_eq!(&j * &j, one.clone());
        assert_eq!(&k * &k, one.clone());
        assert_eq!(&i * &j, k.clone());
        assert_eq!(&j * &i, -k.clone());
        assert_eq!(&j * &k, -i.clone());
        assert_eq!(&k * &j, i.clone());
        assert_eq!(&k * &i, j.clone());
        assert_eq!(&i * &k, -j.clone());
        // ijk = 1
        assert_eq!(&(&i * &j) * &k, one);
    }

    #[test]
    fn hamilton_table() {
        let (one, i, j, k) = (q(H, 1, 0, 0, 0), q(H, 0, 1, 0, 0), q(H, 0, 0, 1, 0), q(H, 0, 0, 0, 1));
        for u in [&i, &j, &k] {
            assert_eq!(u * u, -one.clone());
        }
        assert_eq!(&(&i * &j) * &k, -one);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
    }

    #[test]
    fn constant_coefficients_of_both_examples() {
        assert_eq!(&q(S, 1, 0, 1, 0) * &q(S, 1, 0, 0, 2), q(S, 1, -2, 1, 2));
        assert_eq!(&q(H, 1, 0, 1, 0) * &q(H, 1, 0, 0, 2), q(H, 1, 2, 1, 2));
    }

    #[test]
    fn mismatched_signatures_are_rejected() {
        let err = q(S, 1, 0, 0, 0).checked_mul(&q(H, 1, 0, 0, 0)).unwrap_err();
        assert_eq!(err, crate::Error::SignatureMismatch);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(q(S, 1, 1, -1, 0).conjugate(), q(S, 1, -1, 1, 0));
        assert_eq!(q(S, 5, 0, 0, 0).conjugate(), q(S, 5, 0, 0, 0));
    }

    #[test]
    fn norm_examples() {
        let h = q(S, 1, -2, 1, 2);
        assert_eq!(h.norm(), Exact::int(0));
        // product expansion oracle
        assert_eq!(&h * &h.conjugate(), Q::zero(S));
        assert_eq!(q(S, 0, 0, 1, 0).norm(), Exact::int(-1));
        let h = q(H, 1, 2, 1, 2);
        assert_eq!(h.norm(), Exact::int(10));
        assert_eq!(&h * &h.conjugate(), q(H, 10, 0, 0, 0));
    }

    #[test]
    fn inverse_examples() {
        let j = q(S, 0, 0, 1, 0);
        assert_eq!(j.inverse().unwrap(), j);
        let h = q(S, 0, 0, -1, -2);
        let inv = h.inverse().unwrap();
        assert_eq!(inv, qr(S, [(0, 1), (0, 1), (-1, 5), (-2, 5)]));
        assert_eq!(&h * &inv, Q::one(S));
        assert_eq!(q(S, 0, 1, 1, 0).inverse(), Err(crate::Error::NonInvertible));
    }

    #[test]
    fn vector_part_examples() {
        assert_eq!(q(S, 1, 0, 0, 2).vector_part(), q(S, 0, 0, 0, 2));
        let h = qr(S, [(1, 1), (0, 1), (8, 5), (6, 5)]);
        assert_eq!(h.vector_part(), qr(S, [(0, 1), (0, 1), (8, 5), (6, 5)]));
        assert!(q(S, 7, 0, 0, 0).vector_part().is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(q(S, 1, -2, 1, 2).to_string(), "1 - 2i + j + 2k");
        assert_eq!(qr(S, [(0, 1), (0, 1), (-3, 5), (4, 5)]).to_string(), "-3/5j + 4/5k");
        assert_eq!(Q::zero(S).to_string(), "0");
    }

    fn small_q() -> impl Strategy<Value = (i64, i64, i64, i64, i64)> {
        (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6, 1i64..=4)
    }

    fn build(sig: Signature, (w, x, y, z, d): (i64, i64, i64, i64, i64)) -> Q {
        qr(sig, [(w, d), (x, d), (y, d), (z, d)])
    }

    fn any_sig() -> impl Strategy<Value = Signature> {
        prop_oneof![Just(S), Just(H)]
    }

    proptest! {
        #[test]
        fn conjugate_reverses_products(sig in any_sig(), a in small_q(), b in small_q()) {
            let (a, b) = (build(sig, a), build(sig, b));
            prop_assert_eq!((&a * &b).conjugate(), &b.conjugate() * &a.conjugate());
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }

        #[test]
        fn norm_is_multiplicative(sig in any_sig(), a in small_q(), b in small_q()) {
            let (a, b) = (build(sig, a), build(sig, b));
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
            prop_assert_eq!(&a * &a.conjugate(), Q::real(sig, a.norm()));
        }

        #[test]
        fn associativity(sig in any_sig(), a in small_q(), b in small_q(), c in small_q()) {
            let (a, b, c) = (build(sig, a), build(sig, b), build(sig, c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_is_two_sided(sig in any_sig(), a in small_q()) {
            let a = build(sig, a);
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(&a * &inv, Q::one(sig));
                    prop_assert_eq!(&inv * &a, Q::one(sig));
                }
                Err(_) => prop_assert!(a.norm().is_zero()),
            }
        }

        #[test]
        fn hamiltonian_norm_is_definite(a in small_q()) {
            let a = build(H, a);
            let n = a.norm();
            prop_assert!(n >= Exact::int(0));
            prop_assert_eq!(n.is_zero(), a.is_zero());
        }
    }

    #[test]
    fn split_norm_takes_both_signs() {
        assert!(q(S, 1, 0, 0, 0).norm() > Exact::int(0));
        assert!(q(S, 0, 0, 1, 0).norm() < Exact::int(0));
    }
}
