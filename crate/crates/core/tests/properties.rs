use proptest::prelude::*;

use splitquat::algebra::{Exact, Quaternion, Signature};
use splitquat::cli::parse_poly;
use splitquat::factorization::{all_factorizations, complementary};
use splitquat::polynomials::QuatPoly;
use splitquat::Error;

fn quat(sig: Signature) -> impl Strategy<Value = Quaternion<Exact>> {
    prop::array::uniform4(-3i64..=3).prop_map(move |c| {
        Quaternion::new(sig, Exact::int(c[0]), Exact::int(c[1]), Exact::int(c[2]), Exact::int(c[3]))
    })
}

fn sig() -> impl Strategy<Value = Signature> {
    prop_oneof![Just(Signature::Split), Just(Signature::Hamiltonian)]
}

fn product() -> impl Strategy<Value = QuatPoly<Exact>> {
    sig().prop_flat_map(|s| (quat(s), quat(s))).prop_map(|(a, b)| QuatPoly::linear(&a).mul(&QuatPoly::linear(&b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorizations_expand_back(c in product()) {
        match all_factorizations(&c) {
            Ok(fs) => {
                prop_assert!(fs.len() == 2 || fs.len() == 6);
                for f in &fs {
                    prop_assert_eq!(f.expand(), c.clone());
                    let k = complementary(f).unwrap();
                    prop_assert_eq!(k.expand(), c.clone());
                    prop_assert_eq!(complementary(&k).unwrap().h2, f.h2.clone());
                }
            }
            Err(Error::NonGeneric(_) | Error::Inexact(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn display_parses_back(c in product()) {
        let text = c.to_string();
        prop_assert_eq!(parse_poly(&text, c.signature()).unwrap(), c);
    }
}
