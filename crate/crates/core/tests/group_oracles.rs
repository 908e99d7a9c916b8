mod common;

use contracta::cocycles::CocycleSpec;
use contracta::duality::{chi_char, contraction_time, dual_action_t};
use contracta::extensions::{ext_commutator, ext_inv, ext_mul, ExtElem};
use contracta::heisenberg::{heis_inv, heis_mul, HeisElem};
use contracta::{LaurentElem, Modulus};
use proptest::prelude::*;

fn f(p: u64) -> Modulus {
    Modulus::prime_field(p).unwrap()
}

/// Upper unitriangular 3×3 matrices [[1, ξ, z], [0, 1, υ], [0, 0, 1]].
fn matrix_product(m: Modulus, a: &HeisElem, b: &HeisElem) -> HeisElem {
    let xi = common::add(m, &a.xi()[0], &b.xi()[0]);
    let up = common::add(m, &a.upsilon()[0], &b.upsilon()[0]);
    let z = common::add(m, &common::add(m, a.z(), b.z()), &common::mul(m, &a.xi()[0], &b.upsilon()[0]));
    HeisElem::new(vec![xi], vec![up], z).unwrap()
}

fn heis(p: u64) -> impl Strategy<Value = HeisElem> {
    (common::finite(p, -3..2, 4), common::finite(p, -3..2, 4), common::finite(p, -3..2, 4))
        .prop_map(|(a, b, c)| HeisElem::new(vec![a], vec![b], c).unwrap())
}

/// Least n ≥ 0 with χ_{t^n y}(t^j) = 1 for all j ∈ [k, k + 80).
fn brute_contraction(y: &LaurentElem, k: i64) -> u64 {
    let m = y.modulus();
    (0..200u64)
        .find(|&n| {
            let shifted = dual_action_t(n as i64, y);
            (k..k + 80).all(|j| common::pair(&shifted, &LaurentElem::monomial(m, 1, j)) == 0)
        })
        .unwrap()
}

proptest! {
    #[test]
    fn heisenberg_is_the_matrix_group(a in heis(2), b in heis(2), c in heis(3), d in heis(3)) {
        for (x, y, m) in [(&a, &b, f(2)), (&c, &d, f(3))] {
            let got = heis_mul(x, y).unwrap();
            prop_assert_eq!(&got, &matrix_product(m, x, y));
            let id = HeisElem::identity(m, 1);
            prop_assert_eq!(matrix_product(m, x, &heis_inv(x)), id);
        }
    }

    #[test]
    fn extension_law_matches_definition(s in common::support(), w in common::finite(2, -3..3, 4),
                                        x in common::finite(2, -3..3, 4), v in common::finite(2, -3..3, 4),
                                        y in common::finite(2, -3..3, 4)) {
        let spec = CocycleSpec::new(2, s.clone()).unwrap();
        let m = spec.field();
        let g = ExtElem::new(spec.clone(), w.clone(), x.clone()).unwrap();
        let h = ExtElem::new(spec.clone(), v.clone(), y.clone()).unwrap();
        let gh = ext_mul(&g, &h).unwrap();
        let eta = common::from_map(m, &common::eta(2, &s, &x, &y));
        prop_assert_eq!(gh.w(), &common::add(m, &common::add(m, &w, &v), &eta));
        prop_assert_eq!(gh.x(), &common::add(m, &x, &y));
        prop_assert!(ext_mul(&g, &ext_inv(&g)).unwrap().is_identity());
        // [g, h] = (η(x, y) − η(y, x), 0) since η is bi-additive
        let c = ext_commutator(&g, &h).unwrap();
        let skew = common::add(m, &eta, &common::from_map(m, &common::eta(2, &s, &y, &x)).neg());
        prop_assert_eq!(c.w(), &skew);
        prop_assert!(c.x().is_zero());
    }

    #[test]
    fn contraction_time_matches_brute_force(y in common::with_tail(3), k in -8i64..8) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(contraction_time(&y, k).unwrap(), brute_contraction(&y, k));
    }

    #[test]
    fn dual_action_defining_identity(y in common::with_tail(2), x in common::finite(2, -6..6, 6), k in -5i64..5) {
        let lhs = chi_char(&dual_action_t(k, &y), &x).unwrap();
        let rhs = chi_char(&y, &x.shift(k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
