use contracta::padic::{companion_matrix, contractivity_certificate, newton_polygon, psi_char, PadicElem, PolyData};
use contracta::TorusElem;
use proptest::prelude::*;

const PREC: i64 = 12;

fn modulus(p: u64) -> i128 {
    (p as i128).pow(PREC as u32)
}

/// Reads a p-adic integer back as a residue mod p^PREC.
fn residue(x: &PadicElem, p: u64) -> i128 {
    if x.is_indistinguishable_from_zero() {
        return 0;
    }
    let v0 = x.valuation().unwrap().finite().unwrap();
    let mut acc = 0i128;
    for i in (v0..PREC).rev() {
        acc = acc * p as i128 + x.digit(i).unwrap_or(0) as i128;
    }
    for _ in 0..v0 {
        acc *= p as i128;
    }
    acc.rem_euclid(modulus(p))
}

proptest! {
    #[test]
    fn ring_operations_agree_with_residues(p in prop::sample::select(vec![2u64, 3, 5]),
                                           a in -100_000i128..100_000, b in -100_000i128..100_000) {
        let n = modulus(p);
        let x = PadicElem::from_int(p, a, PREC).unwrap();
        let y = PadicElem::from_int(p, b, PREC).unwrap();
        prop_assert_eq!(residue(&x.add(&y).unwrap(), p), (a + b).rem_euclid(n));
        prop_assert_eq!(residue(&x.sub(&y).unwrap(), p), (a - b).rem_euclid(n));
        prop_assert_eq!(residue(&x.mul(&y).unwrap(), p), (a * b).rem_euclid(n));
    }

    /// ψ(p^{−k}·a · b) = exp(2πi·ab/p^k).
    #[test]
    fn psi_is_the_fractional_part(p in prop::sample::select(vec![2u64, 3, 5]), k in 1u32..5,
                                  a in 0u64..200, b in -500i128..500) {
        let digits: Vec<u64> = {
            let mut v = a;
            let mut d = Vec::new();
            while v > 0 { d.push(v % p); v /= p; }
            d
        };
        let prec = digits.len().max(1) + 20;
        let y = PadicElem::from_digits(p, -(k as i64), &digits, prec).unwrap();
        let x = PadicElem::from_int(p, b, 20).unwrap();
        let want = TorusElem::from_fraction(a as i128 * b, k, p);
        prop_assert_eq!(psi_char(&y, &x).unwrap(), want);
    }
}

/// C^m = p·I for the companion matrix of X^m − p.
#[test]
fn companion_of_x_m_minus_p() {
    for p in [2u64, 3, 5] {
        for m in 1..=4usize {
            let mut coeffs = vec![0i128; m];
            coeffs[0] = -(p as i128);
            let g = PolyData::from_ints(p, &coeffs).unwrap();
            let c = companion_matrix(&g);
            for i in 0..m {
                let mut v: Vec<PadicElem> = (0..m)
                    .map(|j| if i == j { PadicElem::from_int(p, 1, 30).unwrap() } else { PadicElem::exact_zero(p) })
                    .collect();
                for _ in 0..m {
                    v = c.mul_vec(&v).unwrap();
                }
                for (j, e) in v.iter().enumerate() {
                    let want = if i == j { p as i128 } else { 0 };
                    assert_eq!(residue(e, p), want, "p={p} m={m} i={i} j={j}");
                }
            }
            let roots = newton_polygon(&g).unwrap();
            assert_eq!(roots.len(), 1);
            assert_eq!((roots[0].num, roots[0].den, roots[0].multiplicity), (1, m as i64, m));
            assert!(contractivity_certificate(&g).unwrap());
        }
    }
}

#[test]
fn non_contractive_polynomials_are_rejected() {
    // X − 1 has a unit root, X² + X + p has one
    for coeffs in [vec![-1i128], vec![2, 1]] {
        let g = PolyData::from_ints(2, &coeffs).unwrap();
        assert!(!contractivity_certificate(&g).unwrap(), "{coeffs:?}");
    }
}
