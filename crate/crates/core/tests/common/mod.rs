//! Dense reference implementations used as oracles. They share nothing
//! with the library beyond reading coefficients out of its values.

#![allow(dead_code)]

use std::collections::BTreeMap;

use contracta::{LaurentElem, Modulus};
use proptest::prelude::*;

/// Coefficient of t^k, expanding the periodic tail by hand.
pub fn coeff(x: &LaurentElem, k: i64) -> u64 {
    if let Ok(i) = x.finite_terms().binary_search_by_key(&k, |&(j, _)| j) {
        let c = x.finite_terms()[i].1;
        return match x.tail() {
            Some(t) if k >= t.start() => (c + t.pattern()[((k - t.start()) as usize) % t.period()]) % x.modulus().order(),
            _ => c,
        };
    }
    match x.tail() {
        Some(t) if k >= t.start() => t.pattern()[((k - t.start()) as usize) % t.period()],
        _ => 0,
    }
}

/// Sparse map of the finite part, for finitely supported x.
pub fn terms(x: &LaurentElem) -> BTreeMap<i64, u64> {
    assert!(x.is_finite());
    x.finite_terms().iter().copied().collect()
}

pub fn from_map(m: Modulus, map: &BTreeMap<i64, u64>) -> LaurentElem {
    LaurentElem::from_terms(m, map.iter().map(|(&k, &c)| (k, c as i128)))
}

/// Σ_j x_j·y_{−j} mod pⁿ for finitely supported x.
pub fn pair(y: &LaurentElem, x: &LaurentElem) -> u64 {
    let q = x.modulus().order();
    terms(x).iter().fold(0, |acc, (&j, &c)| (acc + c * coeff(y, -j)) % q)
}

/// η_s(x, y) = Σ_{n∈S} Σ_i x_i·y_{i+2n}·t^{i+n} over 𝔽_p.
pub fn eta(p: u64, s: &[u32], x: &LaurentElem, y: &LaurentElem) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for &n in s {
        let n = n as i64;
        for (&i, &c) in &terms(x) {
            let d = coeff(y, i + 2 * n);
            let e = out.entry(i + n).or_insert(0);
            *e = (*e + c * d) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// ω(x, y) = χ_z(η_s(x, y)) as a numerator over p.
pub fn omega(p: u64, s: &[u32], z: &LaurentElem, x: &LaurentElem, y: &LaurentElem) -> u64 {
    eta(p, s, x, y).iter().fold(0, |acc, (&j, &c)| (acc + c * coeff(z, -j)) % p)
}

pub fn omega2(p: u64, s: &[u32], z: &LaurentElem, x: &LaurentElem, y: &LaurentElem) -> u64 {
    (omega(p, s, z, x, y) + p - omega(p, s, z, y, x)) % p
}

/// Product of finitely supported series by convolution.
pub fn mul(m: Modulus, x: &LaurentElem, y: &LaurentElem) -> LaurentElem {
    let q = m.order();
    let mut out: BTreeMap<i64, u64> = BTreeMap::new();
    for (&i, &a) in &terms(x) {
        for (&j, &b) in &terms(y) {
            let e = out.entry(i + j).or_insert(0);
            *e = (*e + a * b) % q;
        }
    }
    from_map(m, &out)
}

pub fn add(m: Modulus, x: &LaurentElem, y: &LaurentElem) -> LaurentElem {
    let q = m.order();
    let mut out = terms(x);
    for (&j, &b) in &terms(y) {
        let e = out.entry(j).or_insert(0);
        *e = (*e + b) % q;
    }
    from_map(m, &out)
}

/// A finitely supported element with support inside [lo, lo + len).
pub fn finite(p: u64, lo: std::ops::Range<i64>, len: usize) -> impl Strategy<Value = LaurentElem> {
    let m = Modulus::prime_field(p).unwrap();
    (lo, prop::collection::vec(0..p, 0..=len)).prop_map(move |(lo, c)| LaurentElem::from_dense(m, lo, &c))
}

/// Either finitely supported or carrying a periodic tail.
pub fn with_tail(p: u64) -> impl Strategy<Value = LaurentElem> {
    let m = Modulus::prime_field(p).unwrap();
    (finite(p, -6..4, 6), prop::option::of((-4i64..6, prop::collection::vec(0..p, 1..4)))).prop_map(move |(x, tail)| {
        match tail {
            None => x,
            Some((start, pat)) => {
                let pat: Vec<i128> = pat.iter().map(|&c| c as i128).collect();
                let terms: Vec<(i64, i128)> = x.finite_terms().iter().map(|&(k, c)| (k, c as i128)).collect();
                LaurentElem::with_tail(m, terms, start, &pat).unwrap()
            }
        }
    })
}

pub fn support() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(1u32..=4, 0..=3).prop_map(|s| s.into_iter().collect())
}
