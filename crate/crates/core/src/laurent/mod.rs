//! Formal Laurent series over ℤ/pⁿ with exact finite presentations.
//!
//! An element is a finitely supported part plus an optional eventually
//! periodic tail: past index `start` the coefficients repeat `pattern`
//! forever. Every constructor returns the canonical presentation (primitive
//! period, smallest possible tail start, finite part strictly below the
//! tail), so structural equality is equality of series.

mod json;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Modulus, Scalar};

pub use text::parse_series;

/// ν(x): least index with a nonzero coefficient, `Infinity` for 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("+inf"),
        }
    }
}

/// Periodic tail: coefficient at `k >= start` is `pattern[(k - start) % P]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tail {
    start: i64,
    pattern: Vec<u64>,
}

impl Tail {
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn pattern(&self) -> &[u64] {
        &self.pattern
    }

    #[inline]
    fn at(&self, k: i64) -> u64 {
        let p = self.pattern.len() as i64;
        self.pattern[(k - self.start).rem_euclid(p) as usize]
    }
}

/// An element of C_{pⁿ}((t)).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    modulus: Modulus,
    /// Sorted by index, all values nonzero, all indices below the tail.
    finite: Vec<(i64, u64)>,
    tail: Option<Tail>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Sorts, merges duplicate indices and drops zeros.
fn merge_entries(modulus: Modulus, mut entries: Vec<(i64, u64)>) -> Vec<(i64, u64)> {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(i64, u64)> = Vec::with_capacity(entries.len());
    for (k, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = modulus.add(last.1, v),
            _ => out.push((k, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

impl LaurentElem {
    pub fn zero(modulus: Modulus) -> Self {
        LaurentElem {
            modulus,
            finite: Vec::new(),
            tail: None,
        }
    }

    /// `c·t^k`.
    pub fn monomial(modulus: Modulus, c: i128, k: i64) -> Self {
        Self::from_terms(modulus, [(k, c)])
    }

    /// Finite sum of `c·t^k`; repeated indices are added.
    pub fn from_terms(modulus: Modulus, terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let entries = terms
            .into_iter()
            .map(|(k, c)| (k, modulus.reduce(c)))
            .collect();
        LaurentElem {
            modulus,
            finite: merge_entries(modulus, entries),
            tail: None,
        }
    }

    /// Dense coefficients `coeffs[i]` at index `lo + i`.
    pub fn from_dense(modulus: Modulus, lo: i64, coeffs: &[u64]) -> Self {
        let finite = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % modulus.order() != 0)
            .map(|(i, &c)| (lo + i as i64, c % modulus.order()))
            .collect();
        LaurentElem {
            modulus,
            finite,
            tail: None,
        }
    }

    /// Finite terms plus a periodic tail repeating `pattern` from `start` on.
    /// The finite terms may overlap the tail region; they are added in.
    pub fn with_tail(
        modulus: Modulus,
        terms: impl IntoIterator<Item = (i64, i128)>,
        start: i64,
        pattern: &[i128],
    ) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::InvariantViolation("tail pattern must be non-empty".into()));
        }
        let entries = terms
            .into_iter()
            .map(|(k, c)| (k, modulus.reduce(c)))
            .collect();
        let pattern = pattern.iter().map(|&c| modulus.reduce(c)).collect();
        Ok(Self::normalize(modulus, entries, Some(Tail { start, pattern })))
    }

    /// z₀ = Σ_{j ≥ k₀} t^j.
    pub fn geometric_tail(modulus: Modulus, k0: i64) -> Self {
        Self::normalize(
            modulus,
            Vec::new(),
            Some(Tail {
                start: k0,
                pattern: vec![1],
            }),
        )
    }

    fn normalize(modulus: Modulus, entries: Vec<(i64, u64)>, tail: Option<Tail>) -> Self {
        let mut finite = merge_entries(modulus, entries);
        let tail = tail.and_then(|mut t| {
            for c in t.pattern.iter_mut() {
                *c %= modulus.order();
            }
            if t.pattern.iter().all(|&c| c == 0) {
                return None;
            }
            // primitive period
            let len = t.pattern.len();
            for d in 1..=len {
                if len % d == 0 && (d..len).all(|i| t.pattern[i] == t.pattern[i - d]) {
                    t.pattern.truncate(d);
                    break;
                }
            }
            // absorb finite terms at or above the tail start
            if let Some(&(kmax, _)) = finite.last() {
                if kmax >= t.start {
                    let new_start = kmax + 1;
                    let mut extra = Vec::new();
                    for k in t.start..new_start {
                        extra.push((k, t.at(k)));
                    }
                    let rot = (new_start - t.start).rem_euclid(t.pattern.len() as i64) as usize;
                    t.pattern.rotate_left(rot);
                    t.start = new_start;
                    finite.extend(extra);
                    finite = merge_entries(modulus, std::mem::take(&mut finite));
                }
            }
            // pull the start down while the coefficient just below agrees
            loop {
                let below = t.start - 1;
                let want = *t.pattern.last().unwrap();
                let have = match finite.last() {
                    Some(&(k, v)) if k == below => v,
                    _ => 0,
                };
                if have != want {
                    break;
                }
                if have != 0 {
                    finite.pop();
                }
                t.pattern.rotate_right(1);
                t.start = below;
            }
            Some(t)
        });
        LaurentElem {
            modulus,
            finite,
            tail,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.tail.is_none()
    }

    /// True when the element has finite support (no tail).
    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Nonzero terms of the finite part, ascending by index.
    pub fn finite_terms(&self) -> &[(i64, u64)] {
        &self.finite
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    /// Raw residue of the coefficient of `t^k`.
    #[inline]
    pub fn coeff_raw(&self, k: i64) -> u64 {
        if let Some(t) = &self.tail {
            if k >= t.start {
                return t.at(k);
            }
        }
        match self.finite.binary_search_by_key(&k, |e| e.0) {
            Ok(i) => self.finite[i].1,
            Err(_) => 0,
        }
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        Scalar::new(self.modulus, self.coeff_raw(k) as i128)
    }

    pub fn valuation(&self) -> Valuation {
        if let Some(&(k, _)) = self.finite.first() {
            return Valuation::Finite(k);
        }
        match &self.tail {
            Some(t) => {
                let off = t.pattern.iter().position(|&c| c != 0).unwrap();
                Valuation::Finite(t.start + off as i64)
            }
            None => Valuation::Infinity,
        }
    }

    /// Largest index carrying a nonzero coefficient; `None` for 0 and for
    /// tailed elements.
    pub fn max_index(&self) -> Option<i64> {
        if self.tail.is_some() {
            return None;
        }
        self.finite.last().map(|e| e.0)
    }

    fn check_same(&self, other: &LaurentElem) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::MixedModulus(
                self.modulus.to_string(),
                other.modulus.to_string(),
            ));
        }
        Ok(())
    }

    pub fn neg(&self) -> LaurentElem {
        let m = self.modulus;
        LaurentElem {
            modulus: m,
            finite: self.finite.iter().map(|&(k, v)| (k, m.neg(v))).collect(),
            tail: self.tail.as_ref().map(|t| Tail {
                start: t.start,
                pattern: t.pattern.iter().map(|&v| m.neg(v)).collect(),
            }),
        }
    }

    /// `c·x` for a residue `c`.
    pub fn scale(&self, c: i128) -> LaurentElem {
        let m = self.modulus;
        let c = m.reduce(c);
        let entries = self.finite.iter().map(|&(k, v)| (k, m.mul(c, v))).collect();
        let tail = self.tail.as_ref().map(|t| Tail {
            start: t.start,
            pattern: t.pattern.iter().map(|&v| m.mul(c, v)).collect(),
        });
        Self::normalize(m, entries, tail)
    }

    pub fn add(&self, other: &LaurentElem) -> Result<LaurentElem> {
        lau_add(self, other)
    }

    pub fn sub(&self, other: &LaurentElem) -> Result<LaurentElem> {
        lau_add(self, &other.neg())
    }

    pub fn mul(&self, other: &LaurentElem) -> Result<LaurentElem> {
        lau_mul(self, other)
    }

    pub fn shift(&self, k: i64) -> LaurentElem {
        lau_shift(self, k)
    }
}

/// Coefficientwise sum.
pub fn lau_add(x: &LaurentElem, y: &LaurentElem) -> Result<LaurentElem> {
    x.check_same(y)?;
    let m = x.modulus;
    if x.tail.is_none() && y.tail.is_none() {
        let (a, b) = (&x.finite, &y.finite);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let v = m.add(a[i].1, b[j].1);
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        return Ok(LaurentElem {
            modulus: m,
            finite: out,
            tail: None,
        });
    }
    // General case: unroll both tails up to a common start, then sum the
    // patterns over the lcm of the periods.
    let operands = [x, y];
    let mut start = i64::MIN;
    let mut period = 1usize;
    for e in operands {
        if let Some(t) = &e.tail {
            start = start.max(t.start);
            period = lcm(period, t.period());
        }
        if let Some(&(k, _)) = e.finite.last() {
            start = start.max(k + 1);
        }
    }
    let mut entries: Vec<(i64, u64)> = Vec::new();
    for e in operands {
        entries.extend_from_slice(&e.finite);
        if let Some(t) = &e.tail {
            for k in t.start..start {
                entries.push((k, t.at(k)));
            }
        }
    }
    let pattern = (0..period as i64)
        .map(|r| {
            operands.iter().fold(0u64, |acc, e| {
                let v = e.tail.as_ref().map_or(0, |t| t.at(start + r));
                m.add(acc, v)
            })
        })
        .collect();
    Ok(LaurentElem::normalize(m, entries, Some(Tail { start, pattern })))
}

/// Cauchy product. At most one operand may carry a tail.
pub fn lau_mul(x: &LaurentElem, y: &LaurentElem) -> Result<LaurentElem> {
    x.check_same(y)?;
    let m = x.modulus;
    if x.is_zero() || y.is_zero() {
        return Ok(LaurentElem::zero(m));
    }
    let (f, g) = match (x.tail.is_some(), y.tail.is_some()) {
        (true, true) => {
            return Err(Error::UnsupportedOperands(
                "product of two series with periodic tails",
            ))
        }
        (true, false) => (y, x),
        _ => (x, y),
    };
    if g.tail.is_none() {
        let mut entries = Vec::with_capacity(f.finite.len() * g.finite.len());
        for &(i, a) in &f.finite {
            for &(j, b) in &g.finite {
                entries.push((i + j, m.mul(a, b)));
            }
        }
        return Ok(LaurentElem {
            modulus: m,
            finite: merge_entries(m, entries),
            tail: None,
        });
    }
    let t = g.tail.as_ref().unwrap();
    let imin = f.finite.first().unwrap().0;
    let imax = f.finite.last().unwrap().0;
    let gv = g.valuation().finite().unwrap();
    let start = t.start + imax;
    let coeff_at = |k: i64| {
        f.finite
            .iter()
            .fold(0u64, |acc, &(i, a)| m.add(acc, m.mul(a, g.coeff_raw(k - i))))
    };
    let entries = (imin + gv..start).map(|k| (k, coeff_at(k))).collect();
    let pattern = (0..t.period() as i64).map(|r| coeff_at(start + r)).collect();
    Ok(LaurentElem::normalize(m, entries, Some(Tail { start, pattern })))
}

/// `t^k · x`.
pub fn lau_shift(x: &LaurentElem, k: i64) -> LaurentElem {
    LaurentElem {
        modulus: x.modulus,
        finite: x.finite.iter().map(|&(i, v)| (i + k, v)).collect(),
        tail: x.tail.as_ref().map(|t| Tail {
            start: t.start + k,
            pattern: t.pattern.clone(),
        }),
    }
}

pub fn lau_valuation(x: &LaurentElem) -> Valuation {
    x.valuation()
}

/// Exact quotient `d / z` over a prime field, by power-series long division.
///
/// Both operands must be finitely supported and `z ≠ 0`. Over 𝔽_p the
/// quotient of two Laurent polynomials is always eventually periodic; the
/// period is found by detecting a repeated remainder window. Returns
/// `Ok(None)` if no repetition shows up within `max_steps` quotient digits.
pub fn lau_div(d: &LaurentElem, z: &LaurentElem, max_steps: usize) -> Result<Option<LaurentElem>> {
    d.check_same(z)?;
    let m = d.modulus;
    if m.n() != 1 {
        return Err(Error::UnsupportedOperands("division needs a prime-field modulus"));
    }
    if !d.is_finite() || !z.is_finite() {
        return Err(Error::UnsupportedOperands("division of series with periodic tails"));
    }
    if z.is_zero() {
        return Err(Error::UnsupportedOperands("division by zero"));
    }
    if d.is_zero() {
        return Ok(Some(LaurentElem::zero(m)));
    }
    let zv = z.finite[0].0;
    let lead_inv = m.inv(z.finite[0].1).expect("nonzero element of a prime field");
    // u = z / t^zv as offsets 0..=deg
    let u: Vec<(usize, u64)> = z.finite.iter().map(|&(k, c)| ((k - zv) as usize, c)).collect();
    let deg = u.last().unwrap().0;
    let dmin = d.finite[0].0;
    let dmax = d.finite.last().unwrap().0;
    // dense remainder indexed from dmin, long enough to hold every update
    let mut rem: Vec<u64> = vec![0; (dmax - dmin) as usize + 1 + deg + max_steps + 1];
    for &(k, c) in &d.finite {
        rem[(k - dmin) as usize] = c;
    }
    // quotient digit at offset `pos` sits at index dmin + pos - zv
    let q_idx = |off: usize| dmin + off as i64 - zv;
    let mut digits: Vec<u64> = Vec::new();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let data_end = (dmax - dmin) as usize;
    for pos in 0..max_steps {
        if pos > data_end {
            let window = &rem[pos..pos + deg];
            if window.iter().all(|&c| c == 0) {
                let terms = digits.iter().enumerate().map(|(o, &c)| (q_idx(o), c as i128));
                return Ok(Some(LaurentElem::from_terms(m, terms)));
            }
            if let Some(&first) = seen.get(window) {
                let pattern: Vec<i128> = digits[first..].iter().map(|&c| c as i128).collect();
                let terms = digits[..first]
                    .iter()
                    .enumerate()
                    .map(|(o, &c)| (q_idx(o), c as i128));
                return LaurentElem::with_tail(m, terms, q_idx(first), &pattern).map(Some);
            }
            seen.insert(window.to_vec(), pos);
        }
        let q = m.mul(rem[pos], lead_inv);
        digits.push(q);
        if q != 0 {
            for &(off, uc) in &u {
                rem[pos + off] = m.sub(rem[pos + off], m.mul(q, uc));
            }
        }
    }
    Ok(None)
}

impl fmt::Debug for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentElem({self})")
    }
}
