//! Truncated p-adic numbers and the companion-matrix model of the blocks
//! E_{fⁿ} = ℚ_p[X]/(fⁿ).
//!
//! A [`PadicElem`] is known modulo `p^N` for its absolute precision `N`.
//! Sums and products emit the largest precision the inputs justify, so
//! recomputing at higher input precision only refines earlier digits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::laurent::Valuation;
use crate::scalars::{is_prime, TorusElem};

/// Precision used when polynomial coefficients are given as integers.
pub const DEFAULT_PRECISION: i64 = 48;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicElem {
    p: u64,
    /// Index of `digits[0]`. For an inexact zero this is the absolute
    /// precision and `digits` is empty.
    v0: i64,
    digits: Vec<u64>,
    exact_zero: bool,
}

impl PadicElem {
    fn check_p(p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(())
    }

    pub fn exact_zero(p: u64) -> Self {
        PadicElem {
            p,
            v0: 0,
            digits: Vec::new(),
            exact_zero: true,
        }
    }

    /// The integer `value` known modulo `p^abs_prec`.
    pub fn from_int(p: u64, value: i128, abs_prec: i64) -> Result<Self> {
        Self::check_p(p)?;
        let mut digits = Vec::new();
        let mut v = value;
        for _ in 0..abs_prec.max(0) {
            let d = v.rem_euclid(p as i128);
            digits.push(d as u64);
            v = (v - d) / p as i128;
        }
        Ok(Self::normalized(p, 0, digits, abs_prec))
    }

    /// `Σ digits[i]·p^{v0+i}` known modulo `p^{v0+prec}`.
    pub fn from_digits(p: u64, v0: i64, digits: &[u64], prec: usize) -> Result<Self> {
        Self::check_p(p)?;
        if digits.len() > prec {
            return Err(Error::InvariantViolation(format!(
                "{} digits exceed precision {prec}",
                digits.len()
            )));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvariantViolation(format!("digit {d} out of range for p = {p}")));
        }
        let mut ds = digits.to_vec();
        ds.resize(prec, 0);
        Ok(Self::normalized(p, v0, ds, v0 + prec as i64))
    }

    /// Strips leading zero digits and truncates at `abs_prec`.
    fn normalized(p: u64, mut v0: i64, mut digits: Vec<u64>, abs_prec: i64) -> Self {
        let keep = (abs_prec - v0).max(0) as usize;
        digits.truncate(keep);
        let lead = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
        digits.drain(..lead);
        v0 += lead as i64;
        if digits.is_empty() {
            v0 = abs_prec;
        }
        PadicElem {
            p,
            v0,
            digits,
            exact_zero: false,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// True when every known digit is zero (exact or not).
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// `N` such that the element is known modulo `p^N`; `None` when exact.
    pub fn abs_precision(&self) -> Option<i64> {
        if self.exact_zero {
            None
        } else {
            Some(self.v0 + self.digits.len() as i64)
        }
    }

    /// Number of significant digits.
    pub fn rel_precision(&self) -> usize {
        self.digits.len()
    }

    /// Digits from the valuation upwards, little-endian.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at absolute index `i`; `None` when beyond the precision.
    pub fn digit(&self, i: i64) -> Option<u64> {
        if self.exact_zero {
            return Some(0);
        }
        if i >= self.abs_precision().unwrap() {
            return None;
        }
        if i < self.v0 {
            return Some(0);
        }
        Some(self.digits[(i - self.v0) as usize])
    }

    /// Exact valuation, failing on an inexact zero.
    pub fn valuation(&self) -> Result<Valuation> {
        if self.exact_zero {
            return Ok(Valuation::Infinity);
        }
        if self.digits.is_empty() {
            return Err(Error::InsufficientPrecision(format!(
                "value is zero modulo {}^{}",
                self.p, self.v0
            )));
        }
        Ok(Valuation::Finite(self.v0))
    }

    /// A certified lower bound for the valuation.
    pub fn valuation_lower_bound(&self) -> Valuation {
        if self.exact_zero {
            Valuation::Infinity
        } else {
            Valuation::Finite(self.v0)
        }
    }

    fn check_same(&self, other: &PadicElem) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedPrime(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &PadicElem) -> Result<PadicElem> {
        self.check_same(other)?;
        if self.exact_zero {
            return Ok(other.clone());
        }
        if other.exact_zero {
            return Ok(self.clone());
        }
        let p = self.p;
        let n = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let base = self.v0.min(other.v0);
        if base >= n {
            return Ok(Self::normalized(p, n, Vec::new(), n));
        }
        let len = (n - base) as usize;
        let mut out = Vec::with_capacity(len);
        let mut carry = 0u64;
        for i in 0..len as i64 {
            let idx = base + i;
            let s = self.digit(idx).unwrap() + other.digit(idx).unwrap() + carry;
            out.push(s % p);
            carry = s / p;
        }
        Ok(Self::normalized(p, base, out, n))
    }

    pub fn neg(&self) -> PadicElem {
        if self.digits.is_empty() {
            return self.clone();
        }
        let p = self.p;
        let mut out = Vec::with_capacity(self.digits.len());
        out.push(p - self.digits[0]);
        out.extend(self.digits[1..].iter().map(|&d| p - 1 - d));
        PadicElem {
            p,
            v0: self.v0,
            digits: out,
            exact_zero: false,
        }
    }

    pub fn sub(&self, other: &PadicElem) -> Result<PadicElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicElem) -> Result<PadicElem> {
        self.check_same(other)?;
        let p = self.p;
        if self.exact_zero || other.exact_zero {
            return Ok(Self::exact_zero(p));
        }
        let v = self.v0 + other.v0;
        if self.digits.is_empty() || other.digits.is_empty() {
            // O(p^a)·(p^b·unit) = O(p^{a+b}); v0 already holds a resp. b
            return Ok(Self::normalized(p, v, Vec::new(), v));
        }
        let rel = self.digits.len().min(other.digits.len());
        let mut out = Vec::with_capacity(rel);
        let mut acc: u128 = 0;
        for k in 0..rel {
            for i in 0..=k {
                acc += self.digits[i] as u128 * other.digits[k - i] as u128;
            }
            out.push((acc % p as u128) as u64);
            acc /= p as u128;
        }
        Ok(Self::normalized(p, v, out, v + rel as i64))
    }

    /// The fractional part `{x} = Σ_{i=ν(x)}^{-1} a_i p^i` as `num / p^exp`
    /// with `exp = max(0, -ν(x))`.
    pub fn frac_part(&self) -> Result<(u128, u32)> {
        if self.exact_zero || self.v0 >= 0 {
            return Ok((0, 0));
        }
        let n = self.abs_precision().unwrap();
        if n < 0 {
            return Err(Error::InsufficientPrecision(format!(
                "digits below index 0 are only known up to index {n}"
            )));
        }
        let exp = (-self.v0) as u32;
        let mut num: u128 = 0;
        for i in (self.v0..0).rev() {
            num = num * self.p as u128 + self.digit(i).unwrap() as u128;
        }
        Ok((num, exp))
    }

    /// The integer part `[x]`: the digits at nonnegative indices.
    pub fn int_part(&self) -> PadicElem {
        if self.exact_zero || self.v0 >= 0 {
            return self.clone();
        }
        let n = self.abs_precision().unwrap();
        let digits: Vec<u64> = (0..n).map(|i| self.digit(i).unwrap()).collect();
        Self::normalized(self.p, 0, digits, n.max(0))
    }
}

/// `{x}` of a p-adic number.
pub fn frac_part(x: &PadicElem) -> Result<(u128, u32)> {
    x.frac_part()
}

/// ψ_y(x) = exp(2πi·{yx}).
pub fn psi_char(y: &PadicElem, x: &PadicElem) -> Result<TorusElem> {
    let prod = y.mul(x)?;
    let (num, exp) = prod.frac_part()?;
    Ok(TorusElem::from_fraction(num as i128, exp, y.p))
}

impl fmt::Display for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            return write!(f, "0@{}^0 exact", self.p);
        }
        if self.digits.is_empty() {
            return write!(f, "0@{}^{} prec 1", self.p, self.v0 - 1);
        }
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "@{}^{} prec {}", self.p, self.v0, self.digits.len())
    }
}

impl fmt::Debug for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicElem({self})")
    }
}

impl FromStr for PadicElem {
    type Err = Error;

    /// `d₀,d₁,…@p^v0 prec P` (little-endian digits from index v0), or
    /// `0@p^0 exact` for the exact zero.
    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, expected: &'static str| {
            Error::Parse(ParseError {
                position,
                expected: vec![expected],
            })
        };
        let (digits, rest) = s.split_once('@').ok_or_else(|| err(0, "`@`"))?;
        let at = digits.len() + 1;
        let digits: Vec<u64> = digits
            .split(',')
            .map(|d| d.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err(0, "comma-separated digits"))?;
        let rest = rest.trim();
        let (base, tail) = rest.split_once(char::is_whitespace).ok_or_else(|| err(at, "`p^v0 prec P`"))?;
        let (p, v0) = base.split_once('^').ok_or_else(|| err(at, "`p^v0`"))?;
        let p: u64 = p.parse().map_err(|_| err(at, "prime"))?;
        let v0: i64 = v0.parse().map_err(|_| err(at, "integer exponent"))?;
        let tail = tail.trim();
        if tail == "exact" {
            if digits.iter().any(|&d| d != 0) {
                return Err(Error::InvariantViolation("only zero can be exact".into()));
            }
            Self::check_p(p)?;
            return Ok(Self::exact_zero(p));
        }
        let prec = tail
            .strip_prefix("prec")
            .ok_or_else(|| err(at + base.len(), "`prec`"))?
            .trim()
            .parse::<usize>()
            .map_err(|_| err(at + base.len(), "precision"))?;
        if prec == 0 {
            return Err(err(at + base.len(), "precision ≥ 1"));
        }
        Self::from_digits(p, v0, &digits, prec)
    }
}

impl Serialize for PadicElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffInput {
    Int(i64),
    Literal(String),
}

/// A monic polynomial `X^m + a_{m-1}X^{m-1} + … + a₀` over ℚ_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyData {
    p: u64,
    coeffs: Vec<PadicElem>,
}

#[derive(Deserialize)]
struct PolyJson {
    p: u64,
    m: Option<usize>,
    coeffs: Vec<CoeffInput>,
}

impl PolyData {
    pub fn new(p: u64, coeffs: Vec<PadicElem>) -> Result<Self> {
        validate_poly(p, &coeffs)?;
        Ok(PolyData { p, coeffs })
    }

    /// Integer coefficients `a₀, …, a_{m-1}` at [`DEFAULT_PRECISION`].
    pub fn from_ints(p: u64, coeffs: &[i128]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    Ok(PadicElem::exact_zero(p))
                } else {
                    PadicElem::from_int(p, c, DEFAULT_PRECISION)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[PadicElem] {
        &self.coeffs
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        if let Some(m) = j.m {
            if m != j.coeffs.len() {
                return Err(Error::InvariantViolation(format!(
                    "m = {m} but {} coefficients given",
                    j.coeffs.len()
                )));
            }
        }
        Self::from_inputs(j.p, j.coeffs)
    }

    fn from_inputs(p: u64, coeffs: Vec<CoeffInput>) -> Result<Self> {
        PadicElem::check_p(p)?;
        let coeffs = coeffs
            .into_iter()
            .map(|c| match c {
                CoeffInput::Int(0) => Ok(PadicElem::exact_zero(p)),
                CoeffInput::Int(v) => PadicElem::from_int(p, v as i128, DEFAULT_PRECISION),
                CoeffInput::Literal(s) => s.parse(),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, coeffs)
    }

    pub fn from_int_list(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::from_ints(p, &coeffs.iter().map(|&c| c as i128).collect::<Vec<_>>())
    }
}

fn validate_poly(p: u64, coeffs: &[PadicElem]) -> Result<()> {
    PadicElem::check_p(p)?;
    if coeffs.is_empty() {
        return Err(Error::InvariantViolation("polynomial degree must be at least 1".into()));
    }
    if let Some(c) = coeffs.iter().find(|c| c.p != p) {
        return Err(Error::MixedPrime(c.p, p));
    }
    Ok(())
}

impl Serialize for PolyData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("PolyData", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("m", &self.coeffs.len())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// Square matrix over ℚ_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    m: usize,
    entries: Vec<PadicElem>,
}

impl PadicMatrix {
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &PadicElem {
        &self.entries[i * self.m + j]
    }

    pub fn transpose(&self) -> PadicMatrix {
        let m = self.m;
        let entries = (0..m * m)
            .map(|k| self.get(k % m, k / m).clone())
            .collect();
        PadicMatrix { m, entries }
    }

    pub fn mul_vec(&self, v: &[PadicElem]) -> Result<Vec<PadicElem>> {
        if v.len() != self.m {
            return Err(Error::MixedShape(format!(
                "vector of length {} against a {}×{} matrix",
                v.len(),
                self.m,
                self.m
            )));
        }
        (0..self.m)
            .map(|i| {
                let mut acc = PadicElem::exact_zero(self.get(i, 0).p);
                for (j, x) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }
}

/// The matrix of multiplication by X in the basis 1, X, …, X^{m-1}:
/// ones on the subdiagonal and `-a_i` down the last column.
pub fn companion_matrix(g: &PolyData) -> PadicMatrix {
    let m = g.degree();
    let p = g.p;
    let prec = g
        .coeffs
        .iter()
        .filter_map(PadicElem::abs_precision)
        .max()
        .unwrap_or(DEFAULT_PRECISION)
        .max(1);
    let one = PadicElem::from_int(p, 1, prec).expect("p checked at construction");
    let mut entries = vec![PadicElem::exact_zero(p); m * m];
    for i in 0..m {
        if i >= 1 {
            entries[i * m + (i - 1)] = one.clone();
        }
        entries[i * m + (m - 1)] = g.coeffs[i].neg();
    }
    PadicMatrix { m, entries }
}

/// Matrix of the dual action on Ê ≅ E: the transpose of the companion matrix.
pub fn dual_companion(g: &PolyData) -> PadicMatrix {
    companion_matrix(g).transpose()
}

/// Valuation of a root with its multiplicity, from one Newton polygon edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootValuation {
    /// Valuation as the reduced fraction `num / den`.
    pub num: i64,
    pub den: i64,
    pub multiplicity: usize,
}

fn gcd_i(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i(b, a % b)
    }
}

/// Root valuations read off the Newton polygon of `g` (including the
/// leading 1). Coefficients only known as inexact zeros contribute their
/// precision as a valuation lower bound, which can only lower the polygon;
/// an inexact constant term is rejected since the number of zero roots is
/// then unknown.
pub fn newton_polygon(g: &PolyData) -> Result<Vec<RootValuation>> {
    let m = g.degree();
    let a0 = &g.coeffs[0];
    if a0.is_indistinguishable_from_zero() && !a0.is_exact_zero() {
        return Err(Error::InsufficientPrecision(
            "constant term is zero to the available precision".into(),
        ));
    }
    let mut pts: Vec<(i64, i64)> = Vec::new();
    let mut zero_roots = 0usize;
    for (i, c) in g.coeffs.iter().enumerate() {
        match c.valuation_lower_bound() {
            Valuation::Finite(v) => pts.push((i as i64, v)),
            Valuation::Infinity => {
                if pts.is_empty() {
                    zero_roots = i + 1;
                }
            }
        }
    }
    pts.push((m as i64, 0));
    // lower convex hull
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop (x2,y2) if it lies on or above the segment to pt
            if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::new();
    if zero_roots > 0 {
        // roots at 0 have infinite valuation; report them with den 0
        out.push(RootValuation {
            num: 1,
            den: 0,
            multiplicity: zero_roots,
        });
    }
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        // slope (y2 - y1)/(x2 - x1); root valuation is its negative
        let num = y1 - y2;
        let den = x2 - x1;
        let g = gcd_i(num, den).max(1);
        out.push(RootValuation {
            num: num / g,
            den: den / g,
            multiplicity: (x2 - x1) as usize,
        });
    }
    Ok(out)
}

/// True iff every root of `g` is nonzero with positive valuation, i.e.
/// lies strictly inside the unit disc. Then the companion matrix and its
/// transpose are contractive.
pub fn contractivity_certificate(g: &PolyData) -> Result<bool> {
    let roots = newton_polygon(g)?;
    if roots.iter().any(|r| r.den == 0) {
        return Ok(false);
    }
    let all_positive = roots.iter().all(|r| r.num > 0);
    if all_positive {
        return Ok(true);
    }
    // A nonpositive slope may come from an inexact zero's lower bound.
    let uncertain = g.coeffs[1..]
        .iter()
        .any(|c| !c.is_exact_zero() && c.is_indistinguishable_from_zero() && c.abs_precision().unwrap() <= 0);
    if uncertain {
        return Err(Error::InsufficientPrecision(
            "a coefficient's valuation cannot be bounded below by 1".into(),
        ));
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(p: u64, v: i128) -> PadicElem {
        PadicElem::from_int(p, v, 20).unwrap()
    }

    fn lit(s: &str) -> PadicElem {
        s.parse().unwrap()
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(int(3, 17).frac_part().unwrap(), (0, 0));
        // p⁻² + 1 + p over p = 5
        let x = lit("1,0,1,1@5^-2 prec 6");
        assert_eq!(x.frac_part().unwrap(), (1, 2));
        let y = lit("2,1@3^-1 prec 4");
        assert_eq!(y.frac_part().unwrap(), (2, 1));
        assert_eq!(y.int_part(), lit("1,0,0@3^0 prec 3"));
        let too_coarse = lit("1@3^-4 prec 2");
        assert!(matches!(too_coarse.frac_part(), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn psi_examples() {
        let unit = int(3, 1);
        assert!(psi_char(&int(3, 5), &int(3, 7)).unwrap().is_identity());
        // ψ_1(p⁻¹) = 1/p
        let inv_p = lit("1@5^-1 prec 5");
        assert_eq!(
            psi_char(&PadicElem::from_int(5, 1, 10).unwrap(), &inv_p).unwrap(),
            TorusElem::from_fraction(1, 1, 5)
        );
        // ψ_{3⁻¹}(2) = 2/3
        let y = lit("1@3^-1 prec 8");
        assert_eq!(psi_char(&y, &int(3, 2)).unwrap(), TorusElem::from_fraction(2, 1, 3));
        assert_eq!(psi_char(&unit, &int(3, 0)).unwrap(), TorusElem::identity(3));
    }

    #[test]
    fn arithmetic_matches_integers() {
        for p in [2u64, 3, 5] {
            for a in -40i128..40 {
                for b in [-7i128, -1, 0, 3, 25, 81] {
                    let (x, y) = (int(p, a), int(p, b));
                    let n = 20;
                    assert_eq!(x.add(&y).unwrap(), PadicElem::from_int(p, a + b, n).unwrap());
                    assert_eq!(x.sub(&y).unwrap(), PadicElem::from_int(p, a - b, n).unwrap());
                    let prod = x.mul(&y).unwrap();
                    let expect = PadicElem::from_int(p, a * b, n).unwrap();
                    // the product is known to relative precision 20, hence
                    // at least to absolute precision 20
                    for i in 0..n {
                        assert_eq!(prod.digit(i), expect.digit(i), "p={p} a={a} b={b} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn precision_tracking() {
        let x = lit("1,2@3^0 prec 2"); // known mod 9
        let y = lit("1@3^1 prec 5"); // 3 mod 3^6
        assert_eq!(x.add(&y).unwrap().abs_precision(), Some(2));
        // x·y: valuation 1, relative precision 2
        assert_eq!(x.mul(&y).unwrap().abs_precision(), Some(3));
        let z = x.sub(&x).unwrap();
        assert!(z.is_indistinguishable_from_zero());
        assert!(!z.is_exact_zero());
        assert_eq!(z.abs_precision(), Some(2));
        assert!(z.valuation().is_err());
        let e = PadicElem::exact_zero(3);
        assert_eq!(e.mul(&x).unwrap(), e);
        assert_eq!(e.add(&x).unwrap(), x);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["1,0,2@3^-2 prec 3", "0@5^0 exact", "4,4,1@5^7 prec 3"] {
            assert_eq!(lit(s).to_string(), s);
        }
        let z = int(3, 0);
        assert_eq!(lit(&z.to_string()), z);
        assert!("1,3@3^0 prec 2".parse::<PadicElem>().is_err());
        assert!("1@4^0 prec 2".parse::<PadicElem>().is_err());
        assert!("1,2,3@5^0 prec 2".parse::<PadicElem>().is_err());
    }

    #[test]
    fn companion_examples() {
        for p in [2u64, 3, 5] {
            let pi = p as i128;
            // X - p
            let g = PolyData::from_ints(p, &[-pi]).unwrap();
            let c = companion_matrix(&g);
            assert_eq!(*c.get(0, 0), PadicElem::from_int(p, pi, DEFAULT_PRECISION).unwrap());
            assert_eq!(dual_companion(&g), c);
            // X² - p
            let g = PolyData::from_ints(p, &[-pi, 0]).unwrap();
            let c = companion_matrix(&g);
            assert!(c.get(0, 0).is_exact_zero());
            assert_eq!(c.get(0, 1).valuation().unwrap(), Valuation::Finite(1));
            assert_eq!(*c.get(1, 0), PadicElem::from_int(p, 1, DEFAULT_PRECISION).unwrap());
            assert!(c.get(1, 1).is_exact_zero());
            let d = dual_companion(&g);
            assert_eq!(d.get(1, 0), c.get(0, 1));
            assert_eq!(d.get(0, 1), c.get(1, 0));
            // X² + pX + p
            let g = PolyData::from_ints(p, &[pi, pi]).unwrap();
            let c = companion_matrix(&g);
            let minus_p = PadicElem::from_int(p, -pi, DEFAULT_PRECISION).unwrap();
            assert_eq!(*c.get(0, 1), minus_p);
            assert_eq!(*c.get(1, 1), minus_p);
            assert!(c.get(0, 0).is_exact_zero());
        }
    }

    #[test]
    fn certificate_examples() {
        let p = 3u64;
        assert!(contractivity_certificate(&PolyData::from_ints(p, &[-3]).unwrap()).unwrap());
        assert!(!contractivity_certificate(&PolyData::from_ints(p, &[-1]).unwrap()).unwrap());
        assert!(contractivity_certificate(&PolyData::from_ints(p, &[-3, 0]).unwrap()).unwrap());
        // X² has zero roots
        assert!(!contractivity_certificate(&PolyData::from_ints(p, &[0, 0]).unwrap()).unwrap());
        // X² + X + 3: one root of valuation 1, one unit root
        assert!(!contractivity_certificate(&PolyData::from_ints(p, &[3, 1]).unwrap()).unwrap());
        let roots = newton_polygon(&PolyData::from_ints(p, &[3, 1]).unwrap()).unwrap();
        assert_eq!(
            roots,
            vec![
                RootValuation { num: 1, den: 1, multiplicity: 1 },
                RootValuation { num: 0, den: 1, multiplicity: 1 },
            ]
        );
        let roots = newton_polygon(&PolyData::from_ints(2, &[-2, 0]).unwrap()).unwrap();
        assert_eq!(roots, vec![RootValuation { num: 1, den: 2, multiplicity: 2 }]);
        let vague = PolyData::new(3, vec![lit("0@3^-1 prec 1")]).unwrap();
        assert!(matches!(contractivity_certificate(&vague), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn certificate_agrees_with_coefficient_valuations() {
        // two routes: Newton polygon versus "every v(a_i) ≥ 1 and a₀ ≠ 0"
        for p in [2u64, 3, 5] {
            let pi = p as i128;
            let vals = [0i128, 1, -1, 2, pi, -pi, pi * pi, 2 * pi, pi + 1];
            for &a0 in &vals {
                for &a1 in &vals {
                    for &a2 in &vals[..4] {
                        let g = PolyData::from_ints(p, &[a0, a1, a2]).unwrap();
                        let direct = a0 != 0 && [a0, a1, a2].iter().all(|&a| a % pi == 0);
                        assert_eq!(contractivity_certificate(&g).unwrap(), direct, "{a0} {a1} {a2}");
                    }
                }
            }
        }
    }

    #[test]
    fn polydata_json() {
        let g = PolyData::from_json(&serde_json::json!({"p": 3, "m": 2, "coeffs": [-3, 0]})).unwrap();
        assert_eq!(g, PolyData::from_ints(3, &[-3, 0]).unwrap());
        let h = PolyData::from_json(&serde_json::json!({"p": 3, "coeffs": ["1@3^1 prec 4", 0]})).unwrap();
        assert_eq!(h.coeffs()[0].valuation().unwrap(), Valuation::Finite(1));
        assert!(PolyData::from_json(&serde_json::json!({"p": 3, "m": 3, "coeffs": [1]})).is_err());
        assert!(PolyData::from_json(&serde_json::json!({"p": 9, "coeffs": [1]})).is_err());
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["m"], 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Raising input precision refines output digits, never contradicts them.
            #[test]
            fn precision_soundness(a in -10_000i128..10_000, b in -10_000i128..10_000,
                                   lo in 2i64..8, extra in 1i64..10, shift in -3i64..3) {
                let p = 3u64;
                let scale = |v: i128, prec: i64| {
                    let x = PadicElem::from_int(p, v, prec).unwrap();
                    // multiply by p^shift to reach negative indices
                    let s = PadicElem::from_digits(p, shift, &[1], 30).unwrap();
                    x.mul(&s).unwrap()
                };
                let (xl, yl) = (scale(a, lo), scale(b, lo));
                let (xh, yh) = (scale(a, lo + extra), scale(b, lo + extra));
                for (low, high) in [(xl.add(&yl).unwrap(), xh.add(&yh).unwrap()),
                                    (xl.mul(&yl).unwrap(), xh.mul(&yh).unwrap())] {
                    let n = low.abs_precision().unwrap();
                    prop_assert!(high.abs_precision().unwrap() >= n);
                    for i in (shift * 2 - 2)..n {
                        prop_assert_eq!(low.digit(i), high.digit(i));
                    }
                }
            }

            /// ψ_y is a character in x and y ↦ ψ_y is additive.
            #[test]
            fn psi_is_bi_additive(digs in prop::collection::vec(0u64..5, 1..6),
                                  digs2 in prop::collection::vec(0u64..5, 1..6),
                                  ydigs in prop::collection::vec(0u64..5, 1..6),
                                  v in -4i64..2, vy in -4i64..2) {
                let p = 5u64;
                let x = PadicElem::from_digits(p, v, &digs, 16).unwrap();
                let x2 = PadicElem::from_digits(p, v + 1, &digs2, 16).unwrap();
                let y = PadicElem::from_digits(p, vy, &ydigs, 16).unwrap();
                let y2 = PadicElem::from_digits(p, vy - 1, &digs2, 16).unwrap();
                let lhs = psi_char(&y, &x.add(&x2).unwrap()).unwrap();
                let rhs = psi_char(&y, &x).unwrap() * psi_char(&y, &x2).unwrap();
                prop_assert_eq!(lhs, rhs);
                let lhs = psi_char(&y.add(&y2).unwrap(), &x).unwrap();
                let rhs = psi_char(&y, &x).unwrap() * psi_char(&y2, &x).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
