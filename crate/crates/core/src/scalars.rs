//! Residues in ℤ/pⁿ and exact p-power roots of unity.
//!
//! Character values never touch floating point: a point of the circle group
//! is stored as the fraction `num / p^exp` of a full turn.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};

/// Largest residue ring order we accept. Keeps every product of two
/// residues inside `u64`.
pub const MAX_ORDER: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The pair `(p, n)` naming the cyclic group ℤ/pⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    p: u64,
    n: u32,
    order: u64,
}

impl Modulus {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidExponent(n));
        }
        let order = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::ModulusTooLarge { p, n })?;
        Ok(Modulus { p, n, order })
    }

    /// The prime field 𝔽_p.
    pub fn prime_field(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// pⁿ, the number of residues.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.order as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.order - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.order - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.order
    }

    /// Inverse of a unit residue, `None` when `a` is divisible by p.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // unit group has order φ(pⁿ) = pⁿ⁻¹(p-1)
        let phi = self.order / self.p * (self.p - 1);
        Some(self.pow(a, phi - 1))
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.order;
        a %= self.order;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn scalar(&self, v: i128) -> Scalar {
        Scalar {
            modulus: *self,
            value: self.reduce(v),
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}

/// A residue class in ℤ/pⁿ, stored by its representative in `[0, pⁿ)`.
///
/// Binary operators panic when the moduli differ; use the `checked_*`
/// variants when operands come from untrusted input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    modulus: Modulus,
    value: u64,
}

impl Scalar {
    pub fn new(modulus: Modulus, value: i128) -> Self {
        modulus.scalar(value)
    }

    pub fn zero(modulus: Modulus) -> Self {
        Scalar { modulus, value: 0 }
    }

    pub fn one(modulus: Modulus) -> Self {
        Scalar {
            modulus,
            value: 1 % modulus.order(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same(&self, other: &Scalar) -> Result<Modulus> {
        if self.modulus != other.modulus {
            return Err(Error::MixedModulus(
                self.modulus.to_string(),
                other.modulus.to_string(),
            ));
        }
        Ok(self.modulus)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let m = self.same(other)?;
        Ok(Scalar {
            modulus: m,
            value: m.add(self.value, other.value),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        let m = self.same(other)?;
        Ok(Scalar {
            modulus: m,
            value: m.sub(self.value, other.value),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        let m = self.same(other)?;
        Ok(Scalar {
            modulus: m,
            value: m.mul(self.value, other.value),
        })
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.checked_add(&rhs).expect("scalar moduli differ")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.checked_sub(&rhs).expect("scalar moduli differ")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.checked_mul(&rhs).expect("scalar moduli differ")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            modulus: self.modulus,
            value: self.modulus.neg(self.value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// The root of unity `exp(2πi·num/p^exp)`.
///
/// Normal form: either `(num, exp) = (0, 0)` (the identity) or
/// `0 < num < p^exp` with `p ∤ num`. Two elements are equal exactly when
/// their normal forms coincide, so `==` is equality on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub struct TorusElem {
    p: u64,
    num: u64,
    exp: u32,
}

fn pow128(p: u64, e: u32) -> u128 {
    (p as u128)
        .checked_pow(e)
        .filter(|&d| d <= u64::MAX as u128)
        .expect("root of unity order exceeds 64 bits")
}

impl TorusElem {
    pub fn identity(p: u64) -> Self {
        TorusElem { p, num: 0, exp: 0 }
    }

    /// Normalizes `num / p^exp` modulo 1.
    pub fn from_fraction(num: i128, exp: u32, p: u64) -> Self {
        let mut den = pow128(p, exp) as i128;
        let mut num = num.rem_euclid(den);
        let mut exp = exp;
        if num == 0 {
            return Self::identity(p);
        }
        while num % p as i128 == 0 {
            num /= p as i128;
            den /= p as i128;
            exp -= 1;
        }
        debug_assert!(num < den);
        TorusElem {
            p,
            num: num as u64,
            exp,
        }
    }

    /// `c / pⁿ` for a residue `c` of ℤ/pⁿ.
    pub fn from_scalar(s: Scalar) -> Self {
        Self::from_fraction(s.value() as i128, s.modulus().n(), s.modulus().p())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_identity(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative order, `p^exp`.
    pub fn order(&self) -> u64 {
        pow128(self.p, self.exp) as u64
    }

    pub fn checked_mul(&self, other: &TorusElem) -> Result<TorusElem> {
        if self.p != other.p {
            return Err(Error::MixedPrime(self.p, other.p));
        }
        let e = self.exp.max(other.exp);
        let a = self.num as i128 * pow128(self.p, e - self.exp) as i128;
        let b = other.num as i128 * pow128(self.p, e - other.exp) as i128;
        Ok(Self::from_fraction(a + b, e, self.p))
    }

    pub fn inv(&self) -> TorusElem {
        Self::from_fraction(-(self.num as i128), self.exp, self.p)
    }

    /// `self^k`.
    pub fn pow(&self, k: i64) -> TorusElem {
        let d = pow128(self.p, self.exp) as i128;
        let k = (k as i128).rem_euclid(d.max(1));
        Self::from_fraction(self.num as i128 * k, self.exp, self.p)
    }
}

impl Mul for TorusElem {
    type Output = TorusElem;
    fn mul(self, rhs: TorusElem) -> TorusElem {
        self.checked_mul(&rhs).expect("torus elements over different primes")
    }
}

/// `a · b` on p-power roots of unity.
pub fn torus_mul(a: &TorusElem, b: &TorusElem) -> Result<TorusElem> {
    a.checked_mul(b)
}

pub fn torus_from_fraction(num: i128, exp: u32, p: u64) -> TorusElem {
    TorusElem::from_fraction(num, exp, p)
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            write!(f, "{}/{}^{}", self.num, self.p, self.exp)
        }
    }
}

impl From<TorusElem> for String {
    fn from(t: TorusElem) -> String {
        t.to_string()
    }
}

impl TorusElem {
    /// Parses `num/p^e` or `1`, checking the prime against `p`.
    pub fn parse_over(s: &str, p: u64) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(TorusElem::identity(p));
        }
        let t: TorusElem = s.parse()?;
        if t.p != p {
            return Err(Error::MixedPrime(t.p, p));
        }
        Ok(t)
    }
}

impl FromStr for TorusElem {
    type Err = Error;

    /// Accepts `num/p^e`. The identity carries no prime in its text form,
    /// so `1` is only accepted by [`TorusElem::parse_over`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |position: usize, expected: &'static str| {
            Error::Parse(ParseError {
                position,
                expected: vec![expected],
            })
        };
        let (num, rest) = s.split_once('/').ok_or_else(|| bad(0, "`num/p^e`"))?;
        let (p, e) = rest
            .split_once('^')
            .ok_or_else(|| bad(num.len() + 1, "`p^e`"))?;
        let num: u64 = num.trim().parse().map_err(|_| bad(0, "integer numerator"))?;
        let p: u64 = p.trim().parse().map_err(|_| bad(num.to_string().len() + 1, "prime"))?;
        let e: u32 = e.trim().parse().map_err(|_| bad(s.len() - e.len(), "exponent"))?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let t = TorusElem::from_fraction(num as i128, e, p);
        if t.num != num || t.exp != e {
            return Err(Error::InvariantViolation(format!(
                "`{s}` is not in normal form (expected `{t}`)"
            )));
        }
        Ok(t)
    }
}
