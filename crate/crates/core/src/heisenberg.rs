//! The Heisenberg group ℍ_n(𝔽_p((t))) of triples (ξ, υ, z) with
//! (ξ, υ, z)·(ζ, μ, w) = (ξ + ζ, υ + μ, z + w + ξ·μ).
//!
//! N = {(0, υ, z)} is abelian and normal, with characters indexed by pairs
//! (υ, z). Conjugation by (ξ, 0, 0) moves the index (υ, z) to (υ + z·ξ, z),
//! so orbits with z = 0 are points and the others are affine slices.

use serde::{Deserialize, Serialize};

use crate::duality::chi_char;
use crate::error::{Error, Result};
use crate::laurent::{lau_div, lau_mul, LaurentElem};
use crate::scalars::{Modulus, TorusElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHeis", into = "RawHeis")]
pub struct HeisElem {
    field: Modulus,
    xi: Vec<LaurentElem>,
    upsilon: Vec<LaurentElem>,
    z: LaurentElem,
}

#[derive(Serialize, Deserialize)]
struct RawHeis {
    n: usize,
    p: u64,
    xi: Vec<LaurentElem>,
    upsilon: Vec<LaurentElem>,
    z: LaurentElem,
}

impl TryFrom<RawHeis> for HeisElem {
    type Error = Error;
    fn try_from(r: RawHeis) -> Result<Self> {
        if r.xi.len() != r.n || r.upsilon.len() != r.n {
            return Err(Error::MixedShape(format!(
                "n = {} but |xi| = {} and |upsilon| = {}",
                r.n,
                r.xi.len(),
                r.upsilon.len()
            )));
        }
        let h = HeisElem::new(r.xi, r.upsilon, r.z)?;
        if h.field.p() != r.p {
            return Err(Error::MixedPrime(h.field.p(), r.p));
        }
        Ok(h)
    }
}

impl From<HeisElem> for RawHeis {
    fn from(h: HeisElem) -> Self {
        RawHeis {
            n: h.xi.len(),
            p: h.field.p(),
            xi: h.xi,
            upsilon: h.upsilon,
            z: h.z,
        }
    }
}

fn check_coords<'a>(field: Modulus, coords: impl IntoIterator<Item = &'a LaurentElem>) -> Result<()> {
    for c in coords {
        if c.modulus() != field {
            return Err(Error::MixedModulus(c.modulus().to_string(), field.to_string()));
        }
        if !c.is_finite() {
            return Err(Error::UnsupportedOperands("Heisenberg coordinates must be finitely supported"));
        }
    }
    Ok(())
}

fn add(a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
    a.add(b).expect("same field")
}

fn dot(a: &[LaurentElem], b: &[LaurentElem], field: Modulus) -> Result<LaurentElem> {
    let mut acc = LaurentElem::zero(field);
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&lau_mul(x, y)?)?;
    }
    Ok(acc)
}

impl HeisElem {
    pub fn new(xi: Vec<LaurentElem>, upsilon: Vec<LaurentElem>, z: LaurentElem) -> Result<Self> {
        if xi.is_empty() || xi.len() != upsilon.len() {
            return Err(Error::MixedShape(format!(
                "|xi| = {} and |upsilon| = {} must agree and be positive",
                xi.len(),
                upsilon.len()
            )));
        }
        let field = z.modulus();
        if field.n() != 1 {
            return Err(Error::MixedModulus(field.to_string(), format!("{}^1", field.p())));
        }
        check_coords(field, xi.iter().chain(&upsilon).chain([&z]))?;
        Ok(HeisElem { field, xi, upsilon, z })
    }

    pub fn identity(field: Modulus, dim: usize) -> Self {
        let zero = LaurentElem::zero(field);
        HeisElem {
            field,
            xi: vec![zero.clone(); dim],
            upsilon: vec![zero.clone(); dim],
            z: zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[LaurentElem] {
        &self.xi
    }

    pub fn upsilon(&self) -> &[LaurentElem] {
        &self.upsilon
    }

    pub fn z(&self) -> &LaurentElem {
        &self.z
    }

    /// The N-part (υ, z), meaningful when ξ = 0.
    pub fn n_part(&self) -> NPoint {
        NPoint {
            upsilon: self.upsilon.clone(),
            z: self.z.clone(),
        }
    }
}

fn same_shape(g: &HeisElem, h: &HeisElem) -> Result<()> {
    if g.dim() != h.dim() || g.field != h.field {
        return Err(Error::MixedShape(format!(
            "ℍ_{} over {} against ℍ_{} over {}",
            g.dim(),
            g.field,
            h.dim(),
            h.field
        )));
    }
    Ok(())
}

pub fn heis_mul(g: &HeisElem, h: &HeisElem) -> Result<HeisElem> {
    same_shape(g, h)?;
    let correction = dot(&g.xi, &h.upsilon, g.field)?;
    Ok(HeisElem {
        field: g.field,
        xi: g.xi.iter().zip(&h.xi).map(|(a, b)| add(a, b)).collect(),
        upsilon: g.upsilon.iter().zip(&h.upsilon).map(|(a, b)| add(a, b)).collect(),
        z: add(&add(&g.z, &h.z), &correction),
    })
}

/// (ξ, υ, z)⁻¹ = (−ξ, −υ, −z + ξ·υ).
pub fn heis_inv(g: &HeisElem) -> HeisElem {
    let d = dot(&g.xi, &g.upsilon, g.field).expect("finite coordinates");
    HeisElem {
        field: g.field,
        xi: g.xi.iter().map(LaurentElem::neg).collect(),
        upsilon: g.upsilon.iter().map(LaurentElem::neg).collect(),
        z: add(&g.z.neg(), &d),
    }
}

/// A point (υ, z) of N, used both as a group element and as a character
/// index. Coordinates may carry tails when used as an index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NPoint {
    pub upsilon: Vec<LaurentElem>,
    pub z: LaurentElem,
}

impl NPoint {
    pub fn new(upsilon: Vec<LaurentElem>, z: LaurentElem) -> Result<Self> {
        if upsilon.is_empty() {
            return Err(Error::MixedShape("upsilon must be nonempty".into()));
        }
        if let Some(u) = upsilon.iter().find(|u| u.modulus() != z.modulus()) {
            return Err(Error::MixedModulus(u.modulus().to_string(), z.modulus().to_string()));
        }
        Ok(NPoint { upsilon, z })
    }

    pub fn dim(&self) -> usize {
        self.upsilon.len()
    }
}

/// χ_{(υ,z)}(μ, w) = χ_{υ₁}(μ₁)⋯χ_{υₙ}(μₙ)·χ_z(w).
pub fn heis_char(idx: &NPoint, arg: &NPoint) -> Result<TorusElem> {
    if idx.dim() != arg.dim() {
        return Err(Error::MixedShape(format!("index of dim {} against argument of dim {}", idx.dim(), arg.dim())));
    }
    let mut acc = chi_char(&idx.z, &arg.z)?;
    for (y, m) in idx.upsilon.iter().zip(&arg.upsilon) {
        acc = acc * chi_char(y, m)?;
    }
    Ok(acc)
}

/// (ξ, 0, 0) acting on the index (υ, z): (υ + z·ξ, z).
pub fn heis_dual_action(xi: &[LaurentElem], idx: &NPoint) -> Result<NPoint> {
    if xi.len() != idx.dim() {
        return Err(Error::MixedShape(format!("|xi| = {} for an index of dim {}", xi.len(), idx.dim())));
    }
    let upsilon = idx
        .upsilon
        .iter()
        .zip(xi)
        .map(|(u, x)| u.add(&lau_mul(&idx.z, x)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(NPoint {
        upsilon,
        z: idx.z.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    FixedPoint,
    AffineSlice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDesc {
    pub kind: OrbitKind,
    pub base: NPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Membership {
    /// The query is `heis_dual_action(xi, base)`.
    Member { xi: Vec<LaurentElem> },
    NonMember,
    /// The quotient (υ′ − υ)/z showed no period within the step bound.
    UndecidedAtBound,
}

pub fn orbit_description(idx: &NPoint) -> OrbitDesc {
    OrbitDesc {
        kind: if idx.z.is_zero() {
            OrbitKind::FixedPoint
        } else {
            OrbitKind::AffineSlice
        },
        base: idx.clone(),
    }
}

/// Default bound on long-division steps in [`orbit_membership`].
pub const DIVISION_STEPS: usize = 4096;

/// Decides whether `query` lies in the orbit of `orbit.base`. For an affine
/// slice this divides υ′ − υ by z and re-applies the action to confirm.
pub fn orbit_membership(orbit: &OrbitDesc, query: &NPoint, max_steps: usize) -> Result<Membership> {
    let base = &orbit.base;
    if query.dim() != base.dim() {
        return Err(Error::MixedShape(format!("query of dim {} for an orbit of dim {}", query.dim(), base.dim())));
    }
    if query.z != base.z {
        return Ok(Membership::NonMember);
    }
    match orbit.kind {
        OrbitKind::FixedPoint => Ok(if query == base {
            Membership::Member {
                xi: vec![LaurentElem::zero(base.z.modulus()); base.dim()],
            }
        } else {
            Membership::NonMember
        }),
        OrbitKind::AffineSlice => {
            let mut xi = Vec::with_capacity(base.dim());
            for (u2, u) in query.upsilon.iter().zip(&base.upsilon) {
                match lau_div(&u2.sub(u)?, &base.z, max_steps)? {
                    Some(q) => xi.push(q),
                    None => return Ok(Membership::UndecidedAtBound),
                }
            }
            if heis_dual_action(&xi, base)? != *query {
                return Err(Error::InvariantViolation("orbit quotient does not reproduce the query".into()));
            }
            Ok(Membership::Member { xi })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Modulus {
        Modulus::prime_field(2).unwrap()
    }

    fn mono(k: i64) -> LaurentElem {
        LaurentElem::monomial(f2(), 1, k)
    }

    fn zero() -> LaurentElem {
        LaurentElem::zero(f2())
    }

    fn h(xi: LaurentElem, up: LaurentElem, z: LaurentElem) -> HeisElem {
        HeisElem::new(vec![xi], vec![up], z).unwrap()
    }

    fn pt(up: LaurentElem, z: LaurentElem) -> NPoint {
        NPoint::new(vec![up], z).unwrap()
    }

    #[test]
    fn mul_examples() {
        let g = h(mono(0), mono(3), mono(-1));
        assert_eq!(heis_mul(&g, &HeisElem::identity(f2(), 1)).unwrap(), g);
        assert_eq!(
            heis_mul(&h(mono(0), zero(), zero()), &h(zero(), mono(1), zero())).unwrap(),
            h(mono(0), mono(1), mono(1))
        );
        let a = h(zero(), mono(0), mono(2));
        let b = h(zero(), mono(1), mono(2));
        assert_eq!(heis_mul(&a, &b).unwrap(), h(zero(), add(&mono(0), &mono(1)), zero()));
        assert!(matches!(heis_mul(&a, &HeisElem::identity(f2(), 2)), Err(Error::MixedShape(_))));
        assert!(heis_mul(&g, &heis_inv(&g)).unwrap() == HeisElem::identity(f2(), 1));
    }

    #[test]
    fn char_examples() {
        let half = TorusElem::from_fraction(1, 1, 2);
        assert!(heis_char(&pt(zero(), zero()), &pt(mono(2), mono(-3))).unwrap().is_identity());
        assert_eq!(heis_char(&pt(mono(-1), zero()), &pt(mono(1), zero())).unwrap(), half);
        for mu in [zero(), mono(1), mono(-1)] {
            assert_eq!(heis_char(&pt(zero(), mono(-1)), &pt(mu, mono(1))).unwrap(), half);
        }
    }

    #[test]
    fn dual_action_examples() {
        let idx = pt(mono(0), mono(0));
        assert_eq!(heis_dual_action(&[zero()], &idx).unwrap(), idx);
        assert_eq!(heis_dual_action(&[mono(1)], &idx).unwrap(), pt(add(&mono(0), &mono(1)), mono(0)));
        let fixed = pt(mono(2), zero());
        assert_eq!(heis_dual_action(&[mono(-4)], &fixed).unwrap(), fixed);
    }

    #[test]
    fn orbit_examples() {
        let fixed = orbit_description(&pt(mono(1), zero()));
        assert_eq!(fixed.kind, OrbitKind::FixedPoint);
        let slice = orbit_description(&pt(zero(), mono(0)));
        assert_eq!(slice.kind, OrbitKind::AffineSlice);
        assert_eq!(
            orbit_membership(&slice, &pt(mono(3), mono(0)), DIVISION_STEPS).unwrap(),
            Membership::Member { xi: vec![mono(3)] }
        );
        assert_eq!(
            orbit_membership(&slice, &pt(mono(3), mono(1)), DIVISION_STEPS).unwrap(),
            Membership::NonMember
        );
        assert_eq!(
            orbit_membership(&fixed, &pt(mono(2), zero()), DIVISION_STEPS).unwrap(),
            Membership::NonMember
        );
        // z = 1 + t: the quotient t/(1+t) = t − t² + … is an infinite series
        let z = add(&mono(0), &mono(1));
        let slice = orbit_description(&pt(zero(), z.clone()));
        match orbit_membership(&slice, &pt(mono(1), z), DIVISION_STEPS).unwrap() {
            Membership::Member { xi } => assert!(!xi[0].is_finite()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_form() {
        let v = serde_json::json!({"n": 1, "p": 2, "xi": ["1*t^0 @ p=2^1"], "upsilon": ["0 @ p=2^1"], "z": "1*t^1 @ p=2^1"});
        let g: HeisElem = serde_json::from_value(v).unwrap();
        assert_eq!(g, h(mono(0), zero(), mono(1)));
        let back: HeisElem = serde_json::from_value(serde_json::to_value(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let bad = serde_json::json!({"n": 2, "p": 2, "xi": ["0 @ p=2^1"], "upsilon": ["0 @ p=2^1"], "z": "0 @ p=2^1"});
        assert!(serde_json::from_value::<HeisElem>(bad).is_err());
    }
}
