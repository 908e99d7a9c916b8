//! The central extensions G = 𝔽_p((t)) ×_{η_s} 𝔽_p((t)) with group law
//! (w, x)·(y, z) = (w + y + η_s(x, z), x + z).
//!
//! Coordinates are finitely supported. This is a dense subgroup, and every
//! identity below is stated on it.

use serde::{Deserialize, Serialize};

use crate::cocycles::{eta, CocycleSpec};
use crate::error::{Error, Result};
use crate::laurent::{lau_shift, LaurentElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExt")]
pub struct ExtElem {
    #[serde(rename = "cocycle")]
    s: CocycleSpec,
    w: LaurentElem,
    x: LaurentElem,
}

#[derive(Deserialize)]
struct RawExt {
    cocycle: CocycleSpec,
    w: LaurentElem,
    x: LaurentElem,
}

impl TryFrom<RawExt> for ExtElem {
    type Error = Error;
    fn try_from(r: RawExt) -> Result<Self> {
        ExtElem::new(r.cocycle, r.w, r.x)
    }
}

impl ExtElem {
    pub fn new(s: CocycleSpec, w: LaurentElem, x: LaurentElem) -> Result<Self> {
        for c in [&w, &x] {
            if c.modulus() != s.field() {
                return Err(Error::MixedModulus(c.modulus().to_string(), s.field().to_string()));
            }
            if !c.is_finite() {
                return Err(Error::UnsupportedOperands(
                    "extension coordinates must be finitely supported",
                ));
            }
        }
        Ok(ExtElem { s, w, x })
    }

    pub fn identity(s: CocycleSpec) -> Self {
        let f = s.field();
        ExtElem {
            s,
            w: LaurentElem::zero(f),
            x: LaurentElem::zero(f),
        }
    }

    pub fn cocycle(&self) -> &CocycleSpec {
        &self.s
    }

    /// Central coordinate.
    pub fn w(&self) -> &LaurentElem {
        &self.w
    }

    /// Quotient coordinate q(w, x) = x.
    pub fn x(&self) -> &LaurentElem {
        &self.x
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_zero() && self.x.is_zero()
    }
}

fn same_cocycle(g: &ExtElem, h: &ExtElem) -> Result<()> {
    if g.s != h.s {
        return Err(Error::MixedCocycle);
    }
    Ok(())
}

fn add(a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
    a.add(b).expect("finite operands over one field")
}

pub fn ext_mul(g: &ExtElem, h: &ExtElem) -> Result<ExtElem> {
    same_cocycle(g, h)?;
    let e = eta(&g.s, &g.x, &h.x)?;
    Ok(ExtElem {
        s: g.s.clone(),
        w: add(&add(&g.w, &h.w), &e),
        x: add(&g.x, &h.x),
    })
}

/// (w, x)⁻¹ = (−w − η_s(x, −x), −x).
pub fn ext_inv(g: &ExtElem) -> ExtElem {
    let neg_x = g.x.neg();
    let e = eta(&g.s, &g.x, &neg_x).expect("validated operands");
    ExtElem {
        s: g.s.clone(),
        w: add(&g.w, &e).neg(),
        x: neg_x,
    }
}

/// g·h·g⁻¹·h⁻¹.
pub fn ext_commutator(g: &ExtElem, h: &ExtElem) -> Result<ExtElem> {
    let gh = ext_mul(g, h)?;
    let ghg = ext_mul(&gh, &ext_inv(g))?;
    ext_mul(&ghg, &ext_inv(h))
}

/// The automorphism (w, x) ↦ (t^k·w, t^k·x).
pub fn ext_alpha(g: &ExtElem, k: i64) -> ExtElem {
    ExtElem {
        s: g.s.clone(),
        w: lau_shift(&g.w, k),
        x: lau_shift(&g.x, k),
    }
}

/// A pair (g, h) with [g, h] = (t^j, 0): with k₀ = min S,
/// g = (0, t^{j−k₀}) and h = (0, t^{j+k₀}). Any k₀ ∈ S would do.
pub fn derived_witness(j: i64, s: &CocycleSpec) -> Result<(ExtElem, ExtElem)> {
    let k0 = *s.support().first().ok_or(Error::EmptySupport)? as i64;
    let f = s.field();
    let zero = LaurentElem::zero(f);
    let g = ExtElem::new(s.clone(), zero.clone(), LaurentElem::monomial(f, 1, j - k0))?;
    let h = ExtElem::new(s.clone(), zero, LaurentElem::monomial(f, 1, j + k0))?;
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Modulus;

    fn spec(p: u64, support: &[u32]) -> CocycleSpec {
        CocycleSpec::new(p, support.to_vec()).unwrap()
    }

    fn mono(p: u64, k: i64) -> LaurentElem {
        LaurentElem::monomial(Modulus::prime_field(p).unwrap(), 1, k)
    }

    fn el(s: &CocycleSpec, w: LaurentElem, x: LaurentElem) -> ExtElem {
        ExtElem::new(s.clone(), w, x).unwrap()
    }

    #[test]
    fn mul_examples() {
        let s = spec(2, &[1]);
        let f = s.field();
        let zero = LaurentElem::zero(f);
        let g = el(&s, mono(2, 3), mono(2, -1));
        assert_eq!(ext_mul(&g, &ExtElem::identity(s.clone())).unwrap(), g);
        let prod = ext_mul(&el(&s, zero.clone(), mono(2, 0)), &el(&s, zero.clone(), mono(2, 2))).unwrap();
        assert_eq!(prod, el(&s, mono(2, 1), LaurentElem::from_terms(f, [(0, 1), (2, 1)])));
        let a = el(&s, mono(2, 0), zero.clone());
        let b = el(&s, mono(2, 5), zero.clone());
        assert_eq!(ext_mul(&a, &b).unwrap(), el(&s, add(&mono(2, 0), &mono(2, 5)), zero));
        let other = ExtElem::identity(spec(2, &[2]));
        assert!(matches!(ext_mul(&a, &other), Err(Error::MixedCocycle)));
    }

    #[test]
    fn inverse_examples() {
        let s = spec(2, &[1]);
        let zero = LaurentElem::zero(s.field());
        assert!(ext_inv(&ExtElem::identity(s.clone())).is_identity());
        let g = el(&s, zero.clone(), mono(2, 0));
        assert_eq!(ext_inv(&g), g);
        let s3 = spec(3, &[1]);
        let w = LaurentElem::from_terms(s3.field(), [(1, 1), (2, 2)]);
        let c = el(&s3, w.clone(), LaurentElem::zero(s3.field()));
        assert_eq!(ext_inv(&c).w(), &w.neg());
    }

    #[test]
    fn commutator_examples() {
        let s = spec(2, &[1]);
        let zero = LaurentElem::zero(s.field());
        let g = el(&s, zero.clone(), mono(2, 0));
        let h = el(&s, zero.clone(), mono(2, 2));
        assert_eq!(ext_commutator(&g, &h).unwrap(), el(&s, mono(2, 1), zero.clone()));
        assert!(ext_commutator(&g, &g).unwrap().is_identity());
    }

    #[test]
    fn alpha_examples() {
        let s = spec(2, &[1]);
        assert!(ext_alpha(&ExtElem::identity(s.clone()), 4).is_identity());
        assert_eq!(
            ext_alpha(&el(&s, mono(2, 1), mono(2, 0)), 1),
            el(&s, mono(2, 2), mono(2, 1))
        );
    }

    #[test]
    fn derived_witness_examples() {
        let s1 = spec(2, &[1]);
        let (g, h) = derived_witness(0, &s1).unwrap();
        assert_eq!((g.x(), h.x()), (&mono(2, -1), &mono(2, 1)));
        assert_eq!(ext_commutator(&g, &h).unwrap().w(), &mono(2, 0));
        let s2 = spec(2, &[2]);
        let (g, h) = derived_witness(5, &s2).unwrap();
        assert_eq!((g.x(), h.x()), (&mono(2, 3), &mono(2, 7)));
        let (g, h) = derived_witness(-2, &s1).unwrap();
        assert_eq!((g.x(), h.x()), (&mono(2, -3), &mono(2, -1)));
        assert!(matches!(derived_witness(0, &spec(2, &[])), Err(Error::EmptySupport)));
    }

    #[test]
    fn json_form() {
        let v = serde_json::json!({
            "cocycle": {"p": 2, "support": [1]},
            "w": "1*t^1 @ p=2^1",
            "x": {"p": 2, "n": 1, "finite": {"0": 1}}
        });
        let g: ExtElem = serde_json::from_value(v).unwrap();
        assert_eq!(g.w(), &mono(2, 1));
        let back: ExtElem = serde_json::from_value(serde_json::to_value(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let bad = serde_json::json!({"cocycle": {"p": 3, "support": [1]}, "w": "0 @ p=2^1", "x": "0 @ p=2^1"});
        assert!(serde_json::from_value::<ExtElem>(bad).is_err());
    }
}
