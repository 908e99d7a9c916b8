//! Characters of C_{pⁿ}((t)) and the dual ℤ-actions.
//!
//! Every character of C_{pⁿ}((t)) has the form
//! χ_y(x) = exp(2πi · Σ_j x_j·y_{−j} / pⁿ) for a unique y, so characters are
//! indexed by Laurent series themselves.
//!
//! Orientation of the dual shift: literature on these groups names the dual
//! of multiplication by t both a left and a right shift. Here it is fixed by
//! the identity χ_{y'}(x) = χ_y(t^k·x), which forces y' = t^k·y.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::laurent::{lau_shift, LaurentElem, Valuation};
use crate::linalg::rank_mod_p;
use crate::padic::{dual_companion, PadicElem, PolyData};
use crate::scalars::{Modulus, TorusElem};

/// The dual parameter y of the character χ_y.
pub type CharIndex = LaurentElem;

fn check_moduli(a: &LaurentElem, b: &LaurentElem) -> Result<()> {
    if a.modulus() != b.modulus() {
        return Err(Error::MixedModulus(
            a.modulus().to_string(),
            b.modulus().to_string(),
        ));
    }
    Ok(())
}

/// Numerator of χ_y(x) over pⁿ, i.e. Σ_j x_j·y_{−j} mod pⁿ.
///
/// Only indices in [ν(x), −ν(y)] contribute. Tails run towards +∞ on both
/// operands, so this range is always finite.
pub fn pairing(y: &CharIndex, x: &LaurentElem) -> Result<u64> {
    check_moduli(y, x)?;
    let m = x.modulus();
    let (Valuation::Finite(vx), Valuation::Finite(vy)) = (x.valuation(), y.valuation()) else {
        return Ok(0);
    };
    let hi = -vy;
    if vx > hi {
        return Ok(0);
    }
    let mut acc = 0u64;
    if x.is_finite() {
        for &(j, c) in x.finite_terms() {
            if j > hi {
                break;
            }
            acc = m.add(acc, m.mul(c, y.coeff_raw(-j)));
        }
    } else if y.is_finite() {
        for &(k, c) in y.finite_terms() {
            if -k < vx {
                break;
            }
            acc = m.add(acc, m.mul(c, x.coeff_raw(-k)));
        }
    } else {
        for j in vx..=hi {
            acc = m.add(acc, m.mul(x.coeff_raw(j), y.coeff_raw(-j)));
        }
    }
    Ok(acc)
}

/// χ_y(x) as an exact root of unity.
pub fn chi_char(y: &CharIndex, x: &LaurentElem) -> Result<TorusElem> {
    let m = x.modulus();
    let num = pairing(y, x)?;
    Ok(TorusElem::from_fraction(num as i128, m.n(), m.p()))
}

/// The character y' with χ_{y'}(x) = χ_y(t^k·x) for all x; this is t^k·y.
pub fn dual_action_t(k: i64, y: &CharIndex) -> CharIndex {
    lau_shift(y, k)
}

/// k-fold application of the transposed companion matrix.
pub fn dual_action_e(k: i64, y: &[PadicElem], g: &PolyData) -> Result<Vec<PadicElem>> {
    if k < 0 {
        return Err(Error::NegativePowerUnsupported);
    }
    if y.len() != g.degree() {
        return Err(Error::MixedShape(format!(
            "vector of length {} for a degree {} block",
            y.len(),
            g.degree()
        )));
    }
    let mat = dual_companion(g);
    let mut v = y.to_vec();
    for _ in 0..k {
        v = mat.mul_vec(&v)?;
    }
    Ok(v)
}

/// Least n ≥ 0 such that χ_{t^n·y} is trivial on {x : ν(x) ≥ k}.
///
/// χ_{t^n y}(t^j) = y_{−j−n}, which vanishes for every j ≥ k exactly when
/// ν(y) + n > −k.
pub fn contraction_time(y: &CharIndex, k: i64) -> Result<u64> {
    match y.valuation() {
        Valuation::Infinity => Err(Error::ZeroCharacter),
        Valuation::Finite(v) => Ok((-k - v + 1).max(0) as u64),
    }
}

/// True iff t^n·y ≠ y for all 1 ≤ |n| ≤ depth.
pub fn stabilizer_is_trivial(y: &CharIndex, depth: u32) -> Result<bool> {
    if y.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let d = depth as i64;
    Ok((1..=d).all(|n| dual_action_t(n, y) != *y && dual_action_t(-n, y) != *y))
}

/// Rank over 𝔽_p of the pairing numerators [χ_{t^i}(t^j)] for i ∈ [−l, l)
/// and j ∈ (−l, l]. The column range is the mirror of the row range since
/// t^i pairs with t^{−i}; full rank means y ↦ χ_y is injective on W(−l, l).
pub fn pairing_matrix_rank(modulus: Modulus, l: i64) -> Result<usize> {
    let p = modulus.p();
    let rows = (-l..l)
        .map(|i| {
            let y = LaurentElem::monomial(modulus, 1, i);
            (-l + 1..=l)
                .map(|j| pairing(&y, &LaurentElem::monomial(modulus, 1, j)).map(|c| c % p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_mod_p(&rows, p))
}

/// One summand of the block decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    /// C_{pⁿ}((t)) with the shift.
    T { modulus: Modulus, mult: u32 },
    /// ℚ_p[X]/(g) with multiplication by X.
    E { poly: PolyData, mult: u32 },
}

impl Block {
    pub fn mult(&self) -> u32 {
        match self {
            Block::T { mult, .. } | Block::E { mult, .. } => *mult,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub blocks: Vec<Block>,
}

#[derive(Deserialize)]
struct BlockJson {
    kind: String,
    p: u64,
    n: Option<u32>,
    poly: Option<Vec<Value>>,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

impl BlockSpec {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.iter().any(|b| b.mult() == 0) {
            return Err(Error::InvariantViolation("block multiplicity must be at least 1".into()));
        }
        Ok(BlockSpec { blocks })
    }

    /// `{blocks:[{kind:"T",p,n,mult} | {kind:"E",p,poly:[a₀,…],mult}]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let raw = value
            .get("blocks")
            .ok_or_else(|| Error::Schema("BlockSpec needs a `blocks` array".into()))?;
        let raw: Vec<BlockJson> =
            serde_json::from_value(raw.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        let blocks = raw
            .into_iter()
            .map(|b| match b.kind.as_str() {
                "T" => Ok(Block::T {
                    modulus: Modulus::new(b.p, b.n.unwrap_or(1))?,
                    mult: b.mult,
                }),
                "E" => {
                    let coeffs = b
                        .poly
                        .ok_or_else(|| Error::Schema("E block needs `poly`".into()))?;
                    let poly =
                        PolyData::from_json(&serde_json::json!({ "p": b.p, "coeffs": coeffs }))?;
                    Ok(Block::E { poly, mult: b.mult })
                }
                other => Err(Error::Schema(format!("unknown block kind `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }
}

impl Serialize for BlockSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::T { modulus, mult } => serde_json::json!({
                    "kind": "T", "p": modulus.p(), "n": modulus.n(), "mult": mult
                }),
                Block::E { poly, mult } => serde_json::json!({
                    "kind": "E", "p": poly.p(), "poly": poly.coeffs(), "mult": mult
                }),
            })
            .collect();
        serde_json::json!({ "blocks": blocks }).serialize(serializer)
    }
}

/// Coordinates of one block: one entry per copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "values")]
pub enum BlockCoord {
    T(Vec<LaurentElem>),
    E(Vec<Vec<PadicElem>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockElem {
    pub components: Vec<BlockCoord>,
}

impl BlockElem {
    /// Validates the shape against `spec`.
    pub fn new(spec: &BlockSpec, components: Vec<BlockCoord>) -> Result<Self> {
        if components.len() != spec.blocks.len() {
            return Err(Error::MixedShape(format!(
                "{} components for {} blocks",
                components.len(),
                spec.blocks.len()
            )));
        }
        for (i, (b, c)) in spec.blocks.iter().zip(&components).enumerate() {
            let ok = match (b, c) {
                (Block::T { modulus, mult }, BlockCoord::T(v)) => {
                    v.len() == *mult as usize && v.iter().all(|x| x.modulus() == *modulus)
                }
                (Block::E { poly, mult }, BlockCoord::E(v)) => {
                    v.len() == *mult as usize
                        && v.iter().all(|w| {
                            w.len() == poly.degree() && w.iter().all(|c| c.p() == poly.p())
                        })
                }
                _ => false,
            };
            if !ok {
                return Err(Error::MixedShape(format!("component {i} does not match its block")));
            }
        }
        Ok(BlockElem { components })
    }

    /// `{components:[{kind:"T",values:[…]} | {kind:"E",values:[[…],…]}]}`.
    pub fn from_json(spec: &BlockSpec, value: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            values: Value,
        }
        let raw = value
            .get("components")
            .ok_or_else(|| Error::Schema("BlockElem needs a `components` array".into()))?;
        let raw: Vec<Raw> =
            serde_json::from_value(raw.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        let schema = |e: serde_json::Error| Error::Schema(e.to_string());
        let components = raw
            .into_iter()
            .map(|r| match r.kind.as_str() {
                "T" => Ok(BlockCoord::T(serde_json::from_value(r.values).map_err(schema)?)),
                "E" => {
                    let lits: Vec<Vec<String>> = serde_json::from_value(r.values).map_err(schema)?;
                    let v = lits
                        .iter()
                        .map(|w| w.iter().map(|s| s.parse()).collect::<Result<Vec<PadicElem>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Ok(BlockCoord::E(v))
                }
                other => Err(Error::Schema(format!("unknown block kind `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, components)
    }

    fn is_zero(&self) -> bool {
        self.components.iter().all(|c| match c {
            BlockCoord::T(v) => v.iter().all(LaurentElem::is_zero),
            BlockCoord::E(v) => v.iter().flatten().all(PadicElem::is_indistinguishable_from_zero),
        })
    }

    /// Some coordinate is certainly nonzero.
    fn certainly_nonzero(&self) -> bool {
        !self.is_zero()
    }
}

/// Least n in 1..=depth such that the n-th dual iterate of x lies in
/// U_k = {ν > k} in every coordinate while staying nonzero.
///
/// Only forward iterates are searched: the dual actions contract, so the
/// backward orbit leaves every U_k.
pub fn nonclosed_orbit_witness(spec: &BlockSpec, x: &BlockElem, k: i64, depth: u32) -> Result<i64> {
    let x = BlockElem::new(spec, x.components.clone())?;
    if x.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let mats: Vec<_> = spec
        .blocks
        .iter()
        .map(|b| match b {
            Block::E { poly, .. } => Some(dual_companion(poly)),
            Block::T { .. } => None,
        })
        .collect();
    let mut cur = x.clone();
    for n in 1..=depth as i64 {
        let mut comps = Vec::with_capacity(cur.components.len());
        for (c, mat) in cur.components.iter().zip(&mats) {
            comps.push(match c {
                BlockCoord::T(v) => BlockCoord::T(v.iter().map(|y| dual_action_t(1, y)).collect()),
                BlockCoord::E(v) => BlockCoord::E(
                    v.iter()
                        .map(|w| mat.as_ref().expect("E block").mul_vec(w))
                        .collect::<Result<Vec<_>>>()?,
                ),
            });
        }
        cur = BlockElem { components: comps };
        let inside = cur.components.iter().all(|c| match c {
            BlockCoord::T(v) => v.iter().all(|y| y.valuation() > Valuation::Finite(k)),
            BlockCoord::E(v) => v
                .iter()
                .flatten()
                .all(|a| a.valuation_lower_bound() > Valuation::Finite(k)),
        });
        if inside {
            if !cur.certainly_nonzero() {
                return Err(Error::InsufficientPrecision(format!(
                    "iterate {n} is zero to the available precision"
                )));
            }
            return Ok(n);
        }
    }
    Err(Error::DepthExceeded(depth))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Modulus {
        Modulus::prime_field(p).unwrap()
    }

    fn mono(m: Modulus, c: i128, k: i64) -> LaurentElem {
        LaurentElem::monomial(m, c, k)
    }

    #[test]
    fn chi_examples() {
        let m = f(3);
        assert!(chi_char(&LaurentElem::zero(m), &mono(m, 2, 1)).unwrap().is_identity());
        assert_eq!(
            chi_char(&mono(m, 1, -1), &mono(m, 2, 1)).unwrap(),
            TorusElem::from_fraction(2, 1, 3)
        );
        // trivial on U_{|ν(y)|+1}
        let y = LaurentElem::from_terms(m, [(-2, 1), (4, 2)]);
        for j in 3..8 {
            assert!(chi_char(&y, &mono(m, 1, j)).unwrap().is_identity());
        }
        let m4 = Modulus::new(2, 2).unwrap();
        assert!(matches!(chi_char(&mono(m4, 1, 0), &mono(m, 1, 0)), Err(Error::MixedModulus(..))));
    }

    #[test]
    fn chi_with_tails() {
        let m = f(2);
        let z0 = LaurentElem::geometric_tail(m, -2);
        // pairs x_{0..=2} against z0
        let x = LaurentElem::from_terms(m, [(0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(pairing(&z0, &x).unwrap(), 1);
        let x2 = LaurentElem::geometric_tail(m, 1);
        assert_eq!(pairing(&z0, &x2).unwrap(), 0);
        let y = LaurentElem::geometric_tail(m, -3);
        assert_eq!(pairing(&y, &LaurentElem::geometric_tail(m, 0)).unwrap(), 0);
        assert_eq!(pairing(&y, &LaurentElem::geometric_tail(m, -1)).unwrap(), 1);
    }

    #[test]
    fn dual_t_examples() {
        let m = f(2);
        let y = LaurentElem::from_terms(m, [(-1, 1), (3, 1)]);
        assert_eq!(dual_action_t(0, &y), y);
        assert_eq!(dual_action_t(1, &mono(m, 1, 0)), mono(m, 1, 1));
        assert_eq!(dual_action_t(-1, &mono(m, 1, 1)), mono(m, 1, 0));
    }

    #[test]
    fn contraction_examples() {
        let m = f(2);
        assert_eq!(contraction_time(&mono(m, 1, 5), 0).unwrap(), 0);
        assert_eq!(contraction_time(&mono(m, 1, -2), 0).unwrap(), 3);
        assert_eq!(contraction_time(&mono(m, 1, 0), -1).unwrap(), 2);
        assert!(matches!(contraction_time(&LaurentElem::zero(m), 0), Err(Error::ZeroCharacter)));
    }

    #[test]
    fn stabilizer_examples() {
        let m = f(2);
        assert!(stabilizer_is_trivial(&mono(m, 1, 0), 10).unwrap());
        assert!(stabilizer_is_trivial(&LaurentElem::from_terms(m, [(-3, 1), (2, 1)]), 5).unwrap());
        assert!(stabilizer_is_trivial(&LaurentElem::geometric_tail(m, 0), 5).unwrap());
        assert!(stabilizer_is_trivial(&LaurentElem::zero(m), 3).is_err());
    }

    #[test]
    fn dual_e_examples() {
        let p = 3u64;
        let one = PadicElem::from_int(p, 1, 20).unwrap();
        let zero = PadicElem::exact_zero(p);
        let g1 = PolyData::from_ints(p, &[-3]).unwrap();
        assert_eq!(dual_action_e(0, std::slice::from_ref(&one), &g1).unwrap(), vec![one.clone()]);
        let r = dual_action_e(1, std::slice::from_ref(&one), &g1).unwrap();
        assert_eq!(r[0].digit(1), Some(1));
        assert_eq!(r[0].valuation().unwrap(), Valuation::Finite(1));
        let g2 = PolyData::from_ints(p, &[-3, 0]).unwrap();
        let r = dual_action_e(1, &[one.clone(), zero.clone()], &g2).unwrap();
        assert!(r[0].is_exact_zero());
        assert_eq!(r[1].valuation().unwrap(), Valuation::Finite(1));
        assert!(matches!(dual_action_e(-1, &[one], &g1), Err(Error::NegativePowerUnsupported)));
    }

    #[test]
    fn pairing_rank_is_full() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            assert_eq!(pairing_matrix_rank(Modulus::new(p, n).unwrap(), 3).unwrap(), 6);
        }
    }

    #[test]
    fn witness_examples() {
        let spec_t = BlockSpec::from_json(&serde_json::json!({
            "blocks": [{"kind": "T", "p": 2, "n": 1, "mult": 1}]
        }))
        .unwrap();
        let x = BlockElem::new(&spec_t, vec![BlockCoord::T(vec![mono(f(2), 1, 0)])]).unwrap();
        assert_eq!(nonclosed_orbit_witness(&spec_t, &x, 3, 10).unwrap(), 4);
        assert!(matches!(
            nonclosed_orbit_witness(&spec_t, &x, 3, 3),
            Err(Error::DepthExceeded(3))
        ));

        let spec_e = BlockSpec::from_json(&serde_json::json!({
            "blocks": [{"kind": "E", "p": 3, "poly": [-3], "mult": 1}]
        }))
        .unwrap();
        let one = PadicElem::from_int(3, 1, 30).unwrap();
        let y = BlockElem::new(&spec_e, vec![BlockCoord::E(vec![vec![one.clone()]])]).unwrap();
        assert_eq!(nonclosed_orbit_witness(&spec_e, &y, 1, 10).unwrap(), 2);

        let mixed = BlockSpec::new(vec![spec_t.blocks[0].clone(), spec_e.blocks[0].clone()]).unwrap();
        let xy = BlockElem::new(
            &mixed,
            vec![BlockCoord::T(vec![mono(f(2), 1, 0)]), BlockCoord::E(vec![vec![one]])],
        )
        .unwrap();
        assert_eq!(nonclosed_orbit_witness(&mixed, &xy, 3, 10).unwrap(), 4);
        assert_eq!(nonclosed_orbit_witness(&mixed, &xy, 1, 10).unwrap(), 2);
    }

    #[test]
    fn block_json_round_trip() {
        let v = serde_json::json!({
            "blocks": [
                {"kind": "T", "p": 2, "n": 2, "mult": 2},
                {"kind": "E", "p": 5, "poly": [-5, 0], "mult": 1}
            ]
        });
        let spec = BlockSpec::from_json(&v).unwrap();
        let back = BlockSpec::from_json(&serde_json::to_value(&spec).unwrap()).unwrap();
        assert_eq!(spec, back);
        let elem = serde_json::json!({"components": [
            {"kind": "T", "values": ["1*t^0 @ p=2^2", "3*t^-1 @ p=2^2"]},
            {"kind": "E", "values": [["1@5^0 prec 4", "0@5^0 exact"]]}
        ]});
        let e = BlockElem::from_json(&spec, &elem).unwrap();
        assert_eq!(BlockElem::from_json(&spec, &serde_json::to_value(&e).unwrap()).unwrap(), e);
        let bad = serde_json::json!({"components": [{"kind": "T", "values": []}]});
        assert!(matches!(BlockElem::from_json(&spec, &bad), Err(Error::MixedShape(_))));
        assert!(BlockSpec::from_json(&serde_json::json!({"blocks": [{"kind": "T", "p": 2, "mult": 0}]})).is_err());
    }
}
