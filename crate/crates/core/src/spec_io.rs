//! Reading spec files. The kind of spec is recognised from its keys.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::cocycles::CocycleSpec;
use crate::duality::BlockSpec;
use crate::error::{Error, Result};
use crate::heisenberg::HeisElem;
use crate::laurent::LaurentElem;
use crate::multipliers::MultiplierSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "spec")]
pub enum TypedSpec {
    Blocks(BlockSpec),
    Cocycle(CocycleSpec),
    Multiplier(MultiplierSpec),
    Heisenberg(HeisElem),
}

pub fn ingest_spec(path: &Path) -> Result<TypedSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    spec_from_value(&value)
}

/// `{blocks}` → BlockSpec, `{cocycle, z}` → MultiplierSpec,
/// `{n, p, xi, upsilon, z}` → HeisElem, `{p, support}` → CocycleSpec.
pub fn spec_from_value(value: &Value) -> Result<TypedSpec> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Schema("spec must be a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("blocks") {
        BlockSpec::from_json(value).map(TypedSpec::Blocks).map_err(invariant)
    } else if has("cocycle") && has("z") {
        let s = cocycle(&obj["cocycle"])?;
        let z: LaurentElem = field(&obj["z"])?;
        MultiplierSpec::new(s, z).map(TypedSpec::Multiplier).map_err(invariant)
    } else if has("xi") {
        let n: usize = field(obj.get("n").unwrap_or(&Value::Null))?;
        let p: u64 = field(obj.get("p").unwrap_or(&Value::Null))?;
        let xi: Vec<LaurentElem> = field(&obj["xi"])?;
        let upsilon: Vec<LaurentElem> = field(obj.get("upsilon").unwrap_or(&Value::Null))?;
        let z: LaurentElem = field(obj.get("z").unwrap_or(&Value::Null))?;
        if xi.len() != n || upsilon.len() != n {
            return Err(Error::InvariantViolation(format!(
                "n = {n} but |xi| = {} and |upsilon| = {}",
                xi.len(),
                upsilon.len()
            )));
        }
        if z.modulus().p() != p {
            return Err(Error::InvariantViolation(format!("p = {p} but z lives over {}", z.modulus())));
        }
        HeisElem::new(xi, upsilon, z).map(TypedSpec::Heisenberg).map_err(invariant)
    } else if has("p") && has("support") {
        cocycle(value).map(TypedSpec::Cocycle)
    } else {
        Err(Error::Schema("unrecognised spec: expected blocks, cocycle+z, xi, or p+support".into()))
    }
}

fn field<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))
}

fn cocycle(v: &Value) -> Result<CocycleSpec> {
    let p: u64 = field(v.get("p").unwrap_or(&Value::Null))?;
    let support: Vec<i64> = field(v.get("support").unwrap_or(&Value::Null))?;
    if let Some(bad) = support.iter().find(|&&n| n < 1 || n > u32::MAX as i64) {
        return Err(Error::InvariantViolation(format!("support entry {bad} is not in {{1, 2, …}}")));
    }
    CocycleSpec::new(p, support.into_iter().map(|n| n as u32).collect()).map_err(invariant)
}

/// Validation failures other than schema and syntax errors all report a
/// violated invariant.
fn invariant(e: Error) -> Error {
    match e {
        Error::Schema(_) | Error::Parse(_) | Error::InvariantViolation(_) => e,
        other => Error::InvariantViolation(other.to_string()),
    }
}
