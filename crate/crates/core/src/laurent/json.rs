//! JSON form `{p, n, finite:{"k":c,...}, tail:{start, pattern:[...]}}`.
//!
//! Deserialization also accepts the text grammar as a plain string.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LaurentElem;
use crate::error::Error;
use crate::scalars::Modulus;

#[derive(Serialize, Deserialize)]
struct TailJson {
    start: i64,
    pattern: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    p: u64,
    n: u32,
    #[serde(default)]
    finite: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<TailJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LaurentInput {
    Text(String),
    Object(LaurentJson),
}

impl TryFrom<LaurentJson> for LaurentElem {
    type Error = Error;

    fn try_from(j: LaurentJson) -> Result<Self, Error> {
        let modulus = Modulus::new(j.p, j.n)?;
        let mut terms = Vec::with_capacity(j.finite.len());
        for (k, c) in j.finite {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Schema(format!("finite key `{k}` is not an integer")))?;
            terms.push((k, c as i128));
        }
        match j.tail {
            None => Ok(LaurentElem::from_terms(modulus, terms)),
            Some(t) => {
                let pattern: Vec<i128> = t.pattern.iter().map(|&c| c as i128).collect();
                LaurentElem::with_tail(modulus, terms, t.start, &pattern)
            }
        }
    }
}

impl From<&LaurentElem> for LaurentJson {
    fn from(x: &LaurentElem) -> Self {
        LaurentJson {
            p: x.modulus.p(),
            n: x.modulus.n(),
            finite: x.finite.iter().map(|&(k, c)| (k.to_string(), c)).collect(),
            tail: x.tail.as_ref().map(|t| TailJson {
                start: t.start,
                pattern: t.pattern.clone(),
            }),
        }
    }
}

impl Serialize for LaurentElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parsed = match LaurentInput::deserialize(deserializer)? {
            LaurentInput::Text(s) => super::parse_series(&s),
            LaurentInput::Object(j) => LaurentElem::try_from(j),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
