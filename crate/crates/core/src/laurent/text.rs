//! Text grammar for Laurent series.
//!
//! ```text
//! elem  := body '@' 'p=' int '^' int
//! body  := '0' | item ('+' item)*
//! item  := int '*t^' sint | 'per[' int (',' int)* ']*t^{>=' sint '}'
//! ```
//!
//! At most one periodic item is allowed and it must come last. Printing
//! always produces the canonical form, e.g.
//! `1*t^-2 + 2*t^0 + per[1]*t^{>=3} @ p=3^1`.

use std::fmt;

use super::{LaurentElem, Tail};
use crate::error::{Error, ParseError, Result};
use crate::scalars::Modulus;

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(k, c) in &self.finite {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}*t^{k}")?;
        }
        if let Some(Tail { start, pattern }) = &self.tail {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str("per[")?;
            for (i, c) in pattern.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]*t^{{>={start}}}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " @ p={}", self.modulus)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, expected: &[&'static str]) -> Error {
        Error::Parse(ParseError {
            position: self.pos,
            expected: expected.to_vec(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &'static str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&[tok]))
        }
    }

    fn digits(&mut self) -> &'a str {
        let rest = self.rest();
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        self.pos += n;
        &rest[..n]
    }

    fn unsigned(&mut self) -> Result<u128> {
        let at = self.pos;
        let d = self.digits();
        d.parse().map_err(|_| {
            self.pos = at;
            self.err(&["unsigned integer"])
        })
    }

    fn signed(&mut self) -> Result<i64> {
        let at = self.pos;
        let neg = self.eat("-");
        let d = self.digits();
        let v: i64 = d.parse().map_err(|_| {
            self.pos = at;
            self.err(&["integer"])
        })?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses the text grammar. `print(parse(s))` is canonical and
/// `parse(print(x)) == x`.
pub fn parse_series(text: &str) -> Result<LaurentElem> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut terms: Vec<(i64, u128)> = Vec::new();
    let mut tail: Option<(i64, Vec<u128>)> = None;
    cur.skip_ws();

    let zero_body = {
        let save = cur.pos;
        if cur.eat("0") {
            cur.skip_ws();
            if cur.rest().starts_with('@') {
                true
            } else {
                cur.pos = save;
                false
            }
        } else {
            false
        }
    };

    if !zero_body {
        loop {
            cur.skip_ws();
            if tail.is_some() {
                return Err(cur.err(&["`@`"]));
            }
            if cur.eat("per[") {
                let mut pattern = Vec::new();
                loop {
                    cur.skip_ws();
                    pattern.push(cur.unsigned()?);
                    cur.skip_ws();
                    if cur.eat(",") {
                        continue;
                    }
                    cur.expect("]")?;
                    break;
                }
                cur.expect("*t^{>=")?;
                let start = cur.signed()?;
                cur.expect("}")?;
                tail = Some((start, pattern));
            } else if cur.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let c = cur.unsigned()?;
                cur.expect("*t^")?;
                let k = cur.signed()?;
                terms.push((k, c));
            } else {
                return Err(cur.err(&["coefficient", "`per[`", "`0`"]));
            }
            cur.skip_ws();
            if !cur.eat("+") {
                break;
            }
        }
    }

    cur.skip_ws();
    cur.expect("@")?;
    cur.skip_ws();
    cur.expect("p=")?;
    let p_at = cur.pos;
    let p = cur.unsigned()?;
    cur.expect("^")?;
    let n = cur.unsigned()?;
    cur.skip_ws();
    if !cur.rest().is_empty() {
        return Err(cur.err(&["end of input"]));
    }
    let modulus = Modulus::new(p as u64, n as u32).map_err(|e| match e {
        Error::NotPrime(_) | Error::InvalidExponent(_) | Error::ModulusTooLarge { .. } => e,
        _ => Error::Parse(ParseError {
            position: p_at,
            expected: vec!["prime power"],
        }),
    })?;

    let order = modulus.order() as u128;
    let terms = terms.into_iter().map(|(k, c)| (k, (c % order) as i128));
    match tail {
        None => Ok(LaurentElem::from_terms(modulus, terms)),
        Some((start, pattern)) => {
            let pattern: Vec<i128> = pattern.iter().map(|&c| (c % order) as i128).collect();
            LaurentElem::with_tail(modulus, terms, start, &pattern)
        }
    }
}

impl std::str::FromStr for LaurentElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_series(s)
    }
}
