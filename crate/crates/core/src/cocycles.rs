//! The bilinear maps θ_n and the equivariant 2-cocycles
//! η_s = Σ_{n∈S} tⁿ·θ_{2n} on 𝔽_p((t)).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::{lau_shift, LaurentElem};
use crate::report::{Check, LawReport};
use crate::scalars::{is_prime, Modulus};
use crate::sweep;
use crate::window::{Window, WindowSpace};

/// The data (p, supp s). `support` is sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CocycleSpec {
    p: u64,
    support: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSpec {
    p: u64,
    #[serde(default)]
    support: Vec<u32>,
}

impl TryFrom<RawSpec> for CocycleSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        CocycleSpec::new(r.p, r.support)
    }
}

impl CocycleSpec {
    pub fn new(p: u64, mut support: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if support.contains(&0) {
            return Err(Error::InvariantViolation("support must lie in {1, 2, …}".into()));
        }
        support.sort_unstable();
        support.dedup();
        Ok(CocycleSpec { p, support })
    }

    /// Exploratory: the finite truncation of an arbitrary s to its first
    /// `bits.len()` values. Nothing is claimed about the untruncated s.
    pub fn from_prefix(p: u64, bits: &[bool]) -> Result<Self> {
        let support = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32 + 1)
            .collect();
        Self::new(p, support)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// s(n) ∈ {0, 1}.
    pub fn s(&self, n: i64) -> bool {
        n >= 1 && self.support.binary_search(&(n as u32)).is_ok()
    }

    /// m = max supp(s).
    pub fn max_support(&self) -> Option<u32> {
        self.support.last().copied()
    }

    pub fn field(&self) -> Modulus {
        Modulus::prime_field(self.p).expect("validated")
    }

    fn check_operand(&self, x: &LaurentElem) -> Result<()> {
        if x.modulus() != self.field() {
            return Err(Error::MixedModulus(x.modulus().to_string(), self.field().to_string()));
        }
        Ok(())
    }
}

fn theta_terms(n: i64, x: &LaurentElem, y: &LaurentElem, shift: i64, out: &mut Vec<(i64, i128)>) {
    for &(i, c) in x.finite_terms() {
        let d = y.coeff_raw(i + n);
        if d != 0 {
            out.push((i + shift, c as i128 * d as i128));
        }
    }
}

/// θ_n(x, y) = Σ_i x_i·y_{i+n}·t^i over 𝔽_p. `x` must be finitely supported.
pub fn theta(n: i64, x: &LaurentElem, y: &LaurentElem) -> Result<LaurentElem> {
    if x.modulus() != y.modulus() {
        return Err(Error::MixedModulus(x.modulus().to_string(), y.modulus().to_string()));
    }
    if x.modulus().n() != 1 {
        return Err(Error::MixedModulus(x.modulus().to_string(), format!("{}^1", x.modulus().p())));
    }
    if !x.is_finite() {
        return Err(Error::UnsupportedOperands("θ needs a finitely supported first argument"));
    }
    let mut terms = Vec::new();
    theta_terms(n, x, y, 0, &mut terms);
    Ok(LaurentElem::from_terms(x.modulus(), terms))
}

/// η_s(x, y) = Σ_{n∈S} tⁿ·θ_{2n}(x, y).
pub fn eta(s: &CocycleSpec, x: &LaurentElem, y: &LaurentElem) -> Result<LaurentElem> {
    s.check_operand(x)?;
    s.check_operand(y)?;
    if !x.is_finite() {
        return Err(Error::UnsupportedOperands("η needs a finitely supported first argument"));
    }
    let mut terms = Vec::new();
    for &n in &s.support {
        let n = n as i64;
        theta_terms(2 * n, x, y, n, &mut terms);
    }
    Ok(LaurentElem::from_terms(s.field(), terms))
}

/// η values for every pair of a window, stored densely for fast sums.
pub(crate) struct EtaTable {
    pub space: WindowSpace,
    pub elems: Vec<LaurentElem>,
    base: i64,
    width: usize,
    digits: Vec<u8>,
    p: u8,
}

impl EtaTable {
    pub fn new(s: &CocycleSpec, window: Window) -> Result<Self> {
        let space = WindowSpace::new(s.field(), window)?;
        let elems = space.elements();
        let n = elems.len();
        let m = s.max_support().unwrap_or(0) as i64;
        let base = window.lo;
        let width = (window.hi - 1 + m - base + 1).max(1) as usize;
        let rows = sweep::map(n * n, |idx| {
            let v = eta(s, &elems[idx / n], &elems[idx % n]).expect("window operands are valid");
            let mut row = vec![0u8; width];
            for &(k, c) in v.finite_terms() {
                row[(k - base) as usize] = c as u8;
            }
            row
        });
        Ok(EtaTable {
            space,
            elems,
            base,
            width,
            digits: rows.concat(),
            p: s.p() as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn row(&self, i: usize, j: usize) -> &[u8] {
        let at = (i * self.len() + j) * self.width;
        &self.digits[at..at + self.width]
    }

    /// a + b == c + d digitwise mod p.
    pub fn sums_agree(&self, a: &[u8], b: &[u8], c: &[u8], d: &[u8]) -> bool {
        let p = self.p;
        (0..self.width).all(|k| (a[k] + b[k]) % p == (c[k] + d[k]) % p)
    }

    pub fn to_series(&self, row: &[u8]) -> LaurentElem {
        LaurentElem::from_dense(self.space.modulus(), self.base, &row.iter().map(|&c| c as u64).collect::<Vec<_>>())
    }
}

fn text(x: &LaurentElem) -> Value {
    Value::String(x.to_string())
}

/// Exhaustively checks bi-additivity in both slots, equivariance
/// η(tx, ty) = t·η(x, y) and the 2-cocycle identity
/// η(x,y) + η(x+y,z) = η(x,y+z) + η(y,z) on W(lo, hi).
pub fn check_cocycle_laws(s: &CocycleSpec, window: Window) -> Result<LawReport> {
    let table = EtaTable::new(s, window)?;
    let n = table.len();
    let sp = &table.space;
    let e = &table.elems;
    let zero = vec![0u8; table.width];
    let mut report = LawReport::default();

    let split3 = |idx: usize| (idx / (n * n), (idx / n) % n, idx % n);
    let cubes = (n * n * n) as u64;

    let bad = sweep::find_first(n * n * n, |idx| {
        let (i, i2, j) = split3(idx);
        let lhs = table.row(sp.add_index(i, i2), j);
        (!table.sums_agree(lhs, &zero, table.row(i, j), table.row(i2, j)))
            .then(|| json!({"x": text(&e[i]), "x2": text(&e[i2]), "y": text(&e[j])}))
    });
    report.push(Check::new("additive in the first slot", cubes, bad));

    let bad = sweep::find_first(n * n * n, |idx| {
        let (i, j, j2) = split3(idx);
        let lhs = table.row(i, sp.add_index(j, j2));
        (!table.sums_agree(lhs, &zero, table.row(i, j), table.row(i, j2)))
            .then(|| json!({"x": text(&e[i]), "y": text(&e[j]), "y2": text(&e[j2])}))
    });
    report.push(Check::new("additive in the second slot", cubes, bad));

    let bad = sweep::find_first(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        let lhs = eta(s, &lau_shift(&e[i], 1), &lau_shift(&e[j], 1)).ok()?;
        let rhs = lau_shift(&table.to_series(table.row(i, j)), 1);
        (lhs != rhs).then(|| json!({"x": text(&e[i]), "y": text(&e[j]), "lhs": text(&lhs), "rhs": text(&rhs)}))
    });
    report.push(Check::new("equivariant under t", (n * n) as u64, bad));

    let bad = sweep::find_first(n * n * n, |idx| {
        let (i, j, k) = split3(idx);
        let ok = table.sums_agree(
            table.row(i, j),
            table.row(sp.add_index(i, j), k),
            table.row(i, sp.add_index(j, k)),
            table.row(j, k),
        );
        (!ok).then(|| json!({"x": text(&e[i]), "y": text(&e[j]), "z": text(&e[k])}))
    });
    report.push(Check::new("2-cocycle identity", cubes, bad));

    Ok(report)
}
