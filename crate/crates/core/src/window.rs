//! Finite windows W(lo, hi) = { x : supp(x) ⊆ [lo, hi) } used by the
//! exhaustive sweeps.
//!
//! A window is a finite subgroup of C_{pⁿ}((t)). Its elements are numbered
//! in mixed radix: digit `j` of the index is the coefficient of `t^{lo+j}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentElem;
use crate::scalars::Modulus;

/// Half-open index range `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn width(&self) -> u32 {
        (self.hi - self.lo).max(0) as u32
    }
}

/// Largest window we are willing to enumerate.
pub const MAX_WINDOW_LEN: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct WindowSpace {
    modulus: Modulus,
    window: Window,
    len: usize,
}

impl WindowSpace {
    pub fn new(modulus: Modulus, window: Window) -> Result<Self> {
        if window.hi < window.lo {
            return Err(Error::InvalidParams(format!(
                "window [{}, {}) is reversed",
                window.lo, window.hi
            )));
        }
        let len = modulus
            .order()
            .checked_pow(window.width())
            .filter(|&l| l <= MAX_WINDOW_LEN)
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "window [{}, {}) over {} is too large to enumerate",
                    window.lo, window.hi, modulus
                ))
            })?;
        Ok(WindowSpace {
            modulus,
            window,
            len: len as usize,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn element(&self, mut idx: usize) -> LaurentElem {
        let q = self.modulus.order() as usize;
        let mut coeffs = Vec::with_capacity(self.window.width() as usize);
        for _ in 0..self.window.width() {
            coeffs.push((idx % q) as u64);
            idx /= q;
        }
        LaurentElem::from_dense(self.modulus, self.window.lo, &coeffs)
    }

    pub fn elements(&self) -> Vec<LaurentElem> {
        (0..self.len).map(|i| self.element(i)).collect()
    }

    /// Position of `x` in the enumeration, `None` if `x` is outside.
    pub fn index_of(&self, x: &LaurentElem) -> Option<usize> {
        if x.modulus() != self.modulus || !x.is_finite() {
            return None;
        }
        let q = self.modulus.order() as usize;
        let mut idx = 0usize;
        for &(k, c) in x.finite_terms() {
            if k < self.window.lo || k >= self.window.hi {
                return None;
            }
            idx += c as usize * q.pow((k - self.window.lo) as u32);
        }
        Some(idx)
    }

    /// Index of `element(i) + element(j)`, computed digitwise.
    pub fn add_index(&self, mut i: usize, mut j: usize) -> usize {
        let q = self.modulus.order() as usize;
        let (mut out, mut place) = (0usize, 1usize);
        for _ in 0..self.window.width() {
            out += ((i % q + j % q) % q) * place;
            i /= q;
            j /= q;
            place *= q;
        }
        out
    }

    /// Index of `-element(i)`.
    pub fn neg_index(&self, mut i: usize) -> usize {
        let q = self.modulus.order() as usize;
        let (mut out, mut place) = (0usize, 1usize);
        for _ in 0..self.window.width() {
            out += ((q - i % q) % q) * place;
            i /= q;
            place *= q;
        }
        out
    }

    /// Indices of the monomials `t^k`, `k ∈ [lo, hi)`. They generate the
    /// window as a group.
    pub fn generators(&self) -> Vec<usize> {
        let q = self.modulus.order() as usize;
        (0..self.window.width()).map(|j| q.pow(j)).collect()
    }
}
