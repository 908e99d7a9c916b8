//! Exact arithmetic for abelian contraction groups and the central
//! extensions built from them.

pub mod cocycles;
pub mod duality;
pub mod error;
pub mod extensions;
pub mod heisenberg;
pub mod laurent;
pub mod linalg;
pub mod multipliers;
pub mod padic;
pub mod report;
pub mod scalars;
pub mod spec_io;
pub mod suites;
pub mod sweep;
pub mod window;

pub use error::{Error, ParseError, Result};
pub use laurent::{LaurentElem, Valuation};
pub use scalars::{Modulus, Scalar, TorusElem};
