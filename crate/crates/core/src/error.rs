use std::fmt;

use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1, got {0}")]
    InvalidExponent(u32),
    #[error("modulus {p}^{n} does not fit the 31-bit residue range")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("torus elements over different primes ({0} and {1})")]
    MixedPrime(u64, u64),
    #[error("operands over different moduli ({0} and {1})")]
    MixedModulus(String, String),
    #[error("unsupported operands: {0}")]
    UnsupportedOperands(&'static str),
    #[error("insufficient p-adic precision: {0}")]
    InsufficientPrecision(String),
    #[error("negative powers of the dual companion action are not supported")]
    NegativePowerUnsupported,
    #[error("the zero character has no contraction time or stabilizer")]
    ZeroCharacter,
    #[error("no iterate within depth {0} entered the neighbourhood")]
    DepthExceeded(u32),
    #[error("group elements built from different cocycles")]
    MixedCocycle,
    #[error("cocycle support is empty")]
    EmptySupport,
    #[error("multiplier probe is not linear in the scalar at t^{0}")]
    NonCharacterProfile(i64),
    #[error("witness window must reach {required} or lower, got {got}")]
    WitnessWindowTooSmall { required: i64, got: i64 },
    #[error("shape mismatch: {0}")]
    MixedShape(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid suite parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Syntax error in one of the text grammars, with the byte offset where
/// parsing stopped and the tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected ", self.position)?;
        for (i, tok) in self.expected.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            f.write_str(tok)?;
        }
        Ok(())
    }
}
