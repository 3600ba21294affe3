use thiserror::Error;

/// Errors produced by the exact kernel and the diagnostics built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("series undefined at origin: denominator vanishes at z = 0")]
    SeriesUndefinedAtOrigin,

    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("near-pole evaluation: |den(z)| = {magnitude:e}")]
    NearPole { magnitude: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unsupported float precision of {0} bits (supported: 24, 53)")]
    UnsupportedPrecision(u32),

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("insufficient coefficients: need order {needed}, series has order {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("degenerate convergent sequence at index {0}")]
    DegenerateConvergents(usize),

    #[error("first convergent must have unit denominator")]
    NonUnitLeadingDenominator,

    #[error("partial term at index {0} is not a polynomial")]
    NonPolynomialPartial(usize),

    #[error("indeterminate truncation at level {0}")]
    IndeterminateTruncation(usize),

    #[error("non-normal window: H_{p}^{m} = 0")]
    NonNormalWindow { m: i64, p: usize },

    #[error("entry [{l}/{m}] is a block marker: its defining system is singular")]
    Blocked { l: usize, m: usize },

    #[error("row not normal over range: entry [{n}/{p}] is blocked")]
    RowNotNormal { n: usize, p: usize },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

impl Error {
    /// Input errors are problems with what the caller handed in; everything
    /// else is a mathematical degeneracy discovered while computing.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidRational(_)
                | Error::UnknownBuiltin(_)
                | Error::EmptyInput(_)
                | Error::UnsupportedPrecision(_)
                | Error::InvalidDocument(_)
                | Error::InvalidSpec(_)
                | Error::IndexOutOfRange { .. }
                | Error::InsufficientCoefficients { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
