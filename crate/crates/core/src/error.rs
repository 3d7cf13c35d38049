use thiserror::Error;

/// Errors raised by the group-theoretic and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{a} has no inverse modulo {m}")]
    NotInvertible { a: i64, m: i64 },

    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(i64),

    #[error("invalid dimension {0}")]
    InvalidDimension(i64),

    #[error("determinant {det} is not +1 or -1 modulo {dbar}")]
    BadDeterminant { det: i64, dbar: i64 },

    #[error("matrix is already prime; no decomposition needed")]
    PrimeInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element order exceeds the bound {bound}")]
    OrderOverflow { bound: u64 },

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64 },

    #[error("projector trace {trace} is not within 0.01 of an integer")]
    NonIntegerTrace { trace: f64 },

    #[error("operator power is not proportional to the identity (residual {residual:e})")]
    NotScalarPower { residual: f64 },

    #[error("operation is anti-unitary; a unitary operation is required")]
    NotUnitary,

    #[error("vector norm {norm} is not 1")]
    NotNormalized { norm: f64 },

    #[error("orbit size {orbit} is not divisible by {d_squared}")]
    NonDivisible { orbit: u64, d_squared: u64 },

    #[error("unknown fiducial recipe `{0}`")]
    UnknownRecipe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
