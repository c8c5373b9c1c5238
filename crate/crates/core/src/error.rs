//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("homomorphism is not well-defined: {0}")]
    IllDefinedHom(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("group must be finite here: {0}")]
    InfiniteGroup(String),

    #[error("element does not belong to the expected group: {0}")]
    NotInGroup(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("class does not kill the divisible summand: {0}")]
    NotInPairingKernel(String),

    #[error("bonding maps are inconsistent on the triple {n} | {m} | {k}")]
    InconsistentBonding { n: u64, m: u64, k: u64 },

    #[error("family fails the compatibility squares: {0}")]
    IncompatibleFamily(String),

    #[error("family has no stage {0} and it cannot be reconstructed")]
    MissingStage(u64),

    #[error("numeric residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
