use thiserror::Error;

/// Errors raised by contract violations and degenerate inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("no complex structure: centralizer has dimension {0}")]
    NoComplexStructure(usize),

    #[error("centralizer not of complex type (residual {0:e})")]
    NotComplexType(f64),

    #[error("non-invertible element")]
    NonInvertible,

    #[error("input is not unit (residual {0:e})")]
    NonUnit(f64),

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("semidirect variant mismatch")]
    VariantMismatch,

    #[error("numerical drift: membership residual {0:e}")]
    NumericalDrift(f64),

    #[error("not a member of {group} (residual {residual:e})")]
    NotMember { group: String, residual: f64 },

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("parity mismatch: {0}")]
    Parity(String),

    #[error("chart overflow: {0}")]
    ChartOverflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
