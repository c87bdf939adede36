use std::fmt;

use crate::la::Precision;

/// Errors raised by factorizations, solvers and sketch construction.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("value {value} is out of range for {precision} storage")]
    Range { value: f64, precision: Precision },
    #[error("singular triangular factor: diagonal entry {index} is zero or subnormal")]
    SingularFactor { index: usize },
    #[error("breakdown at column {column}: {kind}")]
    Breakdown { column: usize, kind: BreakdownKind },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Why a reflector or basis vector could not be formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakdownKind {
    /// The (sketched) tail to eliminate is zero up to roundoff.
    ZeroTail,
    /// The pivot update `y_j + σρ` vanished.
    Cancellation,
    /// The triangular factor used to reconstruct the Householder vectors is singular.
    Reconstruction,
}

impl BreakdownKind {
    /// Short kebab-case name, suitable for tables.
    pub fn tag(self) -> &'static str {
        match self {
            BreakdownKind::ZeroTail => "zero-tail",
            BreakdownKind::Cancellation => "cancellation",
            BreakdownKind::Reconstruction => "reconstruction",
        }
    }
}

impl fmt::Display for BreakdownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BreakdownKind::ZeroTail => "vector tail is in the kernel of the sketch or zero",
            BreakdownKind::Cancellation => "cancellation in the pivot entry",
            BreakdownKind::Reconstruction => "reconstruction factor is singular",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}
