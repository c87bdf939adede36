//! Dense linear algebra with emulated storage precision.

pub mod kernels;
mod matrix;
mod metrics;
mod precision;
mod sparse;
mod svd;
mod tri;

pub use matrix::{cast_precision, DenseMatrix};
pub use metrics::{
    cond_number, factorization_errors, orthogonality_error, prefix_cond_numbers, prefix_metric_rows,
    FactorizationErrors, MetricRow,
};
pub use precision::{PolicyMode, Precision, PrecisionPolicy};
pub use sparse::CscMatrix;
pub use svd::{householder_r, singular_values};
pub use tri::{right_tri_solve, upper_tri_inverse, upper_tri_solve};
