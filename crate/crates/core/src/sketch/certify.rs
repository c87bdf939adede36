use super::Sketch;
use crate::error::{Error, Result};
use crate::la::{orthogonality_error, singular_values, DenseMatrix, Precision};

/// Empirical distortion of `Θ` on `Range(Q)` for orthonormal `Q`.
///
/// Returns `max(1 − σ_min(ΘQ), σ_max(ΘQ) − 1)`; `Θ` is an ε-embedding of the
/// range exactly when the result is at most ε.
pub fn check_embedding(theta: &dyn Sketch, q: &DenseMatrix) -> Result<f64> {
    let orth = orthogonality_error(q);
    if orth > 1e-12 {
        return Err(Error::Precondition(format!("basis is not orthonormal: ‖QᵗQ − I‖_F = {orth:e}")));
    }
    let sq = theta.apply(&q.to_double(), Precision::Double)?;
    let sv = singular_values(&sq);
    let (hi, lo) = (sv[0], *sv.last().unwrap());
    Ok((1.0 - lo).max(hi - 1.0))
}
