use super::householder::householder_factor;
use super::{Method, QRResult};
use crate::error::{Error, Result};
use crate::la::{right_tri_solve, DenseMatrix, PrecisionPolicy};
use crate::rhqr::Scaling;
use crate::sketch::Sketch;

/// Randomized Cholesky QR: `R` from a Householder QR of `ΩW`, then `Q = W·R^{-1}`.
pub fn rand_cholesky_qr(w: &DenseMatrix, omega: &dyn Sketch, policy: &PrecisionPolicy) -> Result<QRResult> {
    if omega.input_dim() != w.rows() {
        return Err(Error::Shape(format!(
            "sketch acts on R^{}, matrix has {} rows",
            omega.input_dim(),
            w.rows()
        )));
    }
    let wl = w.rounded_to(policy.low);
    let z = omega.apply(&wl, policy.low)?.rounded_to(policy.high);
    let f = householder_factor(&z, Scaling::SqrtTwo, &PrecisionPolicy::uniform(policy.high))?;
    let q = right_tri_solve(&wl, &f.r, policy.low)?;
    Ok(QRResult { q: Some(q), r: f.r, aux: None, method: Method::RandomizedCholeskyQr })
}
