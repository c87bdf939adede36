use super::pivoted::pivoted_lstsq;
use super::{Method, QRResult};
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::{axpy, nrm2};
use crate::la::{DenseMatrix, PrecisionPolicy};
use crate::rhqr::breakdown_threshold;
use crate::sketch::Sketch;

/// Randomized Gram-Schmidt.
///
/// Column `j` is projected with coefficients solving the sketched
/// least-squares problem `min ‖(ΩQ_{j−1})·r − Ωw_j‖`, then normalised so that
/// `‖Ωq_j‖ = 1`. The least-squares problem is solved from scratch at every
/// step with a pivoted Householder QR.
pub fn rgs(w: &DenseMatrix, omega: &dyn Sketch, policy: &PrecisionPolicy) -> Result<QRResult> {
    let (n, m) = w.shape();
    if omega.input_dim() != n {
        return Err(Error::Shape(format!("sketch acts on R^{}, matrix has {n} rows", omega.input_dim())));
    }
    let (hi, lo) = (policy.high, policy.low);
    let ell = omega.output_dim();
    let mut q = DenseMatrix::zeros_in(n, m, lo);
    let mut s = DenseMatrix::zeros_in(ell, m, hi);
    let mut r = DenseMatrix::zeros_in(m, m, hi);
    for j in 0..m {
        let mut v: Vec<f64> = w.col(j).iter().map(|&x| lo.round(x)).collect();
        let pj = omega.apply_vec(&v, lo);
        let pnorm = nrm2(hi, &pj);
        if j > 0 {
            let coef = pivoted_lstsq(&s.columns(0..j), &pj, hi);
            for (i, &c) in coef.iter().enumerate() {
                axpy(lo, -lo.round(c), q.col(i), &mut v);
                r.set(i, j, c);
            }
        }
        let z = omega.apply_vec(&v, lo);
        let rjj = nrm2(hi, &z);
        if rjj == 0.0 || rjj <= breakdown_threshold(policy) * pnorm {
            return Err(Error::Breakdown { column: j, kind: BreakdownKind::ZeroTail });
        }
        r.set(j, j, rjj);
        let inv = 1.0 / rjj;
        for (dst, &x) in q.col_mut(j).iter_mut().zip(&v) {
            *dst = lo.round(x * lo.round(inv));
        }
        for (dst, &x) in s.col_mut(j).iter_mut().zip(&z) {
            *dst = hi.round(x / rjj);
        }
    }
    Ok(QRResult { q: Some(q), r, aux: None, method: Method::RandomizedGramSchmidt })
}
