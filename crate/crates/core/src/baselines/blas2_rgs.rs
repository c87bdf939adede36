use super::{Method, QRResult};
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::{axpy, dot, nrm2};
use crate::la::{DenseMatrix, Precision, PrecisionPolicy};
use crate::rhqr::{breakdown_threshold, tri_mul, tri_tr_mul};
use crate::sketch::Sketch;

/// Output of [`blas2_rgs`]: the uncorrected factorization plus the `T`
/// factor tracking loss of sketch orthogonality.
#[derive(Clone, Debug)]
pub struct Blas2Rgs {
    pub qr: QRResult,
    /// `m × m` upper-triangular with unit diagonal; equals `I` in exact arithmetic.
    pub t: DenseMatrix,
    /// Sketches `s_j = Ωq_j` as computed during the process.
    pub s: DenseMatrix,
}

impl Blas2Rgs {
    /// `Q·T`.
    pub fn corrected_q(&self) -> DenseMatrix {
        self.qr.q().to_double().matmul(&self.t.to_double(), Precision::Double)
    }

    /// `[I − T; Q·T]`, of shape `(m + n) × m`.
    pub fn corrected_stacked(&self) -> DenseMatrix {
        let m = self.t.cols();
        let top = DenseMatrix::identity(m).sub(&self.t.to_double(), Precision::Double);
        stack(&top, &self.corrected_q())
    }

    /// `[I − T; Ω·Q·T]`, the sketch of the fully corrected basis, in double.
    pub fn corrected_sketch(&self, omega: &dyn Sketch) -> Result<DenseMatrix> {
        let m = self.t.cols();
        let top = DenseMatrix::identity(m).sub(&self.t.to_double(), Precision::Double);
        let bottom = omega.apply(&self.corrected_q(), Precision::Double)?;
        Ok(stack(&top, &bottom))
    }
}

fn stack(top: &DenseMatrix, bottom: &DenseMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(top.rows() + bottom.rows(), top.cols());
    out.set_block(0, 0, top);
    out.set_block(top.rows(), 0, bottom);
    out
}

/// Gram-Schmidt process obtained from randomized Householder QR of `[0; W]`.
///
/// Projection coefficients are `Tᵗ·Sᵗ·Ωw_j`; `T` is extended with
/// `−T·Sᵗ·s_j` and a unit diagonal.
pub fn blas2_rgs(w: &DenseMatrix, omega: &dyn Sketch, policy: &PrecisionPolicy) -> Result<Blas2Rgs> {
    let (n, m) = w.shape();
    if omega.input_dim() != n {
        return Err(Error::Shape(format!("sketch acts on R^{}, matrix has {n} rows", omega.input_dim())));
    }
    let (hi, lo) = (policy.high, policy.low);
    let mut q = DenseMatrix::zeros_in(n, m, lo);
    let mut s = DenseMatrix::zeros_in(omega.output_dim(), m, hi);
    let mut t = DenseMatrix::zeros_in(m, m, hi);
    let mut r = DenseMatrix::zeros_in(m, m, hi);
    for j in 0..m {
        let mut v: Vec<f64> = w.col(j).iter().map(|&x| lo.round(x)).collect();
        let pj = omega.apply_vec(&v, lo);
        let pnorm = nrm2(hi, &pj);
        if j > 0 {
            let sp: Vec<f64> = (0..j).map(|c| dot(hi, s.col(c), &pj)).collect();
            let head = tri_tr_mul(&t, &sp, hi);
            for (i, &c) in head.iter().enumerate() {
                axpy(lo, -lo.round(c), q.col(i), &mut v);
                r.set(i, j, c);
            }
        }
        let z = omega.apply_vec(&v, lo);
        let rho = nrm2(hi, &z);
        if rho == 0.0 || rho <= breakdown_threshold(policy) * pnorm {
            return Err(Error::Breakdown { column: j, kind: BreakdownKind::ZeroTail });
        }
        r.set(j, j, rho);
        for (dst, &x) in q.col_mut(j).iter_mut().zip(&v) {
            *dst = lo.round(x / rho);
        }
        for (dst, &x) in s.col_mut(j).iter_mut().zip(&z) {
            *dst = hi.round(x / rho);
        }
        let ss: Vec<f64> = (0..j).map(|c| dot(hi, s.col(c), s.col(j))).collect();
        let tail = tri_mul(&t, &ss, hi);
        let col = t.col_mut(j);
        for (dst, x) in col[..j].iter_mut().zip(&tail) {
            *dst = -x;
        }
        col[j] = 1.0;
    }
    Ok(Blas2Rgs {
        qr: QRResult { q: Some(q), r, aux: None, method: Method::Blas2RandomizedGramSchmidt },
        t,
        s,
    })
}
