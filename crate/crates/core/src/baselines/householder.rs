use super::{HouseholderAux, Method, QRResult};
use crate::error::{Error, Result};
use crate::la::kernels::{axpy, dot};
use crate::la::{DenseMatrix, Precision, PrecisionPolicy};
use crate::rhqr::{extend_t, rh_vector, Scaling, StepInfo};

/// Compact Householder factorization `A = (I − U·T·Uᵗ)·[R; 0]`.
#[derive(Clone, Debug)]
pub struct HouseholderFactors {
    pub u: DenseMatrix,
    pub t: DenseMatrix,
    pub r: DenseMatrix,
    pub steps: Vec<StepInfo>,
}

/// Right-looking Householder QR of a `p × m` matrix (`p ≥ m`).
///
/// The sign rule and vector scaling are the ones used by the randomized
/// process, so the two produce the same `R` on `ΨW`.
pub fn householder_factor(a: &DenseMatrix, scaling: Scaling, policy: &PrecisionPolicy) -> Result<HouseholderFactors> {
    let (rows, m) = a.shape();
    if rows < m {
        return Err(Error::InvalidParameter(format!("Householder QR needs rows ≥ cols, got {rows}x{m}")));
    }
    let p = policy.low;
    let mut work = a.rounded_to(p);
    let mut u = DenseMatrix::zeros_in(rows, m, p);
    let mut t = DenseMatrix::zeros_in(m, m, policy.high);
    let mut r = DenseMatrix::zeros_in(m, m, policy.high);
    let mut steps = Vec::with_capacity(m);
    for j in 0..m {
        let col = work.col(j).to_vec();
        let step = rh_vector(&col, &col, j, scaling, policy)?;
        for i in 0..j {
            r.set(i, j, col[i]);
        }
        r.set(j, j, step.r_diag());
        for c in (j + 1)..m {
            let coef = p.round(step.beta * dot(p, &step.u[j..], &work.col(c)[j..]));
            axpy(p, -coef, &step.u[j..], &mut work.col_mut(c)[j..]);
        }
        u.col_mut(j).copy_from_slice(&step.u);
        extend_t(&mut t, &u, j, step.beta, policy.high);
        steps.push(step.info());
    }
    Ok(HouseholderFactors { u, t, r, steps })
}

/// Householder QR in precision `p` with `‖u‖ = √2` scaling, explicit thin `Q`.
pub fn householder_qr(a: &DenseMatrix, p: Precision) -> Result<QRResult> {
    let f = householder_factor(a, Scaling::SqrtTwo, &PrecisionPolicy::uniform(p))?;
    let (rows, m) = a.shape();
    // Q = [I; 0] − U·T·U[..m]ᵗ
    let u1t = f.u.block(0..m, 0..m).transpose();
    let x = f.t.matmul(&u1t, p);
    let mut q = DenseMatrix::eye(rows, m).rounded_to(p);
    for j in 0..m {
        let xj = x.col(j).to_vec();
        let col = q.col_mut(j);
        for (c, &v) in xj.iter().enumerate() {
            axpy(p, -v, f.u.col(c), col);
        }
    }
    Ok(QRResult { q: Some(q), r: f.r, aux: Some(HouseholderAux { u: f.u, t: f.t }), method: Method::Householder })
}
