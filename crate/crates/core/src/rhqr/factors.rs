use super::compact::{compact_coeffs, sub_u_times};
use super::{Scaling, StepInfo};
use crate::error::{shape_err, Result};
use crate::la::{upper_tri_solve, DenseMatrix, PrecisionPolicy};
use crate::sketch::{EmbeddedSketch, Sketch};

/// Output of a randomized Householder factorization of an `n × k` matrix.
#[derive(Clone, Debug)]
pub struct RHQRFactors {
    /// `n × k` Householder vectors, zero above the diagonal.
    pub u: DenseMatrix,
    /// `ΨU`, of shape `(ℓ+m) × k`.
    pub s: DenseMatrix,
    /// `k × k` upper-triangular compact factor.
    pub t: DenseMatrix,
    /// `k × k` upper-triangular factor with `W = Q·R`.
    pub r: DenseMatrix,
    pub scaling: Scaling,
    pub psi: EmbeddedSketch,
    pub steps: Vec<StepInfo>,
    pub policy: PrecisionPolicy,
}

impl RHQRFactors {
    pub fn ncols(&self) -> usize {
        self.u.cols()
    }
}

/// `T·U[..k, :]ᵗ`, the small matrix shared by `thin_q` and `sketch_q`.
fn t_u1t(f: &RHQRFactors) -> DenseMatrix {
    let k = f.ncols();
    let u1 = f.u.block(0..k, 0..k).to_double();
    f.t.matmul(&u1.transpose(), f.policy.high)
}

/// Explicit `Q = [I_k; 0] − U·T·U[..k, :]ᵗ` (n × k), in the low precision.
pub fn thin_q(f: &RHQRFactors) -> DenseMatrix {
    let k = f.ncols();
    let n = f.u.rows();
    let x = t_u1t(f);
    let lo = f.policy.low;
    let mut q = DenseMatrix::zeros_in(n, k, lo);
    for j in 0..k {
        let col = q.col_mut(j);
        col[j] = 1.0;
        let c: Vec<f64> = x.col(j).to_vec();
        sub_u_times(&f.u, &c, col, lo);
    }
    q
}

/// `ΨQ = [I_k; 0] − S·T·U[..k, :]ᵗ`, computed without n-dimensional work.
pub fn sketch_q(f: &RHQRFactors) -> DenseMatrix {
    let k = f.ncols();
    let x = t_u1t(f);
    let hi = f.policy.high;
    let mut sq = DenseMatrix::zeros_in(f.s.rows(), k, hi);
    for j in 0..k {
        let col = sq.col_mut(j);
        col[j] = 1.0;
        let c: Vec<f64> = x.col(j).to_vec();
        sub_u_times(&f.s, &c, col, hi);
    }
    sq
}

/// Least-squares coefficients `R^{-1}·(P_k⋯P_1·b)[..k]`.
///
/// Minimises `‖Ψ(b − W·x)‖` over `x`.
pub fn lsq_via_implicit_q(f: &RHQRFactors, b: &[f64]) -> Result<Vec<f64>> {
    let k = f.ncols();
    if b.len() != f.u.rows() {
        return Err(shape_err(format!("rhs has length {}, expected {}", b.len(), f.u.rows())));
    }
    let (hi, lo) = (f.policy.high, f.policy.low);
    let bl: Vec<f64> = b.iter().map(|&v| lo.round(v)).collect();
    let y = f.psi.apply_vec(&bl, lo);
    let c = compact_coeffs(&f.s, &f.t, k, true, &y, hi);
    let mut top = bl[..k].to_vec();
    for (col, &cc) in c.iter().enumerate() {
        for (i, t) in top.iter_mut().enumerate() {
            *t = hi.round(*t - hi.round(cc * f.u.get(i, col)));
        }
    }
    let rhs = DenseMatrix::from_col_major_in(k, 1, top, hi)?;
    Ok(upper_tri_solve(&f.r, &rhs, hi)?.into_data())
}
