use super::compact::t_factor_from_sketches;
use super::left::with_column;
use super::vector::rh_vector;
use super::{RHQRFactors, RhqrOptions};
use crate::error::Result;
use crate::la::kernels::{axpy, dot};
use crate::la::DenseMatrix;
use crate::sketch::{EmbeddedSketch, Sketch};

/// Right-looking randomized Householder QR.
///
/// The trailing block is sketched afresh at every step and updated with a
/// rank-one correction; `T` is assembled at the end from the sketches.
pub fn rhqr_right(w: &DenseMatrix, psi: &EmbeddedSketch, opts: &RhqrOptions) -> Result<RHQRFactors> {
    psi.check_fits(w.rows(), w.cols())?;
    let (n, k) = w.shape();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut a = w.rounded_to(lo);
    let mut u = DenseMatrix::zeros_in(n, k, lo);
    let mut s = DenseMatrix::zeros_in(psi.output_dim(), k, hi);
    let mut r = DenseMatrix::zeros_in(k, k, hi);
    let mut steps = Vec::with_capacity(k);
    for j in 0..k {
        let ys: Vec<Vec<f64>> = (j..k).map(|c| psi.apply_vec(a.col(c), lo)).collect();
        let step = rh_vector(a.col(j), &ys[0], j, opts.scaling, &opts.policy).map_err(|e| with_column(e, j))?;
        for i in 0..j {
            r.set(i, j, a.get(i, j));
        }
        r.set(j, j, step.r_diag());
        for c in (j + 1)..k {
            let coef = hi.round(step.beta * dot(hi, &step.s, &ys[c - j]));
            axpy(lo, -lo.round(coef), &step.u, a.col_mut(c));
        }
        u.col_mut(j).copy_from_slice(&step.u);
        s.col_mut(j).copy_from_slice(&step.s);
        steps.push(step.info());
    }
    let t = t_factor_from_sketches(&s, hi)?;
    Ok(RHQRFactors { u, s, t, r, scaling: opts.scaling, psi: psi.clone(), steps, policy: opts.policy })
}
