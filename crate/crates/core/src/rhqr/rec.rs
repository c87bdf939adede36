use super::{RHQRFactors, RhqrOptions};
use crate::baselines::householder_factor;
use crate::error::{BreakdownKind, Error, Result};
use crate::la::{right_tri_solve, DenseMatrix, PrecisionPolicy};
use crate::sketch::{EmbeddedSketch, Sketch};

/// Randomized Householder QR reconstructed from a Householder QR of `ΨW`.
///
/// With `Z = ΨW` factored as `Z = H·[R; 0]` (vectors `S`, factor `T`), the
/// randomized Householder vectors satisfy `U[..m] = S[..m]` and
/// `W[m..] = U[m..]·ut(Tᵗ·Sᵗ·Z)`, which is solved for `U[m..]`.
pub fn rec_rhqr(w: &DenseMatrix, psi: &EmbeddedSketch, opts: &RhqrOptions) -> Result<RHQRFactors> {
    psi.check_fits(w.rows(), w.cols())?;
    let (n, k) = w.shape();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let m = psi.m();
    let z = psi.apply(&w.rounded_to(lo), lo)?.rounded_to(hi);
    let hq = householder_factor(&z, opts.scaling, &PrecisionPolicy::uniform(hi))?;
    let s = hq.u;
    let t = hq.t;
    let stz = s.tr_matmul(&z, hi);
    let mmat = t.transpose().matmul(&stz, hi).upper_triangle();
    let w2 = w.block(m..n, 0..k).rounded_to(lo);
    let u2 = right_tri_solve(&w2, &mmat, lo).map_err(|e| match e {
        Error::SingularFactor { index } => Error::Breakdown { column: index, kind: BreakdownKind::Reconstruction },
        other => other,
    })?;
    let mut u = DenseMatrix::zeros_in(n, k, lo);
    u.set_block(0, 0, &s.block(0..m, 0..k));
    u.set_block(m, 0, &u2);
    Ok(RHQRFactors { u, s, t, r: hq.r, scaling: opts.scaling, psi: psi.clone(), steps: hq.steps, policy: opts.policy })
}
