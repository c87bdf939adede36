use super::compact::{apply_compact_vec, extend_t};
use super::vector::rh_vector;
use super::{RHQRFactors, RhqrOptions, StepInfo};
use crate::error::{Error, Result};
use crate::la::DenseMatrix;
use crate::sketch::{EmbeddedSketch, Sketch};

/// Left-looking factorization of a column panel whose first column is
/// eliminated at row `offset`. Columns must already carry the effect of all
/// reflectors with index below `offset`.
pub(crate) struct PanelResult {
    pub u: DenseMatrix,
    pub s: DenseMatrix,
    pub t: DenseMatrix,
    /// Column `c` of the panel's `R` part, of length `offset + c + 1`.
    pub r_cols: Vec<Vec<f64>>,
    pub steps: Vec<StepInfo>,
}

pub(crate) fn factor_panel_left(
    panel: &DenseMatrix,
    psi: &EmbeddedSketch,
    offset: usize,
    opts: &RhqrOptions,
) -> Result<PanelResult> {
    let (n, b) = panel.shape();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut u = DenseMatrix::zeros_in(n, b, lo);
    let mut s = DenseMatrix::zeros_in(psi.output_dim(), b, hi);
    let mut t = DenseMatrix::zeros_in(b, b, hi);
    let mut r_cols = Vec::with_capacity(b);
    let mut steps = Vec::with_capacity(b);
    for c in 0..b {
        let g = offset + c;
        let mut w: Vec<f64> = panel.col(c).iter().map(|&v| lo.round(v)).collect();
        apply_compact_vec(&u, &s, &t, c, true, &mut w, psi, &opts.policy);
        let y = psi.apply_vec(&w, lo);
        let step = rh_vector(&w, &y, g, opts.scaling, &opts.policy).map_err(|e| with_column(e, g))?;
        let mut rc = w[..g].to_vec();
        rc.push(step.r_diag());
        r_cols.push(rc);
        u.col_mut(c).copy_from_slice(&step.u);
        s.col_mut(c).copy_from_slice(&step.s);
        extend_t(&mut t, &s, c, step.beta, hi);
        steps.push(step.info());
    }
    Ok(PanelResult { u, s, t, r_cols, steps })
}

pub(crate) fn with_column(e: Error, column: usize) -> Error {
    match e {
        Error::Breakdown { kind, .. } => Error::Breakdown { column, kind },
        other => other,
    }
}

/// Left-looking randomized Householder QR.
///
/// Each column is brought up to date with the compact form of the previous
/// reflectors, re-sketched, and eliminated; `T` grows by one column per step.
/// `psi` must act on `R^n` with an identity block at least as wide as `W`.
pub fn rhqr_left(w: &DenseMatrix, psi: &EmbeddedSketch, opts: &RhqrOptions) -> Result<RHQRFactors> {
    psi.check_fits(w.rows(), w.cols())?;
    let k = w.cols();
    let p = factor_panel_left(w, psi, 0, opts)?;
    let mut r = DenseMatrix::zeros_in(k, k, opts.policy.high);
    for (j, rc) in p.r_cols.iter().enumerate() {
        r.col_mut(j)[..rc.len()].copy_from_slice(rc);
    }
    Ok(RHQRFactors {
        u: p.u,
        s: p.s,
        t: p.t,
        r,
        scaling: opts.scaling,
        psi: psi.clone(),
        steps: p.steps,
        policy: opts.policy,
    })
}
