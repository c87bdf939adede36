use super::compact::{compact_coeffs, sub_u_times};
use super::left::factor_panel_left;
use super::{RHQRFactors, RhqrOptions, Scaling, StepInfo};
use crate::error::{Error, Result};
use crate::la::{DenseMatrix, PrecisionPolicy};
use crate::sketch::{EmbeddedSketch, Sketch};

pub const DEFAULT_PANEL_WIDTH: usize = 32;

/// Compact factors of one panel of columns `start..start + u.cols()`.
#[derive(Clone, Debug)]
pub struct Panel {
    pub start: usize,
    pub u: DenseMatrix,
    pub s: DenseMatrix,
    pub t: DenseMatrix,
}

#[derive(Clone, Debug)]
pub struct BlockFactors {
    pub panels: Vec<Panel>,
    pub r: DenseMatrix,
    pub steps: Vec<StepInfo>,
    pub scaling: Scaling,
    pub psi: EmbeddedSketch,
    pub policy: PrecisionPolicy,
}

impl BlockFactors {
    /// Merge the panels into a single compact form.
    ///
    /// Blocks combine as `T = [T₁, −T₁·S₁ᵗS₂·T₂; 0, T₂]`.
    pub fn to_factors(&self) -> RHQRFactors {
        let hi = self.policy.high;
        let k = self.r.cols();
        let n = self.psi.input_dim();
        let mut u = DenseMatrix::zeros_in(n, k, self.policy.low);
        let mut s = DenseMatrix::zeros_in(self.psi.output_dim(), k, hi);
        let mut t = DenseMatrix::zeros_in(k, k, hi);
        for p in &self.panels {
            let b = p.u.cols();
            u.set_block(0, p.start, &p.u);
            s.set_block(0, p.start, &p.s);
            t.set_block(p.start, p.start, &p.t);
            if p.start > 0 {
                let s_prev = s.columns(0..p.start);
                let t_prev = t.block(0..p.start, 0..p.start);
                let cross = s_prev.tr_matmul(&p.s, hi);
                let off = t_prev.matmul(&cross, hi).matmul(&p.t, hi).scaled(-1.0);
                t.set_block(0, p.start, &off);
            }
            debug_assert_eq!(p.start + b <= k, true);
        }
        RHQRFactors {
            u,
            s,
            t,
            r: self.r.clone(),
            scaling: self.scaling,
            psi: self.psi.clone(),
            steps: self.steps.clone(),
            policy: self.policy,
        }
    }
}

/// Block left-looking randomized Householder QR with panels of `width` columns.
///
/// Each panel is first updated by the compact forms of all earlier panels and
/// then factored column by column. A final panel narrower than `width` is
/// factored as is.
pub fn rhqr_block(
    w: &DenseMatrix,
    psi: &EmbeddedSketch,
    width: usize,
    opts: &RhqrOptions,
) -> Result<BlockFactors> {
    if width == 0 {
        return Err(Error::InvalidParameter("panel width must be positive".into()));
    }
    psi.check_fits(w.rows(), w.cols())?;
    let k = w.cols();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut panels: Vec<Panel> = Vec::new();
    let mut r = DenseMatrix::zeros_in(k, k, hi);
    let mut steps = Vec::with_capacity(k);
    let mut start = 0;
    while start < k {
        let end = (start + width).min(k);
        let mut wp = w.columns(start..end).rounded_to(lo);
        for prev in &panels {
            for c in 0..wp.cols() {
                let col = wp.col_mut(c);
                let y = psi.apply_vec(col, lo);
                let coef = compact_coeffs(&prev.s, &prev.t, prev.u.cols(), true, &y, hi);
                sub_u_times(&prev.u, &coef, col, lo);
            }
        }
        let res = factor_panel_left(&wp, psi, start, opts)?;
        for (c, rc) in res.r_cols.iter().enumerate() {
            r.col_mut(start + c)[..rc.len()].copy_from_slice(rc);
        }
        steps.extend(res.steps);
        panels.push(Panel { start, u: res.u, s: res.s, t: res.t });
        start = end;
    }
    Ok(BlockFactors { panels, r, steps, scaling: opts.scaling, psi: psi.clone(), policy: opts.policy })
}
