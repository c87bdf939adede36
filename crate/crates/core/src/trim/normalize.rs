use std::sync::Arc;

use crate::error::{Error, Result};
use crate::la::kernels::norm;
use crate::la::{DenseMatrix, Precision};
use crate::sketch::{Sketch, SketchOperator};

/// `Ω·diag(d_1, …, d_m, 1, …, 1)` with `d_j = 1/‖Ωe_j‖`.
#[derive(Clone, Debug)]
pub struct NormalizedSketch {
    inner: Arc<SketchOperator>,
    scales: Vec<f64>,
}

/// Rescale the first `m` columns of `omega` to unit norm.
///
/// Columns already of unit norm (within a few ulps) keep a scale of exactly one.
pub fn normalize_leading_columns(omega: &SketchOperator, m: usize) -> Result<NormalizedSketch> {
    let n = omega.input_dim();
    if m > n {
        return Err(Error::InvalidParameter(format!("cannot normalise {m} columns of an operator on R^{n}")));
    }
    let mut e = vec![0.0; n];
    let mut scales = Vec::with_capacity(m);
    for j in 0..m {
        e[j] = 1.0;
        let c = omega.apply_vec(&e, Precision::Double);
        e[j] = 0.0;
        let nrm = norm(&c);
        if nrm == 0.0 {
            return Err(Error::InvalidParameter(format!("column {j} of the sketch is zero")));
        }
        scales.push(if (nrm - 1.0).abs() <= 4.0 * f64::EPSILON { 1.0 } else { 1.0 / nrm });
    }
    Ok(NormalizedSketch { inner: Arc::new(omega.clone()), scales })
}

impl NormalizedSketch {
    /// Number of normalised leading columns.
    pub fn m(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn inner(&self) -> &SketchOperator {
        &self.inner
    }

    /// `[Ωe_1, …, Ωe_k]` of the normalised operator, in precision `p`.
    pub fn leading_columns(&self, k: usize, p: Precision) -> DenseMatrix {
        let n = self.input_dim();
        let mut out = DenseMatrix::zeros_in(self.output_dim(), k, p);
        let mut e = vec![0.0; n];
        for j in 0..k {
            e[j] = 1.0;
            let c = self.apply_vec(&e, p);
            e[j] = 0.0;
            out.col_mut(j).copy_from_slice(&c);
        }
        out
    }
}

impl Sketch for NormalizedSketch {
    fn input_dim(&self) -> usize {
        self.inner.input_dim()
    }

    fn output_dim(&self) -> usize {
        self.inner.output_dim()
    }

    fn apply_vec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        if self.scales.iter().all(|&d| d == 1.0) {
            return self.inner.apply_vec(x, p);
        }
        let mut xs = x.to_vec();
        for (v, &d) in xs.iter_mut().zip(&self.scales) {
            *v = p.round(*v * d);
        }
        self.inner.apply_vec(&xs, p)
    }
}
