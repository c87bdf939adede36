use std::sync::Arc;

use super::{Sketch, SketchOperator};
use crate::error::{Error, Result};
use crate::la::Precision;

/// The operator `Ψ = [I_m ; Ω]` acting on `R^n` with `Ω: R^{n−m} → R^ℓ`.
///
/// The first `m` output coordinates are copies of the first `m` inputs.
#[derive(Clone, Debug)]
pub struct EmbeddedSketch {
    m: usize,
    omega: Arc<SketchOperator>,
}

impl EmbeddedSketch {
    pub fn new(m: usize, omega: SketchOperator) -> Self {
        Self::from_shared(m, Arc::new(omega))
    }

    pub fn from_shared(m: usize, omega: Arc<SketchOperator>) -> Self {
        EmbeddedSketch { m, omega }
    }

    /// Identity block size.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega(&self) -> &SketchOperator {
        &self.omega
    }

    pub fn ell(&self) -> usize {
        self.omega.output_dim()
    }

    /// Fail unless the operator fits an `n`-row matrix with `cols` columns.
    pub fn check_fits(&self, n: usize, cols: usize) -> Result<()> {
        if n != self.input_dim() {
            return Err(Error::Shape(format!(
                "embedding acts on R^{} but the matrix has {n} rows",
                self.input_dim()
            )));
        }
        if cols > self.m {
            return Err(Error::InvalidParameter(format!(
                "{cols} columns exceed the identity block of size {}",
                self.m
            )));
        }
        Ok(())
    }
}

impl Sketch for EmbeddedSketch {
    fn input_dim(&self) -> usize {
        self.m + self.omega.input_dim()
    }

    fn output_dim(&self) -> usize {
        self.m + self.omega.output_dim()
    }

    fn apply_vec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        assert_eq!(x.len(), self.input_dim(), "embedded sketch input length");
        let mut y = Vec::with_capacity(self.output_dim());
        y.extend_from_slice(&x[..self.m]);
        y.extend(self.omega.apply_vec(&x[self.m..], p));
        y
    }
}
