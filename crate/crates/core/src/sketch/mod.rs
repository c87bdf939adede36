//! Oblivious subspace embeddings and the `[I_m; Ω]` operator.

mod certify;
mod embedded;
mod fwht;
mod operator;

pub use certify::check_embedding;
pub use embedded::EmbeddedSketch;
pub use fwht::{fwht, fwht_in_place};
pub use operator::{make_sketch, SketchKind, SketchOperator};

use crate::error::{shape_err, Result};
use crate::la::{DenseMatrix, Precision};

/// A linear map `R^n → R^ℓ` applied column by column.
pub trait Sketch {
    fn input_dim(&self) -> usize;
    fn output_dim(&self) -> usize;

    /// `Θx`, with arithmetic rounded to `p`.
    fn apply_vec(&self, x: &[f64], p: Precision) -> Vec<f64>;

    /// `ΘX`, tagged with precision `p`.
    fn apply(&self, x: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
        if x.rows() != self.input_dim() {
            return Err(shape_err(format!(
                "sketch expects {} rows, got {}",
                self.input_dim(),
                x.rows()
            )));
        }
        let l = self.output_dim();
        let mut out = DenseMatrix::zeros_in(l, x.cols(), p);
        for j in 0..x.cols() {
            let y = self.apply_vec(x.col(j), p);
            out.col_mut(j).copy_from_slice(&y);
        }
        Ok(out)
    }
}

impl<S: Sketch + ?Sized> Sketch for &S {
    fn input_dim(&self) -> usize {
        (**self).input_dim()
    }
    fn output_dim(&self) -> usize {
        (**self).output_dim()
    }
    fn apply_vec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        (**self).apply_vec(x, p)
    }
}
