use crate::la::{CscMatrix, DenseMatrix, Precision};

/// A square matrix accessed only through products with vectors.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> Vec<f64>;
    /// `‖A‖_F`, used to normalise the Arnoldi relation error.
    fn frobenius_norm(&self) -> f64;
}

impl LinearOperator for DenseMatrix {
    fn dim(&self) -> usize {
        assert_eq!(self.rows(), self.cols(), "operator must be square");
        self.rows()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.matvec(x, Precision::Double)
    }
    fn frobenius_norm(&self) -> f64 {
        DenseMatrix::frobenius_norm(self)
    }
}

impl LinearOperator for CscMatrix {
    fn dim(&self) -> usize {
        assert_eq!(self.rows(), self.cols(), "operator must be square");
        self.rows()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows()];
        self.matvec_into(x, &mut y);
        y
    }
    fn frobenius_norm(&self) -> f64 {
        CscMatrix::frobenius_norm(self)
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (**self).apply(x)
    }
    fn frobenius_norm(&self) -> f64 {
        (**self).frobenius_norm()
    }
}
