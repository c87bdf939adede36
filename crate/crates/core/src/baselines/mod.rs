//! Reference orthogonalization methods.

mod blas2_rgs;
mod gram_schmidt;
mod householder;
mod pivoted;
mod rcholqr;
mod rgs;

pub use blas2_rgs::{blas2_rgs, Blas2Rgs};
pub use gram_schmidt::{cgs, mgs};
pub use householder::{householder_factor, householder_qr, HouseholderFactors};
pub use pivoted::pivoted_lstsq;
pub use rcholqr::rand_cholesky_qr;
pub use rgs::rgs;

use crate::la::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Householder,
    ClassicalGramSchmidt,
    ModifiedGramSchmidt,
    RandomizedGramSchmidt,
    Blas2RandomizedGramSchmidt,
    RandomizedCholeskyQr,
}

/// Compact Householder data attached to a [`QRResult`].
#[derive(Clone, Debug)]
pub struct HouseholderAux {
    pub u: DenseMatrix,
    pub t: DenseMatrix,
}

#[derive(Clone, Debug)]
pub struct QRResult {
    pub q: Option<DenseMatrix>,
    pub r: DenseMatrix,
    pub aux: Option<HouseholderAux>,
    pub method: Method,
}

impl QRResult {
    /// The explicit `Q`; every method in this module produces one.
    pub fn q(&self) -> &DenseMatrix {
        self.q.as_ref().expect("method produced an explicit Q")
    }
}
