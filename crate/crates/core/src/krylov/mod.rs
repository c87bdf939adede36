//! Arnoldi and GMRES built on randomized Householder reflectors, plus
//! randomized and modified Gram-Schmidt variants for comparison.

mod arnoldi;
mod gmres;
mod lstsq;
mod operator;

pub use arnoldi::{arnoldi_relation_error, rhqr_arnoldi, KrylovBundle};
pub use gmres::{mgs_gmres, rgs_gmres, rhqr_gmres, GmresResult};
pub use lstsq::{hessenberg_lstsq, HessenbergSolution};
pub use operator::LinearOperator;

/// Relative size of the next basis direction at which Arnoldi stops with an
/// invariant subspace: `8·√n·u` of the vector it was computed from.
pub(crate) fn happy_breakdown_tol(n: usize, u: f64) -> f64 {
    8.0 * (n as f64).sqrt() * u
}
