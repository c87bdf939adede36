//! Randomized Householder QR and friends.
//!
//! The crate is organised by subsystem:
//!
//! * [`la`]: dense matrices with emulated storage precision, triangular
//!   solves and the metrics used by experiments.
//! * [`sketch`]: Gaussian, SRHT and sparse-sign embeddings, the embedded
//!   `[I; Ω]` operator and an empirical embedding certifier.
//! * [`rhqr`]: randomized Householder vectors, compact WY algebra and the
//!   right-looking, left-looking, block and reconstructed factorizations.
//! * [`trim`]: the variant whose reflectors only sketch trailing coordinates.
//! * [`baselines`]: Householder QR, Gram-Schmidt variants, randomized
//!   Gram-Schmidt and randomized Cholesky QR.
//! * [`krylov`]: Arnoldi and GMRES built on randomized reflectors.

pub mod baselines;
pub mod error;
pub mod krylov;
pub mod la;
pub mod rhqr;
pub mod sketch;
pub mod trim;

pub use error::{BreakdownKind, Error, Result};
pub use la::{DenseMatrix, Precision, PrecisionPolicy};
