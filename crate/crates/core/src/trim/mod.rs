//! Randomized Householder QR with reflectors that sketch only trailing coordinates.
//!
//! The reflector for column `j` is `H(u, Ω, j) = I − β·u·(Ωu)ᵗ·[0 Ω_{j:n}]`.
//! It needs the leading columns of `Ω` to have unit norm, which
//! [`normalize_leading_columns`] arranges. The forward product
//! `H_1⋯H_k = I − U·T·𝒰` and the reverse product `H_k⋯H_1 = I − U·T̃ᵗ·𝒰`
//! share `𝒰 = ut((ΩU)ᵗΩ)`, applied through the table `L_{ik} = ⟨Ωu_i, Ωe_k⟩`.

mod factors;
mod normalize;
mod vector;

pub use factors::{trim_rhqr_left, trim_rhqr_right, trim_thin_q, TrimFactors};
pub use normalize::{normalize_leading_columns, NormalizedSketch};
pub use vector::{trim_rh_vector, TrimStep};
