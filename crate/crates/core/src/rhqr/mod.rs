//! Randomized Householder QR.
//!
//! A randomized reflector is `P(u, Ψ) = I − β·u·(Ψu)ᵗ·Ψ` with
//! `Ψ = [I_m; Ω]`. Products of reflectors are kept in compact form
//! `I − U·T·SᵗΨ` with `S = ΨU`, and `R` is such that `W = Q·R` where `ΨQ` has
//! orthonormal columns.

mod block;
mod compact;
mod factors;
mod left;
mod rec;
mod right;
mod vector;

pub use block::{rhqr_block, BlockFactors, Panel, DEFAULT_PANEL_WIDTH};
pub use compact::{apply_reflectors_compact, t_factor_from_sketches};
pub use factors::{lsq_via_implicit_q, sketch_q, thin_q, RHQRFactors};
pub use left::rhqr_left;
pub use rec::rec_rhqr;
pub use right::rhqr_right;
pub use vector::{breakdown_threshold, rh_vector, HouseholderStep, StepInfo};

pub(crate) use compact::{apply_compact_vec, compact_coeffs, extend_t, sub_u_times, tri_mul, tri_tr_mul};

use crate::la::PrecisionPolicy;

/// Normalisation of each Householder vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scaling {
    /// `‖s‖ = √2`, so `β = 1`.
    #[default]
    SqrtTwo,
    /// The pivot entry of `u` equals one.
    UnitDiagonal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RhqrOptions {
    pub scaling: Scaling,
    pub policy: PrecisionPolicy,
}

impl RhqrOptions {
    pub fn with_policy(policy: PrecisionPolicy) -> Self {
        RhqrOptions { policy, ..Default::default() }
    }
}
