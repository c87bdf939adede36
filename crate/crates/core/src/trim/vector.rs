use super::NormalizedSketch;
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::nrm2;
use crate::la::PrecisionPolicy;
use crate::rhqr::Scaling;
use crate::sketch::Sketch;

/// A modified randomized Householder vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TrimStep {
    pub j: usize,
    /// Householder vector, zero before index `j`.
    pub u: Vec<f64>,
    /// `Ωu`.
    pub s: Vec<f64>,
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

impl TrimStep {
    pub fn r_diag(&self) -> f64 {
        -self.sigma * self.rho
    }
}

/// Reflector `H(u, Ω, j)` mapping `w` to `w[..j] ⊘ (−σρ) ⊘ 0`.
///
/// `ρ = ‖Ω·(0 ⊘ w[j..])‖` and, unlike the embedded variant, `σ` is the sign of
/// `w[j]` itself. Requires `‖Ωe_j‖ = 1`.
pub fn trim_rh_vector(
    w: &[f64],
    j: usize,
    omega: &NormalizedSketch,
    scaling: Scaling,
    policy: &PrecisionPolicy,
) -> Result<TrimStep> {
    let (hi, lo) = (policy.high, policy.low);
    assert!(j < omega.m(), "elimination index beyond the normalised columns");
    let mut v = vec![0.0; w.len()];
    v[j..].iter_mut().zip(&w[j..]).for_each(|(d, &x)| *d = lo.round(x));
    let z = omega.apply_vec(&v, lo);
    let rho = nrm2(hi, &z);
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Breakdown { column: j, kind: BreakdownKind::ZeroTail });
    }
    let sigma = if w[j] >= 0.0 { 1.0 } else { -1.0 };
    v[j] = lo.round(v[j] + sigma * rho);
    let vs = omega.apply_vec(&v, lo);
    let vs_norm = nrm2(hi, &vs);
    if !(vs_norm > 0.0) {
        return Err(Error::Breakdown { column: j, kind: BreakdownKind::Cancellation });
    }
    let (c, beta) = match scaling {
        Scaling::SqrtTwo => (hi.round(std::f64::consts::SQRT_2 / vs_norm), 1.0),
        Scaling::UnitDiagonal => {
            let c = hi.round(1.0 / v[j]);
            let sn = hi.round(vs_norm * c.abs());
            (c, hi.round(2.0 / hi.round(sn * sn)))
        }
    };
    let mut u: Vec<f64> = v.iter().map(|&x| lo.round(x * c)).collect();
    if scaling == Scaling::UnitDiagonal {
        u[j] = 1.0;
    }
    let s: Vec<f64> = vs.iter().map(|&x| hi.round(x * c)).collect();
    Ok(TrimStep { j, u, s, sigma, rho, beta })
}
