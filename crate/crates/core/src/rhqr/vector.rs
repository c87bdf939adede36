use super::Scaling;
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::nrm2;
use crate::la::PrecisionPolicy;

/// A randomized Householder vector together with its sketch.
#[derive(Clone, Debug, PartialEq)]
pub struct HouseholderStep {
    /// Elimination index (zero-based).
    pub j: usize,
    /// Householder vector; entries before `j` are zero.
    pub u: Vec<f64>,
    /// Its sketch `Ψu`; entries before `j` are zero.
    pub s: Vec<f64>,
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

/// Scalars kept per column for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepInfo {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

impl HouseholderStep {
    pub fn info(&self) -> StepInfo {
        StepInfo { sigma: self.sigma, rho: self.rho, beta: self.beta }
    }

    /// Diagonal entry `−σρ` of `R` produced by this step.
    pub fn r_diag(&self) -> f64 {
        -self.sigma * self.rho
    }
}

/// Tail norms at or below this multiple of `‖Ψw‖` are treated as breakdown.
pub fn breakdown_threshold(policy: &PrecisionPolicy) -> f64 {
    8.0 * policy.high.unit_roundoff()
}

/// Build the reflector that maps `w` to `w[..j] ⊘ (−σρ) ⊘ 0`.
///
/// `y` must be `Ψw`. The sign `σ` follows `y[j]` (zero counts as positive),
/// `ρ = ‖y[j..]‖` and `γ = y[j] + σρ`.
pub fn rh_vector(
    w: &[f64],
    y: &[f64],
    j: usize,
    scaling: Scaling,
    policy: &PrecisionPolicy,
) -> Result<HouseholderStep> {
    let (hi, lo) = (policy.high, policy.low);
    assert!(j < w.len() && j < y.len(), "elimination index out of range");
    let ynorm = nrm2(hi, y);
    let rho = nrm2(hi, &y[j..]);
    if rho == 0.0 || rho <= breakdown_threshold(policy) * ynorm {
        return Err(Error::Breakdown { column: j, kind: BreakdownKind::ZeroTail });
    }
    let sigma = if y[j] >= 0.0 { 1.0 } else { -1.0 };
    let gamma = hi.round(y[j] + sigma * rho);
    if gamma.abs() < f64::MIN_POSITIVE {
        return Err(Error::Breakdown { column: j, kind: BreakdownKind::Cancellation });
    }
    let mut u = vec![0.0; w.len()];
    u[j..].copy_from_slice(&w[j..]);
    u[j] = lo.round(w[j] + sigma * rho);
    let mut s = vec![0.0; y.len()];
    s[j..].copy_from_slice(&y[j..]);
    s[j] = gamma;
    // 1/(ρ|γ|) equals 2/‖s‖² for either sign of σ.
    let mut beta = hi.round(1.0 / hi.round(rho * gamma.abs()));
    match scaling {
        Scaling::SqrtTwo => {
            let c = hi.round(beta.sqrt());
            for v in &mut u[j..] {
                *v = lo.round(*v * c);
            }
            for v in &mut s[j..] {
                *v = hi.round(*v * c);
            }
            beta = 1.0;
        }
        Scaling::UnitDiagonal => {
            for v in &mut u[j + 1..] {
                *v = lo.round(*v / gamma);
            }
            for v in &mut s[j + 1..] {
                *v = hi.round(*v / gamma);
            }
            u[j] = 1.0;
            s[j] = 1.0;
            beta = hi.round(gamma.abs() / rho);
        }
    }
    Ok(HouseholderStep { j, u, s, sigma, rho, beta })
}
