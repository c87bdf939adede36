use super::normalize::{normalize_leading_columns, NormalizedSketch};
use super::vector::trim_rh_vector;
use crate::error::{Error, Result};
use crate::la::kernels::{axpy, dot};
use crate::la::{DenseMatrix, Precision, PrecisionPolicy};
use crate::rhqr::{tri_mul, tri_tr_mul, RhqrOptions, Scaling, StepInfo};
use crate::sketch::{Sketch, SketchOperator};

/// Output of a trimmed randomized Householder factorization of `n × k` `W`.
#[derive(Clone, Debug)]
pub struct TrimFactors {
    /// `n × k`, zero above the diagonal.
    pub u: DenseMatrix,
    /// `ΩU`, `ℓ × k`.
    pub s: DenseMatrix,
    /// Factor of the forward product `H_1⋯H_k = I − U·T·𝒰`.
    pub t: DenseMatrix,
    /// Factor of the reverse product `H_k⋯H_1 = I − U·T̃ᵗ·𝒰`.
    pub t_tilde: DenseMatrix,
    pub r: DenseMatrix,
    /// `[Ωe_1, …, Ωe_k]`.
    pub e: DenseMatrix,
    /// Strictly lower-triangular `L_{ik} = ⟨s_i, Ωe_k⟩`, `k < i`.
    pub l: DenseMatrix,
    pub omega: NormalizedSketch,
    pub steps: Vec<StepInfo>,
    pub scaling: Scaling,
    pub policy: PrecisionPolicy,
}

/// Growing state shared by both orientations.
struct Builder {
    u: DenseMatrix,
    s: DenseMatrix,
    t: DenseMatrix,
    tt: DenseMatrix,
    l: DenseMatrix,
    e: DenseMatrix,
    hi: Precision,
}

impl Builder {
    fn new(n: usize, k: usize, omega: &NormalizedSketch, policy: &PrecisionPolicy) -> Self {
        let ell = omega.output_dim();
        Builder {
            u: DenseMatrix::zeros_in(n, k, policy.low),
            s: DenseMatrix::zeros_in(ell, k, policy.high),
            t: DenseMatrix::zeros_in(k, k, policy.high),
            tt: DenseMatrix::zeros_in(k, k, policy.high),
            l: DenseMatrix::zeros_in(k, k, policy.high),
            e: omega.leading_columns(k, policy.high),
            hi: policy.high,
        }
    }

    /// Record reflector `j` and extend `L`, `T` and `T̃`.
    fn push(&mut self, j: usize, u: &[f64], s: &[f64], beta: f64) {
        let hi = self.hi;
        self.u.col_mut(j).copy_from_slice(u);
        self.s.col_mut(j).copy_from_slice(s);
        for k in 0..j {
            let v = dot(hi, s, self.e.col(k));
            self.l.set(j, k, v);
        }
        let ss: Vec<f64> = (0..j).map(|i| dot(hi, self.s.col(i), s)).collect();
        // t_j = −β·T·Sᵗs_j
        let tv = tri_mul(&self.t, &ss, hi);
        // t̃_j = −β·T̃·([0 Ω_{j:n}]U)ᵗs_j
        let masked: Vec<f64> = (0..j)
            .map(|i| {
                let mut acc = ss[i];
                for k in i..j {
                    acc = hi.round(acc - hi.round(self.u.get(k, i) * self.l.get(j, k)));
                }
                acc
            })
            .collect();
        let ttv = tri_mul(&self.tt, &masked, hi);
        let tcol = self.t.col_mut(j);
        for (d, x) in tcol[..j].iter_mut().zip(&tv) {
            *d = hi.round(-beta * x);
        }
        tcol[j] = beta;
        let ttcol = self.tt.col_mut(j);
        for (d, x) in ttcol[..j].iter_mut().zip(&ttv) {
            *d = hi.round(-beta * x);
        }
        ttcol[j] = beta;
    }

    /// `ut((ΩU)ᵗΩ)·x` over the first `k` reflectors, i.e. `Sᵗ(Ωx) − L·x[..k]`.
    fn ut_apply(&self, k: usize, omega: &NormalizedSketch, x: &[f64], policy: &PrecisionPolicy) -> Vec<f64> {
        let hi = policy.high;
        let ox = omega.apply_vec(x, policy.low);
        (0..k)
            .map(|i| {
                let mut acc = dot(hi, self.s.col(i), &ox);
                for c in 0..i {
                    acc = hi.round(acc - hi.round(self.l.get(i, c) * x[c]));
                }
                acc
            })
            .collect()
    }

    fn finish(self, r: DenseMatrix, omega: NormalizedSketch, steps: Vec<StepInfo>, opts: &RhqrOptions) -> TrimFactors {
        TrimFactors {
            u: self.u,
            s: self.s,
            t: self.t,
            t_tilde: self.tt,
            r,
            e: self.e,
            l: self.l,
            omega,
            steps,
            scaling: opts.scaling,
            policy: opts.policy,
        }
    }
}

fn prepare(w: &DenseMatrix, omega: &SketchOperator) -> Result<NormalizedSketch> {
    if omega.input_dim() != w.rows() {
        return Err(Error::Shape(format!(
            "sketch acts on R^{}, matrix has {} rows",
            omega.input_dim(),
            w.rows()
        )));
    }
    normalize_leading_columns(omega, w.cols())
}

/// Right-looking trimmed randomized Householder QR.
///
/// `omega` is an `ℓ × n` operator; its first `k` columns are normalised
/// automatically.
pub fn trim_rhqr_right(w: &DenseMatrix, omega: &SketchOperator, opts: &RhqrOptions) -> Result<TrimFactors> {
    let om = prepare(w, omega)?;
    trim_right_with(w, om, opts)
}

/// Left-looking trimmed randomized Householder QR.
pub fn trim_rhqr_left(w: &DenseMatrix, omega: &SketchOperator, opts: &RhqrOptions) -> Result<TrimFactors> {
    let om = prepare(w, omega)?;
    trim_left_with(w, om, opts)
}

fn trim_right_with(w: &DenseMatrix, om: NormalizedSketch, opts: &RhqrOptions) -> Result<TrimFactors> {
    let (n, k) = w.shape();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut a = w.rounded_to(lo);
    let mut b = Builder::new(n, k, &om, &opts.policy);
    let mut r = DenseMatrix::zeros_in(k, k, hi);
    let mut steps = Vec::with_capacity(k);
    let mut masked = vec![0.0; n];
    for j in 0..k {
        let step = trim_rh_vector(a.col(j), j, &om, opts.scaling, &opts.policy)?;
        for i in 0..j {
            r.set(i, j, a.get(i, j));
        }
        r.set(j, j, step.r_diag());
        for c in (j + 1)..k {
            masked[..j].iter_mut().for_each(|v| *v = 0.0);
            masked[j..].copy_from_slice(&a.col(c)[j..]);
            let x = om.apply_vec(&masked, lo);
            let coef = hi.round(step.beta * dot(hi, &step.s, &x));
            axpy(lo, -lo.round(coef), &step.u, a.col_mut(c));
        }
        b.push(j, &step.u, &step.s, step.beta);
        steps.push(StepInfo { sigma: step.sigma, rho: step.rho, beta: step.beta });
    }
    Ok(b.finish(r, om, steps, opts))
}

fn trim_left_with(w: &DenseMatrix, om: NormalizedSketch, opts: &RhqrOptions) -> Result<TrimFactors> {
    let (n, k) = w.shape();
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut b = Builder::new(n, k, &om, &opts.policy);
    let mut r = DenseMatrix::zeros_in(k, k, hi);
    let mut steps = Vec::with_capacity(k);
    for j in 0..k {
        let mut v: Vec<f64> = w.col(j).iter().map(|&x| lo.round(x)).collect();
        if j > 0 {
            // w ← w − U·T̃ᵗ·ut((ΩU)ᵗΩ)·w
            let c = b.ut_apply(j, &om, &v, &opts.policy);
            let coef = tri_tr_mul(&b.tt, &c, hi);
            for (i, &cc) in coef.iter().enumerate() {
                axpy(lo, -lo.round(cc), b.u.col(i), &mut v);
            }
        }
        let step = trim_rh_vector(&v, j, &om, opts.scaling, &opts.policy)?;
        for i in 0..j {
            r.set(i, j, v[i]);
        }
        r.set(j, j, step.r_diag());
        b.push(j, &step.u, &step.s, step.beta);
        steps.push(StepInfo { sigma: step.sigma, rho: step.rho, beta: step.beta });
    }
    Ok(b.finish(r, om, steps, opts))
}

impl TrimFactors {
    pub fn ncols(&self) -> usize {
        self.u.cols()
    }

    /// `ut((ΩU)ᵗΩ)·x`.
    pub fn ut_apply(&self, x: &[f64]) -> Vec<f64> {
        let hi = self.policy.high;
        let ox = self.omega.apply_vec(x, self.policy.low);
        (0..self.ncols())
            .map(|i| {
                let mut acc = dot(hi, self.s.col(i), &ox);
                for c in 0..i {
                    acc = hi.round(acc - hi.round(self.l.get(i, c) * x[c]));
                }
                acc
            })
            .collect()
    }

    /// Apply the forward product `H_1⋯H_k` (`reverse = false`) or the
    /// reverse product `H_k⋯H_1` (`reverse = true`) to `x`.
    pub fn apply(&self, x: &[f64], reverse: bool) -> Vec<f64> {
        let (hi, lo) = (self.policy.high, self.policy.low);
        let c = self.ut_apply(x);
        let coef = if reverse { tri_tr_mul(&self.t_tilde, &c, hi) } else { tri_mul(&self.t, &c, hi) };
        let mut out: Vec<f64> = x.iter().map(|&v| lo.round(v)).collect();
        for (i, &cc) in coef.iter().enumerate() {
            axpy(lo, -lo.round(cc), self.u.col(i), &mut out);
        }
        out
    }
}

/// `Q = [I_k; 0] − U·T·ut(SᵗE)`, so that `W = Q·R`.
pub fn trim_thin_q(f: &TrimFactors) -> DenseMatrix {
    let k = f.ncols();
    let (hi, lo) = (f.policy.high, f.policy.low);
    let ste = f.s.tr_matmul(&f.e, hi).upper_triangle();
    let x = f.t.matmul(&ste, hi);
    let mut q = DenseMatrix::zeros_in(f.u.rows(), k, lo);
    for j in 0..k {
        let xj = x.col(j).to_vec();
        let col = q.col_mut(j);
        col[j] = 1.0;
        for (i, &c) in xj.iter().enumerate() {
            axpy(lo, -lo.round(c), f.u.col(i), col);
        }
    }
    q
}
