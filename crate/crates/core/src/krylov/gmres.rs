use super::arnoldi::rhqr_arnoldi;
use super::lstsq::hessenberg_lstsq;
use super::{happy_breakdown_tol, LinearOperator};
use crate::baselines::pivoted_lstsq;
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::{axpy, dot, norm, nrm2};
use crate::la::{DenseMatrix, Precision, PrecisionPolicy};
use crate::rhqr::{apply_compact_vec, RhqrOptions};
use crate::sketch::{EmbeddedSketch, Sketch};

/// Result of a non-restarted GMRES run.
#[derive(Clone, Debug)]
pub struct GmresResult {
    pub x: Vec<f64>,
    pub x0: Vec<f64>,
    pub y: Vec<f64>,
    pub beta: f64,
    /// `(k+1) × k` Hessenberg matrix.
    pub h: DenseMatrix,
    /// `n × (k+1)` basis.
    pub basis: DenseMatrix,
    /// Least-squares residual after each iteration (sketched for randomized variants).
    pub resid_history: Vec<f64>,
    /// Krylov dimension reached.
    pub dim: usize,
    pub rank_deficient: bool,
}

impl GmresResult {
    /// Iterate `x_j = x₀ + Q_j·y_j` for `1 ≤ j ≤ dim`, solving the leading subproblem.
    pub fn iterate(&self, j: usize) -> Vec<f64> {
        assert!(j >= 1 && j <= self.dim);
        let sol = hessenberg_lstsq(&self.h.block(0..j + 1, 0..j), self.beta);
        let mut x = self.x0.clone();
        for (c, &yc) in sol.y.iter().enumerate() {
            axpy(Precision::Double, yc, self.basis.col(c), &mut x);
        }
        x
    }
}

fn check_dims(a: &dyn LinearOperator, b: &[f64], x0: &[f64]) -> Result<usize> {
    let n = a.dim();
    if b.len() != n || x0.len() != n {
        return Err(Error::Shape(format!("operator is {n}x{n} but vectors have lengths {} and {}", b.len(), x0.len())));
    }
    Ok(n)
}

fn initial_residual(a: &dyn LinearOperator, b: &[f64], x0: &[f64]) -> Vec<f64> {
    let ax = a.apply(x0);
    b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect()
}

/// GMRES on top of [`rhqr_arnoldi`]: minimises the sketched residual
/// `‖Ψ(b − A·x)‖` over `x₀ + K_m`.
///
/// The update `Q_m·y` is applied through the compact form of the reflectors.
pub fn rhqr_gmres(
    a: &dyn LinearOperator,
    b: &[f64],
    x0: &[f64],
    m: usize,
    psi: &EmbeddedSketch,
    opts: &RhqrOptions,
) -> Result<GmresResult> {
    let n = check_dims(a, b, x0)?;
    let bundle = match rhqr_arnoldi(a, b, x0, m, psi, opts) {
        Err(Error::Breakdown { column: 0, .. }) => return Ok(trivial(n, x0)),
        other => other?,
    };
    let sol = hessenberg_lstsq(&bundle.h, bundle.beta);
    let k = bundle.dim;
    let lo = opts.policy.low;
    let mut v = vec![0.0; n];
    for (vi, &yi) in v.iter_mut().zip(&sol.y) {
        *vi = lo.round(yi);
    }
    apply_compact_vec(&bundle.u, &bundle.s, &bundle.t, bundle.u.cols(), false, &mut v, psi, &opts.policy);
    let x: Vec<f64> = x0.iter().zip(&v).map(|(a, b)| lo.round(a + b)).collect();
    Ok(GmresResult {
        x,
        x0: x0.to_vec(),
        y: sol.y,
        beta: bundle.beta,
        h: bundle.h,
        basis: bundle.q_cols.expect("arnoldi stores the basis"),
        resid_history: sol.history,
        dim: k,
        rank_deficient: sol.rank_deficient,
    })
}

fn trivial(n: usize, x0: &[f64]) -> GmresResult {
    GmresResult {
        x: x0.to_vec(),
        x0: x0.to_vec(),
        y: Vec::new(),
        beta: 0.0,
        h: DenseMatrix::zeros(1, 0),
        basis: DenseMatrix::zeros(n, 0),
        resid_history: Vec::new(),
        dim: 0,
        rank_deficient: false,
    }
}

fn finish(
    x0: &[f64],
    beta: f64,
    h: DenseMatrix,
    q: DenseMatrix,
    dim: usize,
    p: Precision,
) -> GmresResult {
    let h = h.block(0..dim + 1, 0..dim);
    let basis = q.columns(0..dim + 1);
    let sol = hessenberg_lstsq(&h, beta);
    let mut x: Vec<f64> = x0.to_vec();
    for (c, &yc) in sol.y.iter().enumerate() {
        axpy(p, p.round(yc), basis.col(c), &mut x);
    }
    GmresResult {
        x,
        x0: x0.to_vec(),
        y: sol.y,
        beta,
        h,
        basis,
        resid_history: sol.history,
        dim,
        rank_deficient: sol.rank_deficient,
    }
}

/// GMRES with a randomized Gram-Schmidt Arnoldi process.
///
/// `omega` is an `ℓ × n` sketch; each new direction is projected with the
/// sketched least-squares coefficients and normalised in the sketched norm.
pub fn rgs_gmres(
    a: &dyn LinearOperator,
    b: &[f64],
    x0: &[f64],
    m: usize,
    omega: &dyn Sketch,
    policy: &PrecisionPolicy,
) -> Result<GmresResult> {
    let n = check_dims(a, b, x0)?;
    if omega.input_dim() != n {
        return Err(Error::Shape(format!("sketch acts on R^{}, operator on R^{n}", omega.input_dim())));
    }
    let (hi, lo) = (policy.high, policy.low);
    let tol = happy_breakdown_tol(n, lo.unit_roundoff());
    let mut q = DenseMatrix::zeros_in(n, m + 1, lo);
    let mut s = DenseMatrix::zeros_in(omega.output_dim(), m + 1, hi);
    let mut h = DenseMatrix::zeros_in(m + 1, m, hi);
    let r0: Vec<f64> = initial_residual(a, b, x0).into_iter().map(|v| lo.round(v)).collect();
    let p0 = omega.apply_vec(&r0, lo);
    let beta = nrm2(hi, &p0);
    if beta == 0.0 {
        return Ok(trivial(n, x0));
    }
    for (d, &v) in q.col_mut(0).iter_mut().zip(&r0) {
        *d = lo.round(v / beta);
    }
    for (d, &v) in s.col_mut(0).iter_mut().zip(&p0) {
        *d = hi.round(v / beta);
    }
    let mut dim = m;
    for j in 0..m {
        let mut w: Vec<f64> = a.apply(q.col(j)).into_iter().map(|v| lo.round(v)).collect();
        let p = omega.apply_vec(&w, lo);
        let coef = pivoted_lstsq(&s.columns(0..j + 1), &p, hi);
        for (i, &c) in coef.iter().enumerate() {
            axpy(lo, -lo.round(c), q.col(i), &mut w);
            h.set(i, j, c);
        }
        let z = omega.apply_vec(&w, lo);
        let hn = nrm2(hi, &z);
        if hn <= tol * nrm2(hi, &p) {
            dim = j + 1;
            h.set(j + 1, j, 0.0);
            break;
        }
        h.set(j + 1, j, hn);
        for (d, &v) in q.col_mut(j + 1).iter_mut().zip(&w) {
            *d = lo.round(v / hn);
        }
        for (d, &v) in s.col_mut(j + 1).iter_mut().zip(&z) {
            *d = hi.round(v / hn);
        }
    }
    Ok(finish(x0, beta, h, q, dim, lo))
}

/// Textbook GMRES with a modified Gram-Schmidt Arnoldi process, in double.
pub fn mgs_gmres(a: &dyn LinearOperator, b: &[f64], x0: &[f64], m: usize) -> Result<GmresResult> {
    let n = check_dims(a, b, x0)?;
    let p = Precision::Double;
    let tol = happy_breakdown_tol(n, p.unit_roundoff());
    let r0 = initial_residual(a, b, x0);
    let beta = norm(&r0);
    if beta == 0.0 {
        return Ok(trivial(n, x0));
    }
    let mut q = DenseMatrix::zeros(n, m + 1);
    let mut h = DenseMatrix::zeros(m + 1, m);
    for (d, &v) in q.col_mut(0).iter_mut().zip(&r0) {
        *d = v / beta;
    }
    let mut dim = m;
    for j in 0..m {
        let mut w = a.apply(q.col(j));
        let wn = norm(&w);
        for i in 0..=j {
            let c = dot(p, q.col(i), &w);
            axpy(p, -c, q.col(i), &mut w);
            h.set(i, j, c);
        }
        let hn = norm(&w);
        if hn <= tol * wn {
            dim = j + 1;
            break;
        }
        h.set(j + 1, j, hn);
        for (d, &v) in q.col_mut(j + 1).iter_mut().zip(&w) {
            *d = v / hn;
        }
    }
    if dim == 0 {
        return Err(Error::Breakdown { column: 0, kind: BreakdownKind::ZeroTail });
    }
    Ok(finish(x0, beta, h, q, dim, p))
}
