use super::{happy_breakdown_tol, LinearOperator};
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::{axpy, nrm2};
use crate::la::{DenseMatrix, Precision};
use crate::rhqr::{compact_coeffs, extend_t, rh_vector, sub_u_times, tri_mul, RhqrOptions};
use crate::sketch::{EmbeddedSketch, Sketch};

/// Arnoldi output: reflectors, Hessenberg matrix and explicit basis.
#[derive(Clone, Debug)]
pub struct KrylovBundle {
    /// `n × (k+1)` randomized Householder vectors.
    pub u: DenseMatrix,
    pub s: DenseMatrix,
    pub t: DenseMatrix,
    /// `(k+1) × k` upper Hessenberg.
    pub h: DenseMatrix,
    /// Basis vectors `q_1, …, q_{k+1}` as columns.
    pub q_cols: Option<DenseMatrix>,
    /// Signed sketched norm of the initial residual: `r₀ = beta·q_1`.
    pub beta: f64,
    /// Attained Krylov dimension `k` (less than requested after a happy breakdown).
    pub dim: usize,
    pub happy_breakdown: bool,
    pub psi: EmbeddedSketch,
    pub opts: RhqrOptions,
}

fn residual(a: &dyn LinearOperator, b: &[f64], x0: &[f64], p: Precision) -> Vec<f64> {
    let ax = a.apply(x0);
    b.iter().zip(&ax).map(|(bi, ai)| p.round(bi - ai)).collect()
}

/// `e_j − U·T·Sᵗe_j` over the first `k` reflectors.
fn basis_vector(u: &DenseMatrix, s: &DenseMatrix, t: &DenseMatrix, k: usize, j: usize, opts: &RhqrOptions) -> Vec<f64> {
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let row: Vec<f64> = (0..k).map(|c| s.get(j, c)).collect();
    let c = tri_mul(t, &row, hi);
    let mut q = vec![0.0; u.rows()];
    q[j] = 1.0;
    for (i, &ci) in c.iter().enumerate() {
        axpy(lo, -lo.round(ci), u.col(i), &mut q);
    }
    q
}

/// Arnoldi process where each new direction is eliminated by a randomized
/// Householder reflector.
///
/// `psi` needs an identity block of at least `m + 1` coordinates.
pub fn rhqr_arnoldi(
    a: &dyn LinearOperator,
    b: &[f64],
    x0: &[f64],
    m: usize,
    psi: &EmbeddedSketch,
    opts: &RhqrOptions,
) -> Result<KrylovBundle> {
    let n = a.dim();
    if b.len() != n || x0.len() != n {
        return Err(Error::Shape(format!("operator is {n}x{n} but vectors have lengths {} and {}", b.len(), x0.len())));
    }
    psi.check_fits(n, m + 1)?;
    let (hi, lo) = (opts.policy.high, opts.policy.low);
    let mut u = DenseMatrix::zeros_in(n, m + 1, lo);
    let mut s = DenseMatrix::zeros_in(psi.output_dim(), m + 1, hi);
    let mut t = DenseMatrix::zeros_in(m + 1, m + 1, hi);
    let mut h = DenseMatrix::zeros_in(m + 1, m, hi);
    let mut q = DenseMatrix::zeros_in(n, m + 1, lo);
    let tol = happy_breakdown_tol(n, lo.unit_roundoff());

    let mut w = residual(a, b, x0, lo);
    let mut z = psi.apply_vec(&w, lo);
    let mut beta = 0.0;
    let mut dim = m;
    let mut happy = false;
    for j in 0..=m {
        let tail = nrm2(hi, &z[j..]);
        if tail <= tol * nrm2(hi, &z) {
            if j == 0 {
                return Err(Error::Breakdown { column: 0, kind: BreakdownKind::ZeroTail });
            }
            for i in 0..j {
                h.set(i, j - 1, w[i]);
            }
            dim = j;
            happy = true;
            break;
        }
        let step = rh_vector(&w, &z, j, opts.scaling, &opts.policy)?;
        if j == 0 {
            beta = step.r_diag();
        } else {
            for i in 0..j {
                h.set(i, j - 1, w[i]);
            }
            h.set(j, j - 1, step.r_diag());
        }
        u.col_mut(j).copy_from_slice(&step.u);
        s.col_mut(j).copy_from_slice(&step.s);
        extend_t(&mut t, &s, j, step.beta, hi);
        if j < m {
            let qj = basis_vector(&u, &s, &t, j + 1, j, opts);
            q.col_mut(j).copy_from_slice(&qj);
            w = a.apply(&qj).into_iter().map(|v| lo.round(v)).collect();
            let y = psi.apply_vec(&w, lo);
            let c = compact_coeffs(&s, &t, j + 1, true, &y, hi);
            sub_u_times(&u, &c, &mut w, lo);
            z = psi.apply_vec(&w, lo);
        }
    }
    if happy && dim < m {
        // the reflector pass stopped at column `dim`; keep the leading blocks only
        let k = dim;
        let qk = basis_vector(&u, &s, &t, k, k, opts);
        q.col_mut(k).copy_from_slice(&qk);
        return Ok(KrylovBundle {
            u: u.columns(0..k),
            s: s.columns(0..k),
            t: t.block(0..k, 0..k),
            h: h.block(0..k + 1, 0..k),
            q_cols: Some(q.columns(0..k + 1)),
            beta,
            dim: k,
            happy_breakdown: true,
            psi: psi.clone(),
            opts: *opts,
        });
    }
    let qm = basis_vector(&u, &s, &t, m + 1, m, opts);
    q.col_mut(m).copy_from_slice(&qm);
    Ok(KrylovBundle {
        u,
        s,
        t,
        h,
        q_cols: Some(q),
        beta,
        dim: m,
        happy_breakdown: happy,
        psi: psi.clone(),
        opts: *opts,
    })
}

/// `‖A·Q_j − Q_{j+1}·H_{j+1,j}‖_F / (‖A‖_F·‖Q_j‖_F)`.
pub fn arnoldi_relation_error(a: &dyn LinearOperator, q: &DenseMatrix, h: &DenseMatrix, j: usize) -> f64 {
    let p = Precision::Double;
    let n = q.rows();
    let mut num = 0.0;
    let mut qn = 0.0;
    for c in 0..j {
        let mut d = a.apply(q.col(c));
        for i in 0..=c + 1 {
            let hic = h.get(i, c);
            if hic != 0.0 {
                axpy(p, -hic, q.col(i), &mut d);
            }
        }
        num += d.iter().map(|v| v * v).sum::<f64>();
        qn += q.col(c).iter().map(|v| v * v).sum::<f64>();
    }
    debug_assert_eq!(q.rows(), n);
    let denom = a.frobenius_norm() * qn.sqrt();
    if denom > 0.0 {
        num.sqrt() / denom
    } else {
        num.sqrt()
    }
}
