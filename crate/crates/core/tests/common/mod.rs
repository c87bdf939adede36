//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rhqr_core::sketch::{EmbeddedSketch, Sketch};
use rhqr_core::{DenseMatrix, Precision};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn randn(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut r = rng(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut r))
}

pub fn randn_vec(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| StandardNormal.sample(&mut r)).collect()
}

/// Plain triple-loop product, no rounding emulation.
pub fn mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    assert_eq!(a.cols(), b.rows());
    DenseMatrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum())
}

pub fn sub(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) - b.get(i, j))
}

pub fn fro(a: &DenseMatrix) -> f64 {
    a.data().iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `‖a − b‖_F / ‖b‖_F`.
pub fn rel_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    fro(&sub(a, b)) / fro(b)
}

pub fn vnorm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Textbook Householder QR with explicit reflectors `I − 2vvᵗ/vᵗv`,
/// pivot sign `σ = sign(x₀)` (zero counts as positive). Returns `R` and the
/// vectors scaled to norm √2.
pub fn oracle_hqr(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let (p, m) = a.shape();
    let mut w: Vec<Vec<f64>> = (0..m).map(|j| a.col(j).to_vec()).collect();
    let mut u = DenseMatrix::zeros(p, m);
    for j in 0..m {
        let x = &w[j][j..];
        let rho = vnorm(x);
        let sigma = if x[0] >= 0.0 { 1.0 } else { -1.0 };
        let mut v = x.to_vec();
        v[0] += sigma * rho;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        for col in w.iter_mut().skip(j) {
            let c: f64 = 2.0 * v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum::<f64>() / vv;
            for (ci, vi) in col[j..].iter_mut().zip(&v) {
                *ci -= c * vi;
            }
        }
        let scale = (2.0 / vv).sqrt();
        for (i, vi) in v.iter().enumerate() {
            u.set(j + i, j, vi * scale);
        }
    }
    let r = DenseMatrix::from_fn(m, m, |i, j| if i <= j { w[j][i] } else { 0.0 });
    (r, u)
}

/// Dense matrix of a sketch, column by column.
pub fn dense_of(s: &dyn Sketch) -> DenseMatrix {
    let n = s.input_dim();
    let mut out = DenseMatrix::zeros(s.output_dim(), n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        out.set_col(j, &s.apply_vec(&e, Precision::Double));
        e[j] = 0.0;
    }
    out
}

pub fn dense_psi(psi: &EmbeddedSketch) -> DenseMatrix {
    dense_of(psi)
}

/// `I − (2/‖Θz‖²)·z·(Θz)ᵗ·Θ` built densely.
pub fn dense_reflector(z: &[f64], theta: &DenseMatrix) -> DenseMatrix {
    let n = z.len();
    let tz: Vec<f64> = (0..theta.rows()).map(|i| (0..n).map(|k| theta.get(i, k) * z[k]).sum()).collect();
    let c = 2.0 / tz.iter().map(|v| v * v).sum::<f64>();
    // row vector (Θz)ᵗΘ
    let row: Vec<f64> = (0..n).map(|k| (0..theta.rows()).map(|i| tz[i] * theta.get(i, k)).sum()).collect();
    DenseMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - c * z[i] * row[j])
}

/// Singular values by one-sided Jacobi, descending.
pub fn jacobi_singular_values(a: &DenseMatrix) -> Vec<f64> {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.col(j).to_vec()).collect();
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|v| v * v).sum();
                let beta: f64 = cols[q].iter().map(|v| v * v).sum();
                let gamma: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 {
                    continue;
                }
                off = off.max(gamma.abs() / (alpha * beta).sqrt());
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (cols[p][i], cols[q][i]);
                    cols[p][i] = c * x - s * y;
                    cols[q][i] = s * x + c * y;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| vnorm(c)).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Random matrix with orthonormal columns (textbook Gram-Schmidt run twice).
pub fn orthonormal(n: usize, m: usize, seed: u64) -> DenseMatrix {
    let a = randn(n, m, seed);
    let mut q: Vec<Vec<f64>> = Vec::new();
    for j in 0..m {
        let mut v = a.col(j).to_vec();
        for _ in 0..2 {
            for qi in &q {
                let c: f64 = qi.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= c * qk;
                }
            }
        }
        let nv = vnorm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        q.push(v);
    }
    DenseMatrix::from_columns(n, &q).unwrap()
}

pub fn u_double() -> f64 {
    2f64.powi(-53)
}
