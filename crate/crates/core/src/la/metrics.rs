use super::kernels::{dot, norm};
use super::svd::{householder_r, singular_values};
use super::{DenseMatrix, Precision};

/// Quantities reported for the leading `j` columns of a factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub j: usize,
    pub cond_q: f64,
    pub cond_sketch_q: f64,
    pub fro_rel_err: f64,
    pub max_col_rel_err: f64,
    /// `‖(ΨQ)ᵗΨQ − I‖_F`
    pub orth_err: f64,
}

impl MetricRow {
    /// Column names used when rows are serialised.
    pub const FIELDS: [&'static str; 6] =
        ["j", "cond_Q", "cond_sketch_Q", "fro_rel_err", "max_col_rel_err", "orth_err"];
}

/// `σ_max / σ_min` from a double-precision SVD; `+inf` when `σ_min = 0`.
pub fn cond_number(m: &DenseMatrix) -> f64 {
    let sv = singular_values(m);
    cond_from_values(&sv)
}

fn cond_from_values(sv: &[f64]) -> f64 {
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Condition numbers of the leading column blocks `m[:, ..j]` for each `j` in `js`.
///
/// One QR of `m` is shared: the leading `j` columns of `m` and the leading
/// `j×j` block of its triangular factor have the same singular values.
/// A prefix with more columns than `m` has rows is rank deficient and
/// reports `+inf`.
pub fn prefix_cond_numbers(m: &DenseMatrix, js: &[usize]) -> Vec<f64> {
    let k = m.rows().min(m.cols());
    let r = householder_r(&m.columns(0..k));
    js.iter()
        .map(|&j| {
            assert!(j >= 1 && j <= m.cols());
            if j > k {
                return f64::INFINITY;
            }
            cond_from_values(&singular_values(&r.block(0..j, 0..j)))
        })
        .collect()
}

/// Relative reconstruction errors of `W ≈ Q·R`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationErrors {
    /// `‖W − QR‖_F / ‖W‖_F`
    pub fro_rel_err: f64,
    /// `max_j ‖(W − QR)(:,j)‖ / ‖W(:,j)‖`
    pub max_col_rel_err: f64,
    /// Columns of `W` that were zero; their error is measured against `‖W‖_F`.
    pub zero_columns: Vec<usize>,
}

/// Per-column residual norms `‖(W − QR)(:,j)‖` and column norms of `W`, in double.
pub(crate) fn column_residuals(w: &DenseMatrix, q: &DenseMatrix, r: &DenseMatrix) -> (Vec<f64>, Vec<f64>) {
    let (n, m) = w.shape();
    assert_eq!(q.rows(), n, "Q rows");
    assert_eq!(q.cols(), r.rows(), "Q/R inner dimension");
    assert_eq!(r.cols(), m, "R columns");
    let mut res = Vec::with_capacity(m);
    let mut wn = Vec::with_capacity(m);
    let mut d = vec![0.0; n];
    for j in 0..m {
        d.copy_from_slice(w.col(j));
        for k in 0..r.rows() {
            let rk = r.get(k, j);
            if rk != 0.0 {
                for (di, qi) in d.iter_mut().zip(q.col(k)) {
                    *di -= rk * qi;
                }
            }
        }
        res.push(norm(&d));
        wn.push(norm(w.col(j)));
    }
    (res, wn)
}

pub fn factorization_errors(w: &DenseMatrix, q: &DenseMatrix, r: &DenseMatrix) -> FactorizationErrors {
    let (res, wn) = column_residuals(w, q, r);
    errors_from_columns(&res, &wn)
}

pub(crate) fn errors_from_columns(res: &[f64], wn: &[f64]) -> FactorizationErrors {
    let wf = wn.iter().map(|x| x * x).sum::<f64>().sqrt();
    let rf = res.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut zero_columns = Vec::new();
    let mut max_col = 0.0f64;
    for (j, (&rj, &wj)) in res.iter().zip(wn).enumerate() {
        let denom = if wj > 0.0 {
            wj
        } else {
            zero_columns.push(j);
            wf
        };
        let e = if denom > 0.0 { rj / denom } else if rj == 0.0 { 0.0 } else { f64::INFINITY };
        max_col = max_col.max(e);
    }
    let fro = if wf > 0.0 { rf / wf } else if rf == 0.0 { 0.0 } else { f64::INFINITY };
    FactorizationErrors { fro_rel_err: fro, max_col_rel_err: max_col, zero_columns }
}

/// `‖QᵗQ − I‖_F` computed in double.
pub fn orthogonality_error(q: &DenseMatrix) -> f64 {
    let g = gram(q);
    gram_error(&g, q.cols())
}

pub(crate) fn gram(q: &DenseMatrix) -> DenseMatrix {
    let m = q.cols();
    let mut g = DenseMatrix::zeros(m, m);
    for j in 0..m {
        for i in 0..=j {
            let v = dot(Precision::Double, q.col(i), q.col(j));
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    g
}

/// `‖G[..j, ..j] − I‖_F` for a Gram matrix `G`.
pub(crate) fn gram_error(g: &DenseMatrix, j: usize) -> f64 {
    let mut s = 0.0;
    for c in 0..j {
        for r in 0..j {
            let d = g.get(r, c) - if r == c { 1.0 } else { 0.0 };
            s += d * d;
        }
    }
    s.sqrt()
}

/// Metric rows for the leading `j` columns of a factorization, `j` in `js`.
///
/// `sketch_q` is the sketch of `q` (or `q` itself for deterministic methods).
/// Every column-prefix metric is derived from one pass over the full
/// matrices, which is valid because `Q[:, ..j]·R[..j, ..j]` only involves the
/// leading columns.
pub fn prefix_metric_rows(
    w: &DenseMatrix,
    q: &DenseMatrix,
    r: &DenseMatrix,
    sketch_q: &DenseMatrix,
    js: &[usize],
) -> Vec<MetricRow> {
    let cond_q = prefix_cond_numbers(q, js);
    let cond_s = prefix_cond_numbers(sketch_q, js);
    let (res, wn) = column_residuals(w, q, r);
    let g = gram(sketch_q);
    js.iter()
        .enumerate()
        .map(|(k, &j)| {
            let e = errors_from_columns(&res[..j], &wn[..j]);
            MetricRow {
                j,
                cond_q: cond_q[k],
                cond_sketch_q: cond_s[k],
                fro_rel_err: e.fro_rel_err,
                max_col_rel_err: e.max_col_rel_err,
                orth_err: gram_error(&g, j),
            }
        })
        .collect()
}
