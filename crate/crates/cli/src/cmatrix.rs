use rhqr_core::DenseMatrix;

/// `sin(10(μ + x)) / (cos(100(μ − x)) + 1.1)`.
pub fn cfunc(x: f64, mu: f64) -> f64 {
    (10.0 * (mu + x)).sin() / ((100.0 * (mu - x)).cos() + 1.1)
}

/// The `n × m` test matrix `C[i, j] = f(i/(n−1), j/(m−1))`, zero-based, in double.
///
/// Columns become numerically dependent quickly, which makes it a hard
/// input for orthogonalization.
pub fn gen_cmatrix(n: usize, m: usize) -> DenseMatrix {
    assert!(n >= 2 && m >= 2, "C-matrix needs n ≥ 2 and m ≥ 2");
    let (dn, dm) = ((n - 1) as f64, (m - 1) as f64);
    DenseMatrix::from_fn(n, m, |i, j| cfunc(i as f64 / dn, j as f64 / dm))
}
