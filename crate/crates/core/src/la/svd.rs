use nalgebra::DMatrix;

use super::kernels::{axpy, dot};
use super::{DenseMatrix, Precision};

/// Upper-triangular factor of a plain double-precision Householder QR.
///
/// Used only to shrink tall matrices before an SVD; signs are not normalised.
/// Wide inputs are transposed first.
pub fn householder_r(m: &DenseMatrix) -> DenseMatrix {
    let a = if m.rows() >= m.cols() { m.to_double() } else { m.transpose().to_double() };
    let (rows, cols) = a.shape();
    let mut a = a;
    let p = Precision::Double;
    let mut v = vec![0.0; rows];
    for j in 0..cols {
        let x = &a.col(j)[j..];
        let norm = dot(p, x, x).sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        let vj = &mut v[j..];
        vj.copy_from_slice(x);
        vj[0] -= alpha;
        let vnorm2 = dot(p, vj, vj);
        if vnorm2 == 0.0 {
            continue;
        }
        for k in j..cols {
            let c = 2.0 * dot(p, vj, &a.col(k)[j..]) / vnorm2;
            axpy(p, -c, vj, &mut a.col_mut(k)[j..]);
        }
        // Write exact values on the eliminated column.
        let col = a.col_mut(j);
        col[j] = alpha;
        for e in &mut col[j + 1..] {
            *e = 0.0;
        }
    }
    a.block(0..cols, 0..cols).upper_triangle()
}

/// Singular values in descending order, computed in double precision.
///
/// Tall inputs are first reduced to their triangular factor; the square
/// factor goes through the bidiagonal SVD of `nalgebra`.
pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let r = householder_r(m);
    let k = r.rows();
    let dm = DMatrix::from_column_slice(k, k, r.data());
    let mut sv: Vec<f64> = dm.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}
