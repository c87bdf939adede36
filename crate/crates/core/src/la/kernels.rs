//! Vector kernels that round after every operation in the requested precision.
//!
//! Double precision takes a plain loop; the other formats round each product
//! and each partial sum.

use super::Precision;

pub fn dot(p: Precision, x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    if p.is_double() {
        let mut acc = 0.0;
        for (a, b) in x.iter().zip(y) {
            acc += a * b;
        }
        acc
    } else {
        let mut acc = 0.0;
        for (a, b) in x.iter().zip(y) {
            acc = p.round(acc + p.round(a * b));
        }
        acc
    }
}

/// Euclidean norm. The sum of squares is accumulated in `p`.
pub fn nrm2(p: Precision, x: &[f64]) -> f64 {
    p.round(dot(p, x, x).sqrt())
}

/// `y += alpha * x`
pub fn axpy(p: Precision, alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    if p.is_double() {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += alpha * xi;
        }
    } else {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = p.round(*yi + p.round(alpha * xi));
        }
    }
}

/// `x *= alpha`
pub fn scal(p: Precision, alpha: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi = p.round(alpha * *xi);
    }
}

pub fn round_slice(p: Precision, x: &mut [f64]) {
    if !p.is_double() {
        for xi in x.iter_mut() {
            *xi = p.round(*xi);
        }
    }
}

/// Norm in double without rounding, used by metrics.
pub fn norm(x: &[f64]) -> f64 {
    dot(Precision::Double, x, x).sqrt()
}
