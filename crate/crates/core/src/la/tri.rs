use super::kernels::axpy;
use super::{DenseMatrix, Precision};
use crate::error::{shape_err, Error, Result};

fn check_diagonal(r: &DenseMatrix) -> Result<()> {
    if r.rows() != r.cols() {
        return Err(shape_err(format!("triangular factor is {}x{}", r.rows(), r.cols())));
    }
    for i in 0..r.rows() {
        let d = r.get(i, i);
        if !d.is_finite() || d.abs() < f64::MIN_POSITIVE {
            return Err(Error::SingularFactor { index: i });
        }
    }
    Ok(())
}

/// Solve `R·X = B` by back substitution in precision `p`.
///
/// Only the upper triangle of `R` is read.
pub fn upper_tri_solve(r: &DenseMatrix, b: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
    check_diagonal(r)?;
    let m = r.rows();
    if b.rows() != m {
        return Err(shape_err(format!("rhs has {} rows, factor is {m}x{m}", b.rows())));
    }
    let mut x = b.rounded_to(p);
    for j in 0..x.cols() {
        let col = x.col_mut(j);
        for i in (0..m).rev() {
            let xi = p.round(col[i] / r.get(i, i));
            col[i] = xi;
            if xi != 0.0 {
                axpy(p, -xi, &r.col(i)[..i], &mut col[..i]);
            }
        }
    }
    Ok(x)
}

/// Solve `X·R = B` column by column (forward substitution on `Rᵗ`) in `p`.
pub fn right_tri_solve(b: &DenseMatrix, r: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
    check_diagonal(r)?;
    let m = r.rows();
    if b.cols() != m {
        return Err(shape_err(format!("lhs has {} columns, factor is {m}x{m}", b.cols())));
    }
    let k = b.rows();
    let mut x = b.rounded_to(p);
    let mut acc = vec![0.0; k];
    for j in 0..m {
        acc.copy_from_slice(x.col(j));
        for i in 0..j {
            let rij = r.get(i, j);
            if rij != 0.0 {
                axpy(p, -rij, x.col(i), &mut acc);
            }
        }
        let d = r.get(j, j);
        for (dst, a) in x.col_mut(j).iter_mut().zip(&acc) {
            *dst = p.round(a / d);
        }
    }
    Ok(x)
}

/// Inverse of an upper-triangular matrix, computed as `R \ I` in `p`.
pub fn upper_tri_inverse(r: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
    let mut inv = upper_tri_solve(r, &DenseMatrix::identity(r.rows()), p)?;
    // Back substitution keeps the lower part exactly zero already; make the
    // structure explicit regardless of roundoff in the zero pattern.
    inv = inv.upper_triangle();
    Ok(inv)
}
