use crate::error::{shape_err, Result};
use crate::la::kernels::{axpy, dot};
use crate::la::{upper_tri_inverse, DenseMatrix, Precision, PrecisionPolicy};
use crate::sketch::{EmbeddedSketch, Sketch};

/// `T[..k, ..k]·v` for upper-triangular `T`.
pub(crate) fn tri_mul(t: &DenseMatrix, v: &[f64], p: Precision) -> Vec<f64> {
    let k = v.len();
    let mut out = vec![0.0; k];
    for (c, &vc) in v.iter().enumerate() {
        if vc != 0.0 {
            axpy(p, vc, &t.col(c)[..=c], &mut out[..=c]);
        }
    }
    out
}

/// `T[..k, ..k]ᵗ·v` for upper-triangular `T`.
pub(crate) fn tri_tr_mul(t: &DenseMatrix, v: &[f64], p: Precision) -> Vec<f64> {
    (0..v.len()).map(|c| dot(p, &t.col(c)[..=c], &v[..=c])).collect()
}

/// `T^{(t)}·Sᵗ·y` using the first `k` columns of `S` and `T`.
pub(crate) fn compact_coeffs(
    s: &DenseMatrix,
    t: &DenseMatrix,
    k: usize,
    transpose: bool,
    y: &[f64],
    p: Precision,
) -> Vec<f64> {
    let sy: Vec<f64> = (0..k).map(|c| dot(p, s.col(c), y)).collect();
    if transpose {
        tri_tr_mul(t, &sy, p)
    } else {
        tri_mul(t, &sy, p)
    }
}

/// `x ← x − U[:, ..k]·c`, in precision `p`.
pub(crate) fn sub_u_times(u: &DenseMatrix, c: &[f64], x: &mut [f64], p: Precision) {
    for (col, &cc) in c.iter().enumerate() {
        let cc = p.round(cc);
        if cc != 0.0 {
            axpy(p, -cc, u.col(col), x);
        }
    }
}

/// Apply `I − U·T^{(t)}·SᵗΨ` to a single vector in place, using `k` reflectors.
#[allow(clippy::too_many_arguments)]
pub(crate) fn apply_compact_vec(
    u: &DenseMatrix,
    s: &DenseMatrix,
    t: &DenseMatrix,
    k: usize,
    transpose: bool,
    x: &mut [f64],
    psi: &EmbeddedSketch,
    policy: &PrecisionPolicy,
) {
    if k == 0 {
        return;
    }
    let y = psi.apply_vec(x, policy.low);
    let c = compact_coeffs(s, t, k, transpose, &y, policy.high);
    sub_u_times(u, &c, x, policy.low);
}

/// `X − U·T·SᵗΨX` (or with `Tᵗ` when `transpose_t`).
///
/// Without transposition this applies `P(u_1)⋯P(u_k)`; with it, the reverse
/// product `P(u_k)⋯P(u_1)`. Sketches and the n-dimensional update run in the
/// policy's low precision, the small products in its high precision.
pub fn apply_reflectors_compact(
    u: &DenseMatrix,
    s: &DenseMatrix,
    t: &DenseMatrix,
    transpose_t: bool,
    x: &DenseMatrix,
    psi: &EmbeddedSketch,
    policy: &PrecisionPolicy,
) -> Result<DenseMatrix> {
    let k = u.cols();
    if s.cols() != k || t.rows() != k || t.cols() != k {
        return Err(shape_err(format!(
            "compact form needs U, S with the same column count and a square T (got {k}, {}, {}x{})",
            s.cols(),
            t.rows(),
            t.cols()
        )));
    }
    if x.rows() != psi.input_dim() || u.rows() != x.rows() || s.rows() != psi.output_dim() {
        return Err(shape_err("compact form and operand dimensions disagree"));
    }
    let mut out = x.rounded_to(policy.low);
    for j in 0..out.cols() {
        apply_compact_vec(u, s, t, k, transpose_t, out.col_mut(j), psi, policy);
    }
    Ok(out)
}

/// Fill column `k` of `T` from the recursion `t_k = (−β·T·S[:, ..k]ᵗ·s_k) ⊘ β`.
pub(crate) fn extend_t(t: &mut DenseMatrix, s: &DenseMatrix, k: usize, beta: f64, p: Precision) {
    let sk = s.col(k);
    let v: Vec<f64> = (0..k).map(|c| dot(p, s.col(c), sk)).collect();
    let tv = tri_mul(t, &v, p);
    let col = t.col_mut(k);
    for (dst, x) in col[..k].iter_mut().zip(&tv) {
        *dst = p.round(-beta * x);
    }
    col[k] = beta;
}

/// `T = [sut(SᵗS) + ½·diag(SᵗS)]^{-1}`, the factor satisfying
/// `SᵗS = T^{-1} + T^{-t}`.
pub fn t_factor_from_sketches(s: &DenseMatrix, p: Precision) -> Result<DenseMatrix> {
    let k = s.cols();
    let mut a = DenseMatrix::zeros_in(k, k, p);
    for j in 0..k {
        for i in 0..j {
            a.set(i, j, dot(p, s.col(i), s.col(j)));
        }
        a.set(j, j, 0.5 * dot(p, s.col(j), s.col(j)));
    }
    upper_tri_inverse(&a, p)
}
