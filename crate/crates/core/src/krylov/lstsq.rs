use nalgebra::DMatrix;

use crate::la::DenseMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct HessenbergSolution {
    pub y: Vec<f64>,
    /// `‖βe_1 − H·y‖`.
    pub resid: f64,
    /// Residual of the leading `(j+2) × (j+1)` problem after each column `j`.
    pub history: Vec<f64>,
    /// The reduced triangular factor had a zero pivot; `y` is the minimum-norm solution.
    pub rank_deficient: bool,
}

/// Solve `min ‖βe_1 − H·y‖` for upper-Hessenberg `H` of shape `(k+1) × k`
/// with Givens rotations, in double precision.
///
/// A column whose two active entries are both zero is skipped. If the
/// rotated triangle has a zero pivot, the minimum-norm solution is taken.
pub fn hessenberg_lstsq(h: &DenseMatrix, beta: f64) -> HessenbergSolution {
    let k = h.cols();
    assert_eq!(h.rows(), k + 1, "Hessenberg matrix must be (k+1) x k");
    let mut r = h.to_double();
    let mut g = vec![0.0; k + 1];
    g[0] = beta;
    let mut history = Vec::with_capacity(k);
    for j in 0..k {
        let (a, b) = (r.get(j, j), r.get(j + 1, j));
        if b != 0.0 {
            let rr = a.hypot(b);
            let (c, s) = (a / rr, b / rr);
            for col in j..k {
                let (x, y) = (r.get(j, col), r.get(j + 1, col));
                r.set(j, col, c * x + s * y);
                r.set(j + 1, col, -s * x + c * y);
            }
            r.set(j + 1, j, 0.0);
            let (x, y) = (g[j], g[j + 1]);
            g[j] = c * x + s * y;
            g[j + 1] = -s * x + c * y;
        }
        history.push(g[j + 1].abs());
    }
    let scale = r.max_abs();
    let tiny = scale * (k.max(1) as f64) * f64::EPSILON;
    let rank_deficient = (0..k).any(|j| r.get(j, j).abs() <= tiny);
    let y = if k == 0 {
        Vec::new()
    } else if rank_deficient {
        let tri = DMatrix::from_fn(k, k, |i, j| if i <= j { r.get(i, j) } else { 0.0 });
        let rhs = nalgebra::DVector::from_column_slice(&g[..k]);
        let svd = tri.svd(true, true);
        let sol = svd.solve(&rhs, tiny).expect("both factors were computed");
        sol.iter().copied().collect()
    } else {
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut acc = g[i];
            for c in (i + 1)..k {
                acc -= r.get(i, c) * y[c];
            }
            y[i] = acc / r.get(i, i);
        }
        y
    };
    let resid = if rank_deficient {
        // recompute from the original problem
        let hy = h.to_double().matvec(&y, crate::la::Precision::Double);
        let mut d = hy.iter().map(|v| -v).collect::<Vec<_>>();
        d[0] += beta;
        crate::la::kernels::norm(&d)
    } else {
        g[k].abs()
    };
    HessenbergSolution { y, resid, history, rank_deficient }
}
