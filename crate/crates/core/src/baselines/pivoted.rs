use crate::la::kernels::{axpy, dot, nrm2};
use crate::la::{DenseMatrix, Precision};

/// Least-squares solution of `min ‖A·x − b‖` by Householder QR with column
/// pivoting, in precision `p`.
///
/// Columns whose pivoted diagonal falls below `max(rows, cols)·u·|r₀₀|` are
/// treated as dependent and get a zero coefficient.
pub fn pivoted_lstsq(a: &DenseMatrix, b: &[f64], p: Precision) -> Vec<f64> {
    let (rows, cols) = a.shape();
    assert_eq!(b.len(), rows, "rhs length");
    let mut work = a.rounded_to(p);
    let mut rhs: Vec<f64> = b.iter().map(|&v| p.round(v)).collect();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut norms: Vec<f64> = (0..cols).map(|j| dot(p, work.col(j), work.col(j))).collect();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for k in 0..steps {
        // pivot on the largest remaining column norm
        let (piv, _) = norms[k..]
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        let piv = piv + k;
        if piv != k {
            perm.swap(k, piv);
            norms.swap(k, piv);
            let (ck, cp) = (work.col(k).to_vec(), work.col(piv).to_vec());
            work.col_mut(k).copy_from_slice(&cp);
            work.col_mut(piv).copy_from_slice(&ck);
        }
        let x = &work.col(k)[k..];
        let nrm = nrm2(p, x);
        if nrm == 0.0 {
            diag.push(0.0);
            continue;
        }
        let alpha = if x[0] >= 0.0 { -nrm } else { nrm };
        let mut v = x.to_vec();
        v[0] = p.round(v[0] - alpha);
        let vnorm2 = dot(p, &v, &v);
        for c in (k + 1)..cols {
            let coef = p.round(2.0 * dot(p, &v, &work.col(c)[k..]) / vnorm2);
            axpy(p, -coef, &v, &mut work.col_mut(c)[k..]);
        }
        let coef = p.round(2.0 * dot(p, &v, &rhs[k..]) / vnorm2);
        axpy(p, -coef, &v, &mut rhs[k..]);
        let col = work.col_mut(k);
        col[k] = alpha;
        for e in &mut col[k + 1..] {
            *e = 0.0;
        }
        diag.push(alpha);
        // downdate remaining norms, recomputing when cancellation is severe
        for c in (k + 1)..cols {
            let r = work.get(k, c);
            let nv = norms[c] - r * r;
            norms[c] = if nv <= 0.1 * norms[c] {
                dot(p, &work.col(c)[k + 1..], &work.col(c)[k + 1..])
            } else {
                nv
            };
        }
    }
    let tol = (rows.max(cols) as f64) * p.unit_roundoff() * diag.first().map_or(0.0, |d: &f64| d.abs());
    let rank = diag.iter().take_while(|d| d.abs() > tol).count();
    let mut z = vec![0.0; cols];
    for i in (0..rank).rev() {
        let mut acc = rhs[i];
        for c in (i + 1)..rank {
            acc = p.round(acc - p.round(work.get(i, c) * z[c]));
        }
        z[i] = p.round(acc / work.get(i, i));
    }
    let mut x = vec![0.0; cols];
    for (k, &pk) in perm.iter().enumerate() {
        x[pk] = z[k];
    }
    x
}
