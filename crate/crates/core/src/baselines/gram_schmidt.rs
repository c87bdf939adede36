use super::{Method, QRResult};
use crate::error::{BreakdownKind, Error, Result};
use crate::la::kernels::{axpy, dot, nrm2, scal};
use crate::la::{DenseMatrix, Precision};

fn normalize(w: &mut [f64], j: usize, p: Precision) -> Result<f64> {
    let nrm = nrm2(p, w);
    if !(nrm > 0.0) || !nrm.is_finite() {
        return Err(Error::Breakdown { column: j, kind: BreakdownKind::ZeroTail });
    }
    scal(p, p.round(1.0 / nrm), w);
    Ok(nrm)
}

/// One-pass classical Gram-Schmidt in precision `p`.
pub fn cgs(w: &DenseMatrix, p: Precision) -> Result<QRResult> {
    let (n, m) = w.shape();
    let mut q = DenseMatrix::zeros_in(n, m, p);
    let mut r = DenseMatrix::zeros_in(m, m, p);
    for j in 0..m {
        let wj: Vec<f64> = w.col(j).iter().map(|&v| p.round(v)).collect();
        let coefs: Vec<f64> = (0..j).map(|i| dot(p, q.col(i), &wj)).collect();
        let mut v = wj;
        for (i, &c) in coefs.iter().enumerate() {
            axpy(p, -c, q.col(i), &mut v);
            r.set(i, j, c);
        }
        let nrm = normalize(&mut v, j, p)?;
        r.set(j, j, nrm);
        q.col_mut(j).copy_from_slice(&v);
    }
    Ok(QRResult { q: Some(q), r, aux: None, method: Method::ClassicalGramSchmidt })
}

/// Left-looking modified Gram-Schmidt in precision `p`.
pub fn mgs(w: &DenseMatrix, p: Precision) -> Result<QRResult> {
    let (n, m) = w.shape();
    let mut q = DenseMatrix::zeros_in(n, m, p);
    let mut r = DenseMatrix::zeros_in(m, m, p);
    for j in 0..m {
        let mut v: Vec<f64> = w.col(j).iter().map(|&x| p.round(x)).collect();
        for i in 0..j {
            let c = dot(p, q.col(i), &v);
            axpy(p, -c, q.col(i), &mut v);
            r.set(i, j, c);
        }
        let nrm = normalize(&mut v, j, p)?;
        r.set(j, j, nrm);
        q.col_mut(j).copy_from_slice(&v);
    }
    Ok(QRResult { q: Some(q), r, aux: None, method: Method::ModifiedGramSchmidt })
}
