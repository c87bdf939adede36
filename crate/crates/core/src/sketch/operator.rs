use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::fwht::fwht_in_place;
use super::Sketch;
use crate::error::{Error, Result};
use crate::la::kernels::axpy;
use crate::la::{DenseMatrix, Precision};

const STREAM_SIGNS: u64 = 0;
const STREAM_ROWS: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SketchKind {
    Gaussian,
    Srht,
    SparseSign,
}

impl fmt::Display for SketchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SketchKind::Gaussian => "gauss",
            SketchKind::Srht => "srht",
            SketchKind::SparseSign => "sparse",
        })
    }
}

impl FromStr for SketchKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gauss" | "gaussian" => Ok(SketchKind::Gaussian),
            "srht" => Ok(SketchKind::Srht),
            "sparse" | "sparse-sign" | "sparse_sign" => Ok(SketchKind::SparseSign),
            other => Err(format!("unknown sketch kind '{other}'")),
        }
    }
}

#[derive(Clone, Debug)]
struct Srht {
    n: usize,
    n_pad: usize,
    /// ±1 for each of the `n` input coordinates.
    signs: Vec<f64>,
    /// Sampled coordinates of the transformed, padded vector.
    rows: Vec<usize>,
    scale: f64,
}

#[derive(Clone, Debug)]
struct SparseSign {
    ell: usize,
    n: usize,
    s: usize,
    /// `s` row indices per column, column after column.
    rows: Vec<usize>,
    /// Matching signed values `±1/√s`.
    values: Vec<f64>,
}

#[derive(Clone, Debug)]
enum Repr {
    Gaussian(DenseMatrix),
    Srht(Srht),
    SparseSign(SparseSign),
    Identity(usize),
    Dense(DenseMatrix),
}

/// A seeded sketching matrix `Ω` of shape `ℓ × n`.
///
/// Gaussian operators are stored densely, SRHT keeps only its sign diagonal
/// and sampled rows, sparse-sign keeps its nonzero pattern.
#[derive(Clone, Debug)]
pub struct SketchOperator {
    repr: Repr,
    seed: u64,
}

/// Draw a sketching operator.
///
/// * Gaussian: i.i.d. standard normal entries scaled by `1/√ℓ`; column `j`
///   comes from its own ChaCha stream so it can be regenerated on its own.
/// * SRHT: `√(n_pad/ℓ)·P·H·D` with `n_pad` the next power of two, `D` random
///   signs and `P` selecting `ℓ` distinct rows.
/// * Sparse sign: exactly `s` nonzeros `±1/√s` per column at distinct rows.
pub fn make_sketch(
    kind: SketchKind,
    ell: usize,
    n: usize,
    seed: u64,
    s: Option<usize>,
) -> Result<SketchOperator> {
    if ell == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("sketch dimensions must be positive (ℓ={ell}, n={n})")));
    }
    let repr = match kind {
        SketchKind::Gaussian => {
            let scale = 1.0 / (ell as f64).sqrt();
            let mut g = DenseMatrix::zeros(ell, n);
            for j in 0..n {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(j as u64);
                for v in g.col_mut(j) {
                    let z: f64 = rng.sample(StandardNormal);
                    *v = z * scale;
                }
            }
            Repr::Gaussian(g)
        }
        SketchKind::Srht => {
            let n_pad = n.next_power_of_two();
            if ell > n_pad {
                return Err(Error::InvalidParameter(format!(
                    "SRHT needs ℓ ≤ n_pad, got ℓ={ell} and n_pad={n_pad}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(STREAM_SIGNS);
            let signs = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
            rng.set_stream(STREAM_ROWS);
            rng.set_word_pos(0);
            let mut perm: Vec<usize> = (0..n_pad).collect();
            for i in 0..ell {
                let k = rng.random_range(i..n_pad);
                perm.swap(i, k);
            }
            perm.truncate(ell);
            Repr::Srht(Srht { n, n_pad, signs, rows: perm, scale: (n_pad as f64 / ell as f64).sqrt() })
        }
        SketchKind::SparseSign => {
            let s = s.unwrap_or(ell.min(8));
            if s == 0 || s > ell {
                return Err(Error::InvalidParameter(format!("sparse sign needs 1 ≤ s ≤ ℓ, got s={s}, ℓ={ell}")));
            }
            let v = 1.0 / (s as f64).sqrt();
            let mut rows = Vec::with_capacity(n * s);
            let mut values = Vec::with_capacity(n * s);
            for j in 0..n {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(j as u64);
                let mut picked = index::sample(&mut rng, ell, s).into_vec();
                picked.sort_unstable();
                for r in picked {
                    rows.push(r);
                    values.push(if rng.random::<bool>() { v } else { -v });
                }
            }
            Repr::SparseSign(SparseSign { ell, n, s, rows, values })
        }
    };
    Ok(SketchOperator { repr, seed })
}

impl SketchOperator {
    /// The identity map on `R^n` (an exact isometry, useful as an oracle).
    pub fn identity(n: usize) -> Self {
        SketchOperator { repr: Repr::Identity(n), seed: 0 }
    }

    /// An explicitly given `ℓ × n` matrix.
    pub fn from_matrix(m: DenseMatrix) -> Self {
        SketchOperator { repr: Repr::Dense(m.to_double()), seed: 0 }
    }

    /// SRHT with caller-supplied signs (length `n`) and sampled rows in `[0, n_pad)`.
    pub fn srht_from_parts(n: usize, signs: Vec<f64>, rows: Vec<usize>) -> Result<Self> {
        let n_pad = n.next_power_of_two();
        if signs.len() != n || signs.iter().any(|s| s.abs() != 1.0) {
            return Err(Error::InvalidParameter("SRHT signs must be ±1, one per input".into()));
        }
        let mut seen = vec![false; n_pad];
        for &r in &rows {
            if r >= n_pad || seen[r] {
                return Err(Error::InvalidParameter(format!("invalid or repeated sampled row {r}")));
            }
            seen[r] = true;
        }
        if rows.is_empty() {
            return Err(Error::InvalidParameter("SRHT needs at least one sampled row".into()));
        }
        let scale = (n_pad as f64 / rows.len() as f64).sqrt();
        Ok(SketchOperator { repr: Repr::Srht(Srht { n, n_pad, signs, rows, scale }), seed: 0 })
    }

    pub fn kind(&self) -> Option<SketchKind> {
        match self.repr {
            Repr::Gaussian(_) => Some(SketchKind::Gaussian),
            Repr::Srht(_) => Some(SketchKind::Srht),
            Repr::SparseSign(_) => Some(SketchKind::SparseSign),
            Repr::Identity(_) | Repr::Dense(_) => None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sampled rows of an SRHT operator.
    pub fn srht_rows(&self) -> Option<&[usize]> {
        match &self.repr {
            Repr::Srht(s) => Some(&s.rows),
            _ => None,
        }
    }

    /// Sign diagonal of an SRHT operator.
    pub fn srht_signs(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Srht(s) => Some(&s.signs),
            _ => None,
        }
    }

    /// Nonzeros per column of a sparse-sign operator.
    pub fn nnz_per_column(&self) -> Option<usize> {
        match &self.repr {
            Repr::SparseSign(s) => Some(s.s),
            _ => None,
        }
    }

    /// Dense `ℓ × n` matrix of the operator, built column by column from `Ωe_j`.
    pub fn to_dense(&self) -> DenseMatrix {
        match &self.repr {
            Repr::Gaussian(g) | Repr::Dense(g) => g.clone(),
            _ => {
                let n = self.input_dim();
                let mut out = DenseMatrix::zeros(self.output_dim(), n);
                let mut e = vec![0.0; n];
                for j in 0..n {
                    e[j] = 1.0;
                    let c = self.apply_vec(&e, Precision::Double);
                    out.col_mut(j).copy_from_slice(&c);
                    e[j] = 0.0;
                }
                out
            }
        }
    }
}

impl Sketch for SketchOperator {
    fn input_dim(&self) -> usize {
        match &self.repr {
            Repr::Gaussian(g) | Repr::Dense(g) => g.cols(),
            Repr::Srht(s) => s.n,
            Repr::SparseSign(s) => s.n,
            Repr::Identity(n) => *n,
        }
    }

    fn output_dim(&self) -> usize {
        match &self.repr {
            Repr::Gaussian(g) | Repr::Dense(g) => g.rows(),
            Repr::Srht(s) => s.rows.len(),
            Repr::SparseSign(s) => s.ell,
            Repr::Identity(n) => *n,
        }
    }

    fn apply_vec(&self, x: &[f64], p: Precision) -> Vec<f64> {
        assert_eq!(x.len(), self.input_dim(), "sketch input length");
        match &self.repr {
            Repr::Gaussian(g) | Repr::Dense(g) => {
                let mut y = vec![0.0; g.rows()];
                for (k, &xk) in x.iter().enumerate() {
                    if xk != 0.0 {
                        axpy(p, xk, g.col(k), &mut y);
                    }
                }
                y
            }
            Repr::Srht(s) => {
                // scale, flip signs, pad, transform, sample
                let scale = p.round(s.scale);
                let mut buf = vec![0.0; s.n_pad];
                for ((b, &xi), &d) in buf.iter_mut().zip(x).zip(&s.signs) {
                    *b = d * p.round(scale * xi);
                }
                fwht_in_place(&mut buf, p).expect("padded length is a power of two");
                s.rows.iter().map(|&r| buf[r]).collect()
            }
            Repr::SparseSign(s) => {
                let mut y = vec![0.0; s.ell];
                for (j, &xj) in x.iter().enumerate() {
                    if xj == 0.0 {
                        continue;
                    }
                    for k in j * s.s..(j + 1) * s.s {
                        let r = s.rows[k];
                        y[r] = p.round(y[r] + p.round(s.values[k] * xj));
                    }
                }
                y
            }
            Repr::Identity(_) => x.iter().map(|&v| p.round(v)).collect(),
        }
    }
}
