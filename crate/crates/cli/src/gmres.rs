use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhqr_core::krylov::{arnoldi_relation_error, mgs_gmres, rgs_gmres, rhqr_gmres, GmresResult, LinearOperator};
use rhqr_core::la::prefix_cond_numbers;
use rhqr_core::rhqr::RhqrOptions;
use rhqr_core::sketch::{make_sketch, EmbeddedSketch};
use rhqr_core::{Error, Result};

use crate::config::{GmresAlgo, GmresConfig, RhsSpec};
use crate::mm::{read_matrix_market, MmError, MmMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct GmresRow {
    pub j: usize,
    /// Least-squares residual of the projected problem (sketched for randomized variants).
    pub sketched_resid: f64,
    /// `‖b − A·x_j‖`, recomputed.
    pub true_resid: f64,
    pub arnoldi_rel_err: f64,
    /// Condition number of the first `j` basis vectors.
    pub cond_basis: f64,
    pub status: String,
}

impl GmresRow {
    pub const FIELDS: [&'static str; 6] = ["j", "sketched_resid", "true_resid", "arnoldi_rel_err", "cond_basis", "status"];
}

#[derive(Clone, Debug)]
pub struct GmresReport {
    pub rows: Vec<GmresRow>,
    pub result: GmresResult,
}

/// Dense or sparse operator read from a Matrix Market file.
pub struct MmOperator(pub MmMatrix);

impl LinearOperator for MmOperator {
    fn dim(&self) -> usize {
        match &self.0 {
            MmMatrix::Dense(d) => d.dim(),
            MmMatrix::Sparse(s) => s.dim(),
        }
    }
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        match &self.0 {
            MmMatrix::Dense(d) => d.apply(x),
            MmMatrix::Sparse(s) => s.apply(x),
        }
    }
    fn frobenius_norm(&self) -> f64 {
        match &self.0 {
            MmMatrix::Dense(d) => d.frobenius_norm(),
            MmMatrix::Sparse(s) => s.frobenius_norm(),
        }
    }
}

/// Build the right-hand side; random entries are uniform on `[-1, 1)`.
pub fn make_rhs(spec: &RhsSpec, n: usize) -> std::result::Result<Vec<f64>, MmError> {
    match spec {
        RhsSpec::Ones => Ok(vec![1.0; n]),
        RhsSpec::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        }
        RhsSpec::File(path) => {
            let m = read_matrix_market(path)?.to_dense();
            if m.cols() != 1 || m.rows() != n {
                return Err(MmError::Parse {
                    line: 2,
                    msg: format!("right-hand side must be {n}x1, file holds {}x{}", m.rows(), m.cols()),
                });
            }
            Ok(m.col(0).to_vec())
        }
    }
}

/// Run one GMRES solve and log every iteration.
pub fn run_gmres_experiment(a: &dyn LinearOperator, b: &[f64], cfg: &GmresConfig) -> Result<GmresReport> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::Shape(format!("operator is {n}x{n}, right-hand side has length {}", b.len())));
    }
    let x0 = vec![0.0; n];
    let policy = cfg.precision.policy();
    let m = cfg.iters;
    let res = match cfg.algo {
        GmresAlgo::Rhqr => {
            if n < m + 2 {
                return Err(Error::InvalidParameter(format!("{m} iterations need n ≥ {}", m + 2)));
            }
            let omega = make_sketch(cfg.sketch, cfg.ell(), n - m - 1, cfg.seed, cfg.nnz_per_col)?;
            let psi = EmbeddedSketch::new(m + 1, omega);
            rhqr_gmres(a, b, &x0, m, &psi, &RhqrOptions::with_policy(policy))?
        }
        GmresAlgo::Rgs => {
            let omega = make_sketch(cfg.sketch, cfg.ell(), n, cfg.seed, cfg.nnz_per_col)?;
            rgs_gmres(a, b, &x0, m, &omega, &policy)?
        }
        GmresAlgo::Mgs => mgs_gmres(a, b, &x0, m)?,
    };
    let js: Vec<usize> = (1..=res.dim).collect();
    let conds = if res.dim > 0 { prefix_cond_numbers(&res.basis.columns(0..res.dim).to_double(), &js) } else { Vec::new() };
    let basis = res.basis.to_double();
    let mut rows = Vec::with_capacity(res.dim);
    for (k, &j) in js.iter().enumerate() {
        let xj = res.iterate(j);
        let ax = a.apply(&xj);
        let true_resid = b.iter().zip(&ax).map(|(b, a)| (b - a) * (b - a)).sum::<f64>().sqrt();
        let status = if j == res.dim && res.dim < m { "happy-breakdown" } else { "ok" };
        rows.push(GmresRow {
            j,
            sketched_resid: res.resid_history[j - 1],
            true_resid,
            arnoldi_rel_err: arnoldi_relation_error(a, &basis, &res.h, j),
            cond_basis: conds[k],
            status: status.into(),
        });
    }
    Ok(GmresReport { rows, result: res })
}
