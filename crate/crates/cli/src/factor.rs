use std::sync::Arc;

use rhqr_core::baselines::{blas2_rgs, cgs, householder_qr, mgs, rand_cholesky_qr, rgs};
use rhqr_core::la::{cast_precision, factorization_errors, prefix_metric_rows, MetricRow};
use rhqr_core::rhqr::{rec_rhqr, rhqr_block, rhqr_left, rhqr_right, thin_q, RhqrOptions};
use rhqr_core::sketch::{check_embedding, make_sketch, EmbeddedSketch, Sketch, SketchOperator};
use rhqr_core::trim::{trim_rhqr_left, trim_rhqr_right, trim_thin_q};
use rhqr_core::{DenseMatrix, Error, Precision, Result};

use crate::config::{Algo, ExperimentConfig};

/// One CSV row: metrics for the leading `j` columns and a status tag.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorRow {
    pub metrics: MetricRow,
    pub status: String,
}

#[derive(Clone, Debug)]
pub struct FactorReport {
    pub rows: Vec<FactorRow>,
    /// Distortion of the sketch on `Range(Q)`, when the run reached full accuracy.
    pub epsilon: Option<f64>,
    /// Column at which the algorithm broke down, if it did.
    pub breakdown: Option<(usize, String)>,
    pub n: usize,
    pub m: usize,
    pub ell: usize,
}

/// The sketch an algorithm orthogonalizes against.
enum RunSketch {
    Embedded(EmbeddedSketch),
    Plain(Arc<SketchOperator>),
    None,
}

impl RunSketch {
    fn as_dyn(&self) -> Option<&dyn Sketch> {
        match self {
            RunSketch::Embedded(p) => Some(p),
            RunSketch::Plain(o) => Some(o.as_ref()),
            RunSketch::None => None,
        }
    }
}

struct Factored {
    q: DenseMatrix,
    r: DenseMatrix,
    /// Basis whose orthogonality is reported, in double.
    sketched: DenseMatrix,
}

fn build_sketch(cfg: &ExperimentConfig, n: usize, m: usize) -> Result<RunSketch> {
    if cfg.algo.is_deterministic() {
        return Ok(RunSketch::None);
    }
    let ell = cfg.ell_for(m);
    if cfg.algo.uses_embedded_sketch() {
        if n <= m {
            return Err(Error::InvalidParameter(format!("embedded sketch needs n > m, got {n}x{m}")));
        }
        let omega = make_sketch(cfg.sketch, ell, n - m, cfg.seed, cfg.nnz_per_col)?;
        Ok(RunSketch::Embedded(EmbeddedSketch::new(m, omega)))
    } else {
        Ok(RunSketch::Plain(Arc::new(make_sketch(cfg.sketch, ell, n, cfg.seed, cfg.nnz_per_col)?)))
    }
}

fn run_algo(cfg: &ExperimentConfig, w: &DenseMatrix, sketch: &RunSketch) -> Result<Factored> {
    let policy = cfg.precision.policy();
    let opts = RhqrOptions::with_policy(policy);
    let dbl = Precision::Double;
    let low = policy.low;
    match (cfg.algo, sketch) {
        (Algo::RhqrLeft | Algo::RhqrRight | Algo::RhqrBlock | Algo::RecRhqr, RunSketch::Embedded(psi)) => {
            let f = match cfg.algo {
                Algo::RhqrLeft => rhqr_left(w, psi, &opts)?,
                Algo::RhqrRight => rhqr_right(w, psi, &opts)?,
                Algo::RhqrBlock => rhqr_block(w, psi, cfg.block, &opts)?.to_factors(),
                _ => rec_rhqr(w, psi, &opts)?,
            };
            let q = thin_q(&f).to_double();
            let sketched = psi.apply(&q, dbl)?;
            Ok(Factored { q, r: f.r.to_double(), sketched })
        }
        (Algo::TrimLeft | Algo::TrimRight, RunSketch::Plain(omega)) => {
            let f = if cfg.algo == Algo::TrimLeft { trim_rhqr_left(w, omega, &opts)? } else { trim_rhqr_right(w, omega, &opts)? };
            let q = trim_thin_q(&f).to_double();
            let sketched = f.omega.apply(&q, dbl)?;
            Ok(Factored { q, r: f.r.to_double(), sketched })
        }
        (Algo::Rgs | Algo::RCholQr, RunSketch::Plain(omega)) => {
            let res = if cfg.algo == Algo::Rgs {
                rgs(w, omega.as_ref(), &policy)?
            } else {
                rand_cholesky_qr(w, omega.as_ref(), &policy)?
            };
            let q = res.q().to_double();
            let sketched = omega.apply(&q, dbl)?;
            Ok(Factored { q, r: res.r.to_double(), sketched })
        }
        (Algo::Blas2Rgs, RunSketch::Plain(omega)) => {
            let b = blas2_rgs(w, omega.as_ref(), &policy)?;
            let sketched = b.corrected_sketch(omega.as_ref())?;
            Ok(Factored { q: b.qr.q().to_double(), r: b.qr.r.to_double(), sketched })
        }
        (Algo::Cgs | Algo::Mgs | Algo::Hqr, RunSketch::None) => {
            let res = match cfg.algo {
                Algo::Cgs => cgs(w, low)?,
                Algo::Mgs => mgs(w, low)?,
                _ => householder_qr(w, low)?,
            };
            let q = res.q().to_double();
            Ok(Factored { sketched: q.clone(), q, r: res.r.to_double() })
        }
        _ => unreachable!("sketch shape is chosen from the algorithm"),
    }
}

fn nan_row(j: usize) -> MetricRow {
    MetricRow {
        j,
        cond_q: f64::NAN,
        cond_sketch_q: f64::NAN,
        fro_rel_err: f64::NAN,
        max_col_rel_err: f64::NAN,
        orth_err: f64::NAN,
    }
}

/// Factor `w` with the configured algorithm and report metrics on leading column blocks.
///
/// Every algorithm here produces the factorization of `W[:, ..j]` as the
/// leading part of the factorization of `W`, so one run covers the sweep.
/// On a breakdown at column `c`, the run is repeated on `W[:, ..c]` with
/// the same sketch and rows past `c` are tagged with the breakdown.
pub fn run_factor_experiment(cfg: &ExperimentConfig, w: &DenseMatrix) -> Result<FactorReport> {
    let (n, m) = w.shape();
    let policy = cfg.precision.policy();
    let w = cast_precision(w, policy.low)?;
    let sketch = build_sketch(cfg, n, m)?;
    let js = cfg.sample_points(m);

    let (factored, breakdown) = match run_algo(cfg, &w, &sketch) {
        Ok(f) => (Some(f), None),
        Err(Error::Breakdown { column, kind }) => {
            let tag = format!("breakdown-{}@{column}", kind.tag());
            let f = if column > 0 { Some(run_algo(cfg, &w.columns(0..column), &sketch)?) } else { None };
            (f, Some((column, tag)))
        }
        Err(e) => return Err(e),
    };
    let done = factored.as_ref().map_or(0, |f| f.q.cols());
    let ok_js: Vec<usize> = js.iter().copied().filter(|&j| j <= done).collect();
    let mut rows = Vec::with_capacity(js.len());
    if let Some(f) = &factored {
        let wd = w.to_double().columns(0..done);
        for metrics in prefix_metric_rows(&wd, &f.q, &f.r, &f.sketched, &ok_js) {
            rows.push(FactorRow { metrics, status: "ok".into() });
        }
    }
    if let Some((_, tag)) = &breakdown {
        for &j in js.iter().filter(|&&j| j > done) {
            rows.push(FactorRow { metrics: nan_row(j), status: tag.clone() });
        }
    }

    let epsilon = match (&factored, sketch.as_dyn(), &breakdown) {
        (Some(f), Some(theta), None) => {
            let tol = 100.0 * (m as f64).powf(1.5) * policy.low.unit_roundoff();
            let e = factorization_errors(&w.to_double(), &f.q, &f.r);
            if e.max_col_rel_err <= tol {
                let basis = householder_qr(&f.q, Precision::Double)?;
                check_embedding(theta, basis.q()).ok()
            } else {
                None
            }
        }
        _ => None,
    };
    let ell = match &sketch {
        RunSketch::Embedded(p) => p.ell(),
        RunSketch::Plain(o) => o.output_dim(),
        RunSketch::None => 0,
    };
    Ok(FactorReport { rows, epsilon, breakdown, n, m, ell })
}
