//! Experiment harness for randomized Householder QR.
//!
//! Generates the C-matrix test input, reads and writes Matrix Market files,
//! runs factorization sweeps and GMRES solves, and writes their metrics as CSV.

pub mod cmatrix;
pub mod config;
pub mod factor;
pub mod gmres;
pub mod mm;
pub mod output;

pub use cmatrix::{cfunc, gen_cmatrix};
pub use config::{Algo, ConfigError, ExperimentConfig, GmresAlgo, GmresConfig, MatrixSource, PrecisionArg, RhsSpec};
pub use factor::{run_factor_experiment, FactorReport, FactorRow};
pub use gmres::{make_rhs, run_gmres_experiment, GmresReport, GmresRow, MmOperator};
pub use mm::{parse_matrix_market, read_matrix_market, write_matrix_market, MmError, MmMatrix};
pub use output::{fmt_sig17, write_factor_csv, write_gmres_csv};
