use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rhqr_core::sketch::SketchKind;
use rhqr_core::{Precision, PrecisionPolicy};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown {what} '{value}'")]
    Unknown { what: &'static str, value: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

macro_rules! tag_enum {
    ($name:ident, $what:literal, { $($variant:ident => $tag:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn tag(self) -> &'static str {
                match self { $($name::$variant => $tag),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.tag())
            }
        }

        impl FromStr for $name {
            type Err = ConfigError;
            fn from_str(s: &str) -> Result<Self, ConfigError> {
                match s {
                    $($tag => Ok($name::$variant),)+
                    other => Err(ConfigError::Unknown { what: $what, value: other.to_string() }),
                }
            }
        }
    };
}

tag_enum!(Algo, "algorithm", {
    RhqrLeft => "rhqr-left",
    RhqrRight => "rhqr-right",
    RhqrBlock => "rhqr-block",
    RecRhqr => "rec-rhqr",
    TrimLeft => "trim-left",
    TrimRight => "trim-right",
    Rgs => "rgs",
    Blas2Rgs => "blas2-rgs",
    Cgs => "cgs",
    Mgs => "mgs",
    Hqr => "hqr",
    RCholQr => "rcholqr",
});

impl Algo {
    /// Sketches `[I_m; Ω]` with `Ω` acting on the last `n − m` rows.
    pub fn uses_embedded_sketch(self) -> bool {
        matches!(self, Algo::RhqrLeft | Algo::RhqrRight | Algo::RhqrBlock | Algo::RecRhqr)
    }

    pub fn is_deterministic(self) -> bool {
        matches!(self, Algo::Cgs | Algo::Mgs | Algo::Hqr)
    }
}

tag_enum!(GmresAlgo, "GMRES variant", {
    Rhqr => "rhqr",
    Rgs => "rgs",
    Mgs => "mgs",
});

tag_enum!(PrecisionArg, "precision", {
    Half => "half",
    Single => "single",
    Double => "double",
    Mixed => "mixed",
});

impl PrecisionArg {
    /// `mixed` stores and sketches in half and does the small operations in double.
    pub fn policy(self) -> PrecisionPolicy {
        match self {
            PrecisionArg::Half => PrecisionPolicy::uniform(Precision::Half),
            PrecisionArg::Single => PrecisionPolicy::uniform(Precision::Single),
            PrecisionArg::Double => PrecisionPolicy::double(),
            PrecisionArg::Mixed => PrecisionPolicy::half_double(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSource {
    Generated { n: usize, m: usize },
    File(PathBuf),
}

/// One factorization sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub sketch: SketchKind,
    /// Sketch rows; `None` means `4m`.
    pub ell: Option<usize>,
    /// Nonzeros per column for sparse-sign sketches.
    pub nnz_per_col: Option<usize>,
    pub seed: u64,
    pub precision: PrecisionArg,
    pub source: MatrixSource,
    /// Metric stride: rows are emitted for `j = k, 2k, …` and the last column.
    pub every: usize,
    /// Panel width for `rhqr-block`.
    pub block: usize,
    pub out: Option<PathBuf>,
    pub deterministic: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algo: Algo::RhqrLeft,
            sketch: SketchKind::Srht,
            ell: None,
            nnz_per_col: None,
            seed: 0,
            precision: PrecisionArg::Double,
            source: MatrixSource::Generated { n: 4096, m: 300 },
            every: 10,
            block: rhqr_core::rhqr::DEFAULT_PANEL_WIDTH,
            out: None,
            deterministic: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.every == 0 {
            return Err(ConfigError::Invalid("metric stride must be at least 1".into()));
        }
        if self.ell == Some(0) {
            return Err(ConfigError::Invalid("sketch size must be at least 1".into()));
        }
        if self.block == 0 {
            return Err(ConfigError::Invalid("panel width must be at least 1".into()));
        }
        if let MatrixSource::Generated { n, m } = self.source {
            if n < 2 || m < 2 || m > n {
                return Err(ConfigError::Invalid(format!("generated matrix needs 2 ≤ m ≤ n, got {n}x{m}")));
            }
        }
        Ok(())
    }

    pub fn ell_for(&self, m: usize) -> usize {
        self.ell.unwrap_or(4 * m)
    }

    /// Column counts at which metrics are reported.
    pub fn sample_points(&self, m: usize) -> Vec<usize> {
        let mut js: Vec<usize> = (1..=m / self.every).map(|i| i * self.every).collect();
        if js.last() != Some(&m) && m > 0 {
            js.push(m);
        }
        js
    }
}

/// Right-hand side of a GMRES run.
#[derive(Clone, Debug, PartialEq)]
pub enum RhsSpec {
    Ones,
    Random(u64),
    File(PathBuf),
}

impl FromStr for RhsSpec {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        if s == "ones" {
            return Ok(RhsSpec::Ones);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(RhsSpec::Random)
                .map_err(|_| ConfigError::Invalid(format!("bad seed in '{s}'")));
        }
        if let Some(p) = s.strip_prefix("file:") {
            return Ok(RhsSpec::File(PathBuf::from(p)));
        }
        Err(ConfigError::Unknown { what: "right-hand side", value: s.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GmresConfig {
    pub algo: GmresAlgo,
    pub sketch: SketchKind,
    /// Sketch rows; `None` means `4(iters + 1)`.
    pub ell: Option<usize>,
    pub nnz_per_col: Option<usize>,
    pub seed: u64,
    pub iters: usize,
    pub precision: PrecisionArg,
    pub rhs: RhsSpec,
    pub deterministic: bool,
}

impl Default for GmresConfig {
    fn default() -> Self {
        GmresConfig {
            algo: GmresAlgo::Rhqr,
            sketch: SketchKind::Gaussian,
            ell: None,
            nnz_per_col: None,
            seed: 0,
            iters: 30,
            precision: PrecisionArg::Double,
            rhs: RhsSpec::Ones,
            deterministic: false,
        }
    }
}

impl GmresConfig {
    pub fn ell(&self) -> usize {
        self.ell.unwrap_or(4 * (self.iters + 1))
    }
}
