use std::fmt;
use std::str::FromStr;

use half::f16;

/// Storage format emulated on top of `f64`.
///
/// Values are kept as `f64` but rounded to the nearest representable value of
/// the format (ties to even) after every arithmetic operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// IEEE binary16.
    Half,
    /// IEEE binary32.
    Single,
    /// IEEE binary64.
    Double,
}

impl Precision {
    /// Unit roundoff `2^-t`.
    pub fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Half => 2f64.powi(-11),
            Precision::Single => 2f64.powi(-24),
            Precision::Double => 2f64.powi(-53),
        }
    }

    /// Round `x` to the nearest value representable in this format.
    #[inline(always)]
    pub fn round(self, x: f64) -> f64 {
        match self {
            Precision::Double => x,
            Precision::Single => x as f32 as f64,
            Precision::Half => f16::from_f64(x).to_f64(),
        }
    }

    pub fn is_double(self) -> bool {
        self == Precision::Double
    }

    pub fn name(self) -> &'static str {
        match self {
            Precision::Half => "half",
            Precision::Single => "single",
            Precision::Double => "double",
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "half" => Ok(Precision::Half),
            "single" => Ok(Precision::Single),
            "double" => Ok(Precision::Double),
            other => Err(format!("unknown precision '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyMode {
    Uniform,
    Mixed,
}

/// Pair of precisions used by the randomized algorithms.
///
/// `high` is used for sketch-sized work (norms of sketches, T factors, small
/// triangular solves) and `low` for anything touching n-dimensional vectors,
/// including the application of the sketch itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub high: Precision,
    pub low: Precision,
    pub mode: PolicyMode,
}

impl PrecisionPolicy {
    pub fn uniform(p: Precision) -> Self {
        PrecisionPolicy { high: p, low: p, mode: PolicyMode::Uniform }
    }

    pub fn double() -> Self {
        Self::uniform(Precision::Double)
    }

    /// Mixed policy; fails if `high` is less accurate than `low`.
    pub fn mixed(high: Precision, low: Precision) -> crate::Result<Self> {
        if high.unit_roundoff() > low.unit_roundoff() {
            return Err(crate::Error::InvalidParameter(format!(
                "high precision {high} is coarser than low precision {low}"
            )));
        }
        if high == low {
            return Ok(Self::uniform(high));
        }
        Ok(PrecisionPolicy { high, low, mode: PolicyMode::Mixed })
    }

    /// Half-precision storage and sketching with double-precision small operations.
    pub fn half_double() -> Self {
        PrecisionPolicy { high: Precision::Double, low: Precision::Half, mode: PolicyMode::Mixed }
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::double()
    }
}
