//! JSON mirrors of core inputs and flag parsers.

use crate::error::CliError;
use negdim::cosmo::{ContinuityReading, CosmoParams, Matter, Potential, Weight};
use negdim::ndim::LoopIntegralSpec;
use negdim::Dimension;
use serde::Deserialize;
use std::path::Path;

/// `RE` or `RE,IM`.
pub fn parse_dimension(s: &str) -> Result<Dimension, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let p = |t: &str| t.parse::<f64>().map_err(|e| format!("bad dimension component {t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Dimension::real(p(re)?)),
        [re, im] => Ok(Dimension::complex(p(re)?, p(im)?)),
        _ => Err(format!("dimension must be RE or RE,IM, got {s:?}")),
    }
}

/// Comma-separated reals; empty string is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"))).collect()
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DimensionFile {
    Real(f64),
    Pair([f64; 2]),
}

/// `{"powers": [...], "masses2": [...], "scales2": [...], "dimension": 3.0 | [re, im]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopIntegralFile {
    powers: Vec<f64>,
    #[serde(default)]
    masses2: Vec<f64>,
    #[serde(default)]
    scales2: Vec<f64>,
    dimension: DimensionFile,
}

impl LoopIntegralFile {
    pub fn into_spec(self) -> Result<LoopIntegralSpec, CliError> {
        let dim = match self.dimension {
            DimensionFile::Real(d) => Dimension::real(d),
            DimensionFile::Pair([re, im]) => Dimension::complex(re, im),
        };
        Ok(LoopIntegralSpec::new(self.powers, self.masses2, self.scales2, dim)?)
    }
}

fn one() -> f64 {
    1.0
}

fn four() -> u32 {
    4
}

#[derive(Debug, Deserialize, Default)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
enum WeightFile {
    #[default]
    Unit,
    Constant {
        value: f64,
    },
    Plus {
        #[serde(default = "one")]
        amplitude: f64,
        beta: f64,
    },
    Minus {
        #[serde(default = "one")]
        amplitude: f64,
        beta: f64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
enum PotentialFile {
    Quadratic { m2: f64 },
    Constant { v0: f64 },
    Exponential { v0: f64, slope: f64 },
}

#[derive(Debug, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum MatterFile {
    #[default]
    Fluid,
    Scalar {
        potential: PotentialFile,
    },
}

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum ContinuityFile {
    #[default]
    Hubble,
    Hdot,
}

/// JSON mirror of the cosmology parameters; omitted fields take the flat dust defaults.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosmoParamsFile {
    #[serde(default = "one")]
    kappa2: f64,
    #[serde(default)]
    lambda: f64,
    #[serde(default)]
    curvature: i8,
    #[serde(default = "four", rename = "D_t")]
    dt_dim: u32,
    #[serde(default)]
    eos_w: f64,
    #[serde(default)]
    weight: WeightFile,
    #[serde(default)]
    omega: f64,
    #[serde(default)]
    matter: MatterFile,
    #[serde(default)]
    continuity: ContinuityFile,
    #[serde(default)]
    derivative_coupling: Option<f64>,
}

impl Default for CosmoParamsFile {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

impl CosmoParamsFile {
    pub fn into_params(self) -> CosmoParams {
        let weight = match self.weight {
            WeightFile::Unit => Weight::Constant(1.0),
            WeightFile::Constant { value } => Weight::Constant(value),
            WeightFile::Plus { amplitude, beta } => Weight::Plus { amplitude, beta },
            WeightFile::Minus { amplitude, beta } => Weight::Minus { amplitude, beta },
        };
        let matter = match self.matter {
            MatterFile::Fluid => Matter::Fluid,
            MatterFile::Scalar { potential } => Matter::Scalar(match potential {
                PotentialFile::Quadratic { m2 } => Potential::Quadratic { m2 },
                PotentialFile::Constant { v0 } => Potential::Constant { v0 },
                PotentialFile::Exponential { v0, slope } => Potential::Exponential { v0, slope },
            }),
        };
        CosmoParams {
            kappa2: self.kappa2,
            lambda: self.lambda,
            curvature: self.curvature,
            dt_dim: self.dt_dim,
            eos_w: self.eos_w,
            weight,
            omega: self.omega,
            matter,
            continuity: match self.continuity {
                ContinuityFile::Hubble => ContinuityReading::Hubble,
                ContinuityFile::Hdot => ContinuityReading::Hdot,
            },
            derivative_coupling: self.derivative_coupling,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}
