//! Scenario configuration: a strict JSON schema.

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Absent for the top, which lives on its equivalent sphere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceConfig>,
    pub model: ModelName,
    #[serde(default)]
    pub params: Params,
    pub initial: Initial,
    pub integrator: IntegratorConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_d_form: Option<OmegaDForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
    /// Pass threshold for `compare`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceConfig {
    Plane {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Sphere {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Torus {
        #[serde(rename = "R0")]
        major: f64,
        #[serde(rename = "r")]
        minor: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Cylinder {
        #[serde(rename = "r")]
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Saddle {
        kappa: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Custom {
        a11: String,
        a22: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        embedding: Option<[String; 3]>,
        domain: DomainConfig,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    #[serde(default)]
    pub periodic: [bool; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    FullDisk,
    ReducedDisk,
    Magnetic,
    Top,
    Geodesic,
}

impl ModelName {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::FullDisk => "full_disk",
            ModelName::ReducedDisk => "reduced_disk",
            ModelName::Magnetic => "magnetic",
            ModelName::Top => "top",
            ModelName::Geodesic => "geodesic",
        }
    }

    pub fn has_spin(self) -> bool {
        matches!(self, ModelName::FullDisk | ModelName::Top)
    }
}

/// Flat physical parameters; which ones apply depends on the model.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "I_a", default, skip_serializing_if = "Option::is_none")]
    pub i_a: Option<f64>,
    #[serde(rename = "I_d", default, skip_serializing_if = "Option::is_none")]
    pub i_d: Option<f64>,
    #[serde(rename = "R_disk", default, skip_serializing_if = "Option::is_none")]
    pub r_disk: Option<f64>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    #[serde(rename = "I1", default, skip_serializing_if = "Option::is_none")]
    pub i1: Option<f64>,
    #[serde(rename = "I3", default, skip_serializing_if = "Option::is_none")]
    pub i3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
}

impl Params {
    /// `(key, value)` for every key that is set.
    pub fn present(&self) -> Vec<(&'static str, f64)> {
        [
            ("m", self.m),
            ("I_a", self.i_a),
            ("I_d", self.i_d),
            ("R_disk", self.r_disk),
            ("L", self.l),
            ("M", self.big_m),
            ("ell", self.ell),
            ("I1", self.i1),
            ("I3", self.i3),
            ("g", self.g),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

/// Initial conditions. For the top `x` holds the Euler angles `(x1, x2)` and
/// `theta` the spin angle. Spin is given by `theta_dot` or `omega_a`, not both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Initial {
    pub x: [f64; 2],
    pub v: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_dot: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub n_steps: usize,
    #[serde(default = "one")]
    pub sample_every: usize,
    #[serde(default)]
    pub scheme: SchemeName,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeName {
    #[default]
    Rk4,
    Midpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub kind: PotentialKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    None,
    /// `c·cos x1`.
    AxisCosine,
    Expression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaDForm {
    ThirdForm,
    SecondForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: OutputFormat,
    /// Relative paths are taken from the config file's directory. Standard
    /// output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// Column subset, in output order. All columns when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("{e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
