//! Experiment configuration: one TOML file drives every subcommand.
//! Configs round-trip losslessly through serialization and hash to a
//! stable digest recorded next to every output.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{field_from_csv, field_from_profiles, FieldPair, FieldProfile, Grid1D};
use crate::pde::EvolutionConfig;
use crate::reductions::ReductionKind;
use crate::scattering::Rectangle;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid1D> {
        Grid1D::new(self.x_min, self.x_max, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct FieldSpec {
    /// five-column complex CSV (x, Re u, Im u, Re v, Im v); overrides profiles
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<FieldProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<FieldProfile>,
}

impl FieldSpec {
    pub fn build(&self, grid: Grid1D) -> Result<FieldPair> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)?;
            return field_from_csv(grid, &text);
        }
        let u = self.u.clone().unwrap_or(FieldProfile::Zero);
        let v = self.v.clone().unwrap_or(FieldProfile::Zero);
        Ok(field_from_profiles(grid, &u, &v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSpec {
    pub lambda_max: f64,
    pub m: usize,
}

fn default_edge_tol() -> f64 {
    1e-8
}

fn default_samples_per_side() -> usize {
    48
}

fn default_rectangle() -> Rectangle {
    Rectangle {
        re_min: -2.0,
        re_max: 2.0,
        im_min: 0.01,
        im_max: 2.0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSpec {
    /// rays x = -12 lambda_0^2 t
    pub lambda0: Vec<f64>,
    pub times: Vec<f64>,
    /// abort threshold for the outer-band amplitude during evolution
    #[serde(default = "default_edge_tol")]
    pub edge_tol: f64,
    /// solitonless certification box in the upper half plane
    #[serde(default = "default_rectangle")]
    pub rectangle: Rectangle,
    #[serde(default = "default_samples_per_side")]
    pub samples_per_side: usize,
}

fn default_reduction_snapshots() -> usize {
    5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionSpec {
    pub kind: ReductionKind,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_reduction_snapshots")]
    pub snapshots: usize,
    /// pass threshold on the max deviation
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    pub lambda0: f64,
    pub times: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct AsymptoteSpec {
    /// read gamma from a previously emitted scattering.csv
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_file: Option<String>,
    /// explicit (x, t) list
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<RaySpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub grid: GridSpec,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scattering: Option<ScatteringSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolution: Option<EvolutionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptote: Option<AsymptoteSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("TOML parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 over the canonical serialization.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_toml_string().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid.build()?;
        if let Some(s) = &self.scattering {
            if s.m < 8 || s.m % 2 != 0 {
                return Err(Error::Config(format!("scattering.m = {} must be even and >= 8", s.m)));
            }
            if !(s.lambda_max > 0.0) {
                return Err(Error::Config("scattering.lambda_max must be positive".into()));
            }
        }
        if let Some(e) = &self.evolution {
            e.validate(&grid)?;
        }
        if let Some(c) = &self.comparison {
            let t_end = self
                .evolution
                .as_ref()
                .ok_or_else(|| Error::Config("comparison requires [evolution]".into()))?
                .t_end;
            for &t in &c.times {
                if t <= 0.0 || t > t_end + 1e-12 {
                    return Err(Error::Config(format!(
                        "comparison time {t} outside (0, t_end = {t_end}]"
                    )));
                }
            }
            let s = self
                .scattering
                .as_ref()
                .ok_or_else(|| Error::Config("comparison requires [scattering]".into()))?;
            let reach = s.lambda_max * (1.0 - 0.5 / s.m as f64);
            for &l in &c.lambda0 {
                if l <= 0.0 || l > reach {
                    return Err(Error::Config(format!(
                        "ray lambda0 = {l} outside the table range (0, {reach}]"
                    )));
                }
            }
            c.rectangle.validate()?;
        }
        if let Some(r) = &self.reduction {
            if r.dt <= 0.0 || r.t_end <= 0.0 || r.snapshots == 0 {
                return Err(Error::Config("reduction needs positive dt, t_end, snapshots".into()));
            }
            if !(r.tolerance > 0.0) {
                return Err(Error::Config("reduction.tolerance must be positive".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
seed = 7

[grid]
x_min = -60.0
x_max = 60.0
n = 512

[field.u]
profile = "sech"
amplitude = 0.3

[field.v]
profile = "zero"

[scattering]
lambda_max = 2.0
m = 16

[evolution]
dt = 0.001
t_end = 4.0
record_times = [2.0, 4.0]

[comparison]
lambda0 = [0.5]
times = [2.0, 4.0]
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.seed, 7);
        let text = cfg.to_toml_string();
        let again = ExperimentConfig::from_toml_str(&text).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.hash(), again.hash());
    }

    #[test]
    fn hash_changes_with_any_field() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let mut other = cfg.clone();
        other.seed = 8;
        assert_ne!(cfg.hash(), other.hash());
        let mut other2 = cfg.clone();
        other2.grid.n = 1024;
        assert_ne!(cfg.hash(), other2.hash());
    }

    #[test]
    fn rejects_inconsistent_sections() {
        let mut bad = String::from(SAMPLE);
        bad.push_str("\n[reduction]\nkind = \"reverse_time\"\ndt = -0.1\nt_end = 5.0\ntolerance = 1e-6\n");
        assert!(ExperimentConfig::from_toml_str(&bad).is_err());

        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let mut c = cfg.clone();
        c.comparison.as_mut().unwrap().times = vec![100.0];
        assert!(c.validate().is_err());
        let mut c2 = cfg.clone();
        c2.comparison.as_mut().unwrap().lambda0 = vec![3.5];
        assert!(c2.validate().is_err());
    }

    #[test]
    fn field_spec_builds_profiles() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let grid = cfg.grid.build().unwrap();
        let fp = cfg.field.build(grid).unwrap();
        assert!(fp.u[256].norm() > 0.2);
        assert_eq!(fp.v[256].norm(), 0.0);
    }
}
