//! Run configuration: the on-disk TOML/JSON schema and its mapping onto the
//! solver library's parameter types.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use firmcycle::distributions::{ModelParams, ParetoEntrantDist};
use firmcycle::quant_transition::{PolicyLevers, ShockPath};

/// Artifact serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Period length of the calibration presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Frequency {
    Annual,
    Quarterly,
}

/// Model parameter block. Field names follow the published external schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub sigma: f64,
    pub q: f64,
    pub f_c: f64,
    pub f_e: f64,
    #[serde(rename = "market_size_I")]
    pub market_size_i: f64,
    #[serde(rename = "labor_endowment_L")]
    pub labor_endowment_l: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default = "default_beta")]
    pub beta_firm: f64,
    #[serde(default = "default_beta")]
    pub beta_planner: f64,
}

fn default_beta() -> f64 {
    0.9
}

/// Entrant productivity law block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistSection {
    pub z_min: f64,
    pub shape_k: f64,
}

/// Fixed-cost shock path block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockSection {
    pub f0: f64,
    #[serde(default)]
    pub epsilon: f64,
    pub alpha: f64,
    pub horizon: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_e_path: Option<Vec<f64>>,
}

/// Policy lever block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PolicySection {
    #[serde(default)]
    pub theta_ss: f64,
    #[serde(default)]
    pub theta_cyc: f64,
}

/// Three-phase cycle / depth-sweep block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleSection {
    /// Calm-phase fixed cost; defaults to the model's `f_c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_low: Option<f64>,
    /// Crisis-phase fixed cost (required by `cycle`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_high: Option<f64>,
    /// Market-clearing mode: "pe" or "ge" (default "ge").
    #[serde(default = "default_mode")]
    pub mode: String,
    /// Explicit crisis-cost grid for `sweep`; auto-generated when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_high_grid: Option<Vec<f64>>,
}

fn default_mode() -> String {
    "ge".to_string()
}

/// Synthetic-panel block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PanelSection {
    #[serde(default = "default_n_industries")]
    pub n_industries: usize,
    #[serde(default = "default_shock_lo")]
    pub shock_lo: f64,
    #[serde(default = "default_shock_hi")]
    pub shock_hi: f64,
}

fn default_n_industries() -> usize {
    40
}
fn default_shock_lo() -> f64 {
    0.01
}
fn default_shock_hi() -> f64 {
    0.25
}

impl Default for PanelSection {
    fn default() -> Self {
        PanelSection {
            n_industries: default_n_industries(),
            shock_lo: default_shock_lo(),
            shock_hi: default_shock_hi(),
        }
    }
}

/// Full run configuration. `model`/`distribution` may be omitted when
/// `scenario` names a calibration preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistSection>,
    /// Calibration preset: "calibrated-annual" or "calibrated-quarterly".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shock: Option<ShockSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<PolicySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel: Option<PanelSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_exit_share: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period_frequency: Option<Frequency>,
}

impl RunConfig {
    /// Parse a config file, dispatching on extension (TOML unless `.json`).
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text)
                .map_err(|e| format!("invalid JSON config {}: {e}", path.display()))
        } else {
            toml::from_str(&text)
                .map_err(|e| format!("invalid TOML config {}: {e}", path.display()))
        }
    }

    /// Resolve model parameters and entrant law, applying the scenario preset
    /// (with the frequency conversion applied exactly once, inside the
    /// preset) when explicit sections are absent.
    pub fn resolve(
        &self,
        frequency: Option<Frequency>,
    ) -> Result<(ModelParams, ParetoEntrantDist), String> {
        let preset = |name: &str| -> Result<(ModelParams, ParetoEntrantDist), String> {
            let freq = frequency
                .or(self.period_frequency)
                .unwrap_or(Frequency::Annual);
            let params = match (name, freq) {
                ("calibrated-annual", _) => ModelParams::calibrated_annual(),
                ("calibrated-quarterly", _) => ModelParams::calibrated_quarterly(),
                ("calibrated", Frequency::Annual) => ModelParams::calibrated_annual(),
                ("calibrated", Frequency::Quarterly) => ModelParams::calibrated_quarterly(),
                _ => return Err(format!("unknown scenario preset '{name}'")),
            };
            Ok((params, ModelParams::calibrated_dist()))
        };
        let params = match (&self.model, &self.scenario) {
            (Some(m), _) => ModelParams {
                sigma: m.sigma,
                q: m.q,
                f_c: m.f_c,
                f_e: m.f_e,
                market_size_i: m.market_size_i,
                labor_endowment_l: m.labor_endowment_l,
                delta: m.delta,
                beta_firm: m.beta_firm,
                beta_planner: m.beta_planner,
            },
            (None, Some(s)) => preset(s)?.0,
            (None, None) => {
                return Err("config needs a [model] section or a scenario preset".into())
            }
        };
        let dist = match (&self.distribution, &self.scenario) {
            (Some(d), _) => ParetoEntrantDist::new(d.z_min, d.shape_k)
                .map_err(|e| format!("invalid distribution: {e}"))?,
            (None, Some(s)) => preset(s)?.1,
            (None, None) => {
                return Err("config needs a [distribution] section or a scenario preset".into())
            }
        };
        params.validate().map_err(|e| format!("invalid model parameters: {e}"))?;
        Ok((params, dist))
    }

    pub fn shock_path(&self) -> Result<ShockPath, String> {
        let s = self
            .shock
            .as_ref()
            .ok_or_else(|| "config needs a [shock] section for this command".to_string())?;
        let path = ShockPath {
            f0: s.f0,
            epsilon: s.epsilon,
            alpha: s.alpha,
            horizon: s.horizon,
            f_e_path: s.f_e_path.clone(),
        };
        path.validate().map_err(|e| format!("invalid shock path: {e}"))?;
        Ok(path)
    }

    pub fn policy_levers(&self) -> PolicyLevers {
        let p = self.policy.unwrap_or_default();
        PolicyLevers { theta_ss: p.theta_ss, theta_cyc: p.theta_cyc }
    }
}
