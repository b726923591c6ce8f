//! Declarative experiment configuration (JSON).
//!
//! Top-level shape: `{ "experiment": <name>, "params": {...}, "seed": N,
//! "output_path": "file.csv" }`. Unknown keys are rejected at both levels,
//! and every run echoes the fully resolved parameter set into its outputs.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub experiment: String,
    #[serde(default = "empty_params")]
    pub params: serde_json::Value,
    pub seed: u64,
    #[serde(default)]
    pub output_path: Option<String>,
}

fn empty_params() -> serde_json::Value {
    serde_json::Value::Object(serde_json::Map::new())
}

/// A parsed experiment with fully resolved parameters.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub output_path: Option<String>,
    pub kind: ExperimentKind,
}

#[derive(Debug, Clone)]
pub enum ExperimentKind {
    Fig3aBoundVsDelta(Fig3aParams),
    Fig3bBoundVsRho(Fig3bParams),
    Fig4DecayPatterns(Fig4Params),
    LpGrowth(LpGrowthParams),
    Thm2Sweep(Thm2SweepParams),
    Cor2Growth(Cor2GrowthParams),
    MappingAudit(MappingAuditParams),
    IdentityAudit(IdentityAuditParams),
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Fig3aBoundVsDelta(_) => "fig3a_bound_vs_delta",
            ExperimentKind::Fig3bBoundVsRho(_) => "fig3b_bound_vs_rho",
            ExperimentKind::Fig4DecayPatterns(_) => "fig4_decay_patterns",
            ExperimentKind::LpGrowth(_) => "lp_growth",
            ExperimentKind::Thm2Sweep(_) => "thm2_sweep",
            ExperimentKind::Cor2Growth(_) => "cor2_growth",
            ExperimentKind::MappingAudit(_) => "mapping_audit",
            ExperimentKind::IdentityAudit(_) => "identity_audit",
        }
    }

    /// Resolved parameters as JSON, for the run manifest and CSV headers.
    pub fn params_json(&self) -> serde_json::Value {
        match self {
            ExperimentKind::Fig3aBoundVsDelta(p) => serde_json::to_value(p),
            ExperimentKind::Fig3bBoundVsRho(p) => serde_json::to_value(p),
            ExperimentKind::Fig4DecayPatterns(p) => serde_json::to_value(p),
            ExperimentKind::LpGrowth(p) => serde_json::to_value(p),
            ExperimentKind::Thm2Sweep(p) => serde_json::to_value(p),
            ExperimentKind::Cor2Growth(p) => serde_json::to_value(p),
            ExperimentKind::MappingAudit(p) => serde_json::to_value(p),
            ExperimentKind::IdentityAudit(p) => serde_json::to_value(p),
        }
        .expect("params serialize")
    }
}

/// 99-point grid 0.01, 0.02, …, 0.99.
pub fn default_unit_grid() -> Vec<f64> {
    (1..=99).map(|i| i as f64 / 100.0).collect()
}

fn default_delta_grid_with_one() -> Vec<f64> {
    let mut g = default_unit_grid();
    g.push(1.0);
    g
}

fn two() -> u32 {
    2
}

fn one_f() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Fig3aParams {
    #[serde(rename = "n_T", default = "two")]
    pub n_t: u32,
    #[serde(rename = "n_R", default = "two")]
    pub n_r: u32,
    /// One output curve pair per ρ.
    #[serde(default = "fig3_rho_values")]
    pub rho_values: Vec<f64>,
    /// Defaults to α₁ = ρ per curve.
    #[serde(default)]
    pub alpha1: Option<f64>,
    #[serde(default = "default_delta_grid_with_one")]
    pub delta_grid: Vec<f64>,
}

fn fig3_rho_values() -> Vec<f64> {
    vec![0.1, 0.5, 0.9]
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Fig3bParams {
    #[serde(rename = "n_T", default = "two")]
    pub n_t: u32,
    #[serde(rename = "n_R", default = "two")]
    pub n_r: u32,
    #[serde(default = "fig3b_delta_values")]
    pub delta_values: Vec<f64>,
    #[serde(default)]
    pub alpha1: Option<f64>,
    #[serde(default = "default_unit_grid")]
    pub rho_grid: Vec<f64>,
}

fn fig3b_delta_values() -> Vec<f64> {
    vec![0.1, 0.5, 0.9, 1.0]
}

fn eta_default() -> f64 {
    3.2
}

fn target_cells_default() -> usize {
    200
}

fn hata_freq_mhz() -> f64 {
    1500.0
}

fn wideband_freq_hz() -> f64 {
    2.4e9
}

fn link_gain_default() -> f64 {
    1e-4
}

fn h_b_default() -> f64 {
    50.0
}

fn h_m_default() -> f64 {
    1.5
}

fn exp_ref_c() -> f64 {
    1e-18
}

fn exp_ref_rho() -> f64 {
    0.9
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Fig4Params {
    /// Cells per square km of the Poisson deployment.
    #[serde(default = "eta_default")]
    pub eta: f64,
    /// Number of cell indices to tabulate.
    #[serde(default = "target_cells_default")]
    pub target_cells: usize,
    #[serde(default = "hata_freq_mhz")]
    pub okumura_hata_freq_mhz: f64,
    #[serde(default = "wideband_freq_hz")]
    pub free_space_freq_hz: f64,
    #[serde(default = "link_gain_default")]
    pub link_gain: f64,
    #[serde(default = "h_b_default")]
    pub h_b_m: f64,
    #[serde(default = "h_m_default")]
    pub h_m_m: f64,
    /// Exponential reference curve c·ρ^ℓ.
    #[serde(default = "exp_ref_c")]
    pub exp_ref_c: f64,
    #[serde(default = "exp_ref_rho")]
    pub exp_ref_rho: f64,
}

fn lp_rho_values() -> Vec<f64> {
    vec![0.5, 0.9]
}

fn lp_a_values() -> Vec<f64> {
    vec![1.0, 2.0]
}

fn snr_decades() -> (u32, u32) {
    (1, 12)
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LpGrowthParams {
    #[serde(default = "lp_rho_values")]
    pub rho_values: Vec<f64>,
    #[serde(default = "lp_a_values")]
    pub a_values: Vec<f64>,
    /// Inclusive decade range of P/σ².
    #[serde(default = "snr_decades")]
    pub snr_decades: (u32, u32),
    #[serde(default = "one_f")]
    pub sigma2: f64,
}

fn one() -> u32 {
    1
}

fn thm2_rho() -> f64 {
    0.9
}

fn thm2_p_grid() -> Vec<f64> {
    vec![1e3, 1e6, 1e9, 1e12]
}

fn xi_grid_size() -> usize {
    200
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Thm2SweepParams {
    #[serde(rename = "n_T", default = "one")]
    pub n_t: u32,
    #[serde(rename = "n_R", default = "one")]
    pub n_r: u32,
    #[serde(default = "one_f")]
    pub delta: f64,
    #[serde(default = "one_f")]
    pub sigma2: f64,
    #[serde(default = "thm2_rho")]
    pub rho: f64,
    #[serde(rename = "P_grid", default = "thm2_p_grid")]
    pub p_grid: Vec<f64>,
    #[serde(default = "xi_grid_size")]
    pub xi_grid_points: usize,
}

fn cor2_a() -> f64 {
    2.0
}

fn cor2_eps() -> f64 {
    0.5
}

fn cor2_loglog_grid() -> Vec<f64> {
    (0..=6).map(|k| 4.0 * 10f64.powi(k)).collect()
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Cor2GrowthParams {
    #[serde(default = "cor2_a")]
    pub a: f64,
    #[serde(default = "cor2_eps")]
    pub eps: f64,
    #[serde(default = "one_f")]
    pub delta: f64,
    #[serde(default = "one_f")]
    pub sigma2: f64,
    /// Sweep points as ln ln P (double-exponential powers).
    #[serde(rename = "loglog_P_grid", default = "cor2_loglog_grid")]
    pub loglog_p_grid: Vec<f64>,
}

fn max_len_default() -> usize {
    16
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MappingAuditParams {
    /// Exhaustive word lengths 1..=max_len.
    #[serde(default = "max_len_default")]
    pub max_len: usize,
}

fn identity_samples() -> u64 {
    1_000_000
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityAuditParams {
    #[serde(default = "identity_samples")]
    pub mc_samples: u64,
}

/// Parse and resolve a JSON config string. Syntax errors keep
/// serde_json's line/column diagnostics; unknown keys are named.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, String> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| format!("config error: {e}"))?;
    let params = raw.params;
    let in_params = |e: serde_json::Error| format!("config error in params: {e}");
    let kind = match raw.experiment.as_str() {
        "fig3a_bound_vs_delta" => {
            ExperimentKind::Fig3aBoundVsDelta(serde_json::from_value(params).map_err(in_params)?)
        }
        "fig3b_bound_vs_rho" => {
            ExperimentKind::Fig3bBoundVsRho(serde_json::from_value(params).map_err(in_params)?)
        }
        "fig4_decay_patterns" => {
            ExperimentKind::Fig4DecayPatterns(serde_json::from_value(params).map_err(in_params)?)
        }
        "lp_growth" => {
            ExperimentKind::LpGrowth(serde_json::from_value(params).map_err(in_params)?)
        }
        "thm2_sweep" => {
            ExperimentKind::Thm2Sweep(serde_json::from_value(params).map_err(in_params)?)
        }
        "cor2_growth" => {
            ExperimentKind::Cor2Growth(serde_json::from_value(params).map_err(in_params)?)
        }
        "mapping_audit" => {
            ExperimentKind::MappingAudit(serde_json::from_value(params).map_err(in_params)?)
        }
        "identity_audit" => {
            ExperimentKind::IdentityAudit(serde_json::from_value(params).map_err(in_params)?)
        }
        other => {
            return Err(format!(
                "config error: unknown experiment {other:?}; expected one of \
                 fig3a_bound_vs_delta, fig3b_bound_vs_rho, fig4_decay_patterns, lp_growth, \
                 thm2_sweep, cor2_growth, mapping_audit, identity_audit"
            ))
        }
    };
    Ok(ExperimentConfig {
        seed: raw.seed,
        output_path: raw.output_path,
        kind,
    })
}
