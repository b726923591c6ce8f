//! Path-loss models mapping distance to link gain (the reciprocal of the
//! path loss), and their composition with sampled deployments.

use super::{empirical_profile, Deployment, FadingProfile};
use crate::error::{ensure, Error, Result};

/// Speed of light in m/s.
const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Supported path-loss models. Gains are dimensionless; distances in km.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathLossModel {
    /// Free-space path loss with a fixed link gain G.
    FreeSpace {
        freq_hz: f64,
        gain: f64,
        h_b_m: f64,
        h_m_m: f64,
    },
    /// Two-ray ground reflection: free space below the crossover distance,
    /// d⁴ decay beyond it.
    TwoRay {
        freq_hz: f64,
        gain: f64,
        h_b_m: f64,
        h_m_m: f64,
    },
    /// Okumura-Hata median path loss, suburban correction, f in MHz.
    /// Distances are clamped to the model's 1-20 km validity range.
    OkumuraHataSuburban {
        freq_mhz: f64,
        h_b_m: f64,
        h_m_m: f64,
    },
    /// PL(d) ∝ d^β: gain = ref_gain · d^{-β}.
    PowerLaw { beta: f64, ref_gain: f64 },
}

fn validate(model: &PathLossModel) -> Result<()> {
    match *model {
        PathLossModel::FreeSpace { freq_hz, gain, h_b_m, h_m_m }
        | PathLossModel::TwoRay { freq_hz, gain, h_b_m, h_m_m } => {
            ensure!(freq_hz > 0.0, "freq_hz", "must be positive, got {freq_hz}");
            ensure!(gain > 0.0, "gain", "must be positive, got {gain}");
            ensure!(h_b_m > 0.0 && h_m_m > 0.0, "antenna heights", "must be positive");
        }
        PathLossModel::OkumuraHataSuburban { freq_mhz, h_b_m, h_m_m } => {
            ensure!(freq_mhz > 0.0, "freq_mhz", "must be positive, got {freq_mhz}");
            ensure!(h_b_m > 0.0 && h_m_m > 0.0, "antenna heights", "must be positive");
        }
        PathLossModel::PowerLaw { beta, ref_gain } => {
            ensure!(beta > 0.0, "beta", "must be positive, got {beta}");
            ensure!(ref_gain > 0.0, "ref_gain", "must be positive, got {ref_gain}");
        }
    }
    Ok(())
}

fn free_space_gain(d_m: f64, freq_hz: f64, link_gain: f64) -> f64 {
    let lambda = SPEED_OF_LIGHT / freq_hz;
    let ratio = lambda / (4.0 * std::f64::consts::PI * d_m);
    link_gain * ratio * ratio
}

/// Link gain 1/PL(d) at distance `d_km`.
pub fn path_gain(model: &PathLossModel, d_km: f64) -> Result<f64> {
    validate(model)?;
    if !(d_km > 0.0) || !d_km.is_finite() {
        return Err(Error::DistanceOutOfRange(d_km));
    }
    let g = match *model {
        PathLossModel::FreeSpace { freq_hz, gain, .. } => {
            free_space_gain(d_km * 1e3, freq_hz, gain)
        }
        PathLossModel::TwoRay { freq_hz, gain, h_b_m, h_m_m } => {
            let d_m = d_km * 1e3;
            let lambda = SPEED_OF_LIGHT / freq_hz;
            // Crossover where the two branches coincide, keeping the gain
            // continuous and non-increasing.
            let crossover_m = 4.0 * std::f64::consts::PI * h_b_m * h_m_m / lambda;
            if d_m <= crossover_m {
                free_space_gain(d_m, freq_hz, gain)
            } else {
                gain * h_b_m * h_b_m * h_m_m * h_m_m / (d_m * d_m * d_m * d_m)
            }
        }
        PathLossModel::OkumuraHataSuburban { freq_mhz, h_b_m, h_m_m } => {
            let d = d_km.clamp(1.0, 20.0);
            let lf = freq_mhz.log10();
            let a_hm = (1.1 * lf - 0.7) * h_m_m - (1.56 * lf - 0.8);
            let urban_db = 69.55 + 26.16 * lf - 13.82 * h_b_m.log10() - a_hm
                + (44.9 - 6.55 * h_b_m.log10()) * d.log10();
            let suburban_db = urban_db - 2.0 * (freq_mhz / 28.0).log10().powi(2) - 5.4;
            10f64.powf(-suburban_db / 10.0)
        }
        PathLossModel::PowerLaw { beta, ref_gain } => ref_gain * d_km.powf(-beta),
    };
    Ok(g)
}

/// Empirical fading profile from a deployment: gains at the sampled
/// distances, sorted descending. Cells are ordered by variance, not by
/// distance, so non-monotone models (two-ray oscillation) are re-sorted.
pub fn profile_from_deployment(dep: &Deployment, model: &PathLossModel) -> Result<FadingProfile> {
    if dep.distances_km.is_empty() {
        return Err(Error::EmptyDeployment);
    }
    let mut gains = dep
        .distances_km
        .iter()
        .map(|&d| path_gain(model, d))
        .collect::<Result<Vec<f64>>>()?;
    gains.sort_by(|a, b| b.partial_cmp(a).unwrap());
    empirical_profile(gains)
}
