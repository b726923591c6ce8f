//! Closed-form capacity bounds and their auxiliary quantities.
//!
//! All internal values are in nats; reports expose bits alongside.

mod lower;
mod lozano;
mod lp;

pub use lower::{
    corollary2_growth_check, corollary2_xi, corollary2_xi_at_loglog, optimize_theorem2_over_xi,
    theorem2_lower_bound, theorem2_lower_bound_at_loglog, xi_grid, GrowthPoint, GrowthReport,
    LowerBoundPoint, PowerPoint,
};
pub use lozano::{
    lozano_bursty_upper_bound, lozano_upper_bound, GainMatrix, LozanoBurstyReport, LozanoEstimate,
};
pub use lp::{lp_double_exponential, lp_double_exponential_at_loglog, lp_exponential_closed_form, min_lp};

use crate::error::{ensure, Result};
use crate::special::ln_gamma;

/// Cell and power parameters feeding every bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    /// Users per cell.
    pub n_t: u32,
    /// Receive antennas at the base station.
    pub n_r: u32,
    /// Activity probability in (0, 1].
    pub delta: f64,
    /// Noise variance.
    pub sigma2: f64,
    /// Per-user transmit power.
    pub p: f64,
}

impl NetworkConfig {
    pub fn new(n_t: u32, n_r: u32, delta: f64, sigma2: f64, p: f64) -> Result<Self> {
        ensure!(n_t >= 1, "n_T", "need at least one user, got {n_t}");
        ensure!(n_r >= 1, "n_R", "need at least one antenna, got {n_r}");
        ensure!(delta > 0.0 && delta <= 1.0, "delta", "must lie in (0, 1], got {delta}");
        ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
        ensure!(p >= 0.0, "P", "must be nonnegative, got {p}");
        Ok(Self { n_t, n_r, delta, sigma2, p })
    }

    /// Signal-to-noise ratio P/σ²; derived, never stored.
    pub fn snr(&self) -> f64 {
        self.p / self.sigma2
    }
}

/// One additive component of a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTerm {
    pub name: &'static str,
    pub nats: f64,
}

/// A bound value with its per-term breakdown and input echo.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub nats: f64,
    pub bits: f64,
    pub terms: Vec<BoundTerm>,
    pub params: Vec<(&'static str, f64)>,
}

impl BoundReport {
    fn from_terms(terms: Vec<BoundTerm>, params: Vec<(&'static str, f64)>) -> Self {
        let nats: f64 = terms.iter().map(|t| t.nats).sum();
        BoundReport {
            nats,
            bits: nats / std::f64::consts::LN_2,
            terms,
            params,
        }
    }
}

/// η_max = max(1/α₁, 1/ρ), the constant entering the converse bound.
pub fn eta_max(alpha1: f64, rho: f64) -> Result<f64> {
    ensure!(alpha1 > 0.0 && alpha1.is_finite(), "alpha1", "must be positive, got {alpha1}");
    ensure!(rho > 0.0 && rho < 1.0, "rho", "must lie in (0, 1), got {rho}");
    Ok((1.0 / alpha1).max(1.0 / rho))
}

/// The common second addend of both upper bounds, split into its four
/// pieces and scaled by the activity factor 1 - (1-δ)^{n_T}.
fn activity_terms(cfg: &NetworkConfig, eta: f64) -> Vec<BoundTerm> {
    let n_r = cfg.n_r as f64;
    let activity = 1.0 - (1.0 - cfg.delta).powi(cfg.n_t as i32);
    vec![
        BoundTerm {
            name: "gamma_term",
            nats: activity * (std::f64::consts::PI / n_r).ln() - activity * ln_gamma(n_r),
        },
        BoundTerm {
            name: "antenna_term",
            nats: activity * n_r * (n_r.ln() - 1.0),
        },
        BoundTerm {
            name: "eta_half_log",
            nats: activity * 0.5 * n_r * eta.ln(),
        },
        BoundTerm {
            name: "eta_log1p",
            nats: activity * n_r * eta.ln_1p(),
        },
    ]
}

/// Converse bound on the channel capacity under the variance-ratio
/// condition α_{ℓ+1}/α_ℓ ≥ ρ. Independent of the transmit power.
pub fn theorem1_upper_bound(cfg: &NetworkConfig, rho: f64, alpha1: f64) -> Result<BoundReport> {
    let eta = eta_max(alpha1, rho)?;
    let n_r = cfg.n_r as f64;
    let burstiness = n_r * ((2.0 - cfg.delta).powi(cfg.n_t as i32) - 1.0) * 1.5 * (1.0 / rho).ln();
    let mut terms = vec![BoundTerm { name: "burstiness_term", nats: burstiness }];
    terms.extend(activity_terms(cfg, eta));
    Ok(BoundReport::from_terms(
        terms,
        vec![
            ("n_T", cfg.n_t as f64),
            ("n_R", cfg.n_r as f64),
            ("delta", cfg.delta),
            ("rho", rho),
            ("alpha1", alpha1),
            ("eta_max", eta),
        ],
    ))
}

/// Converse bound on the exchangeable capacity: identical to the channel
/// capacity bound except the burstiness term grows linearly in n_T.
pub fn corollary1_upper_bound(cfg: &NetworkConfig, rho: f64, alpha1: f64) -> Result<BoundReport> {
    let eta = eta_max(alpha1, rho)?;
    let n_r = cfg.n_r as f64;
    let burstiness =
        n_r * cfg.n_t as f64 * (1.0 - cfg.delta) * 1.5 * (1.0 / rho).ln();
    let mut terms = vec![BoundTerm { name: "burstiness_term", nats: burstiness }];
    terms.extend(activity_terms(cfg, eta));
    Ok(BoundReport::from_terms(
        terms,
        vec![
            ("n_T", cfg.n_t as f64),
            ("n_R", cfg.n_r as f64),
            ("delta", cfg.delta),
            ("rho", rho),
            ("alpha1", alpha1),
            ("eta_max", eta),
        ],
    ))
}

/// Probability that a cell's active-user set contains a fixed set of j
/// intended users: δ^j.
pub fn jinterfering_prob_thm(j: u32, delta: f64) -> Result<f64> {
    ensure!(j >= 1, "j", "active count starts at 1");
    ensure!(delta > 0.0 && delta <= 1.0, "delta", "must lie in (0, 1], got {delta}");
    Ok(delta.powi(j as i32))
}

/// Probability that a cell has at least j active users out of n_T:
/// Pr[G >= j] for G ~ Bin(n_T, δ), by direct summation.
pub fn jinterfering_prob_cor(j: u32, n_t: u32, delta: f64) -> Result<f64> {
    ensure!(j >= 1 && j <= n_t, "j", "need 1 <= j <= n_T, got j={j}, n_T={n_t}");
    ensure!(delta > 0.0 && delta <= 1.0, "delta", "must lie in (0, 1], got {delta}");
    Ok((j..=n_t).map(|k| binomial_pmf(n_t, k, delta)).sum())
}

/// Pr[G = k] for G ~ Bin(n, δ).
pub fn binomial_pmf(n: u32, k: u32, delta: f64) -> f64 {
    assert!(k <= n);
    if delta == 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let ln_choose = ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0);
    (ln_choose + k as f64 * delta.ln() + (n - k) as f64 * (1.0 - delta).ln()).exp()
}

/// Σ_{j=1}^{n_T} Pr[G=j] (1 - Pr[G>=j]) / Pr[G>=j], the quantity bounded by
/// n_T(1-δ) in the exchangeable-capacity averaging step.
pub fn binomial_telescoping_sum(n_t: u32, delta: f64) -> Result<f64> {
    ensure!(delta > 0.0 && delta <= 1.0, "delta", "must lie in (0, 1], got {delta}");
    let mut acc = 0.0;
    for j in 1..=n_t {
        let tail = jinterfering_prob_cor(j, n_t, delta)?;
        acc += binomial_pmf(n_t, j, delta) * (1.0 - tail) / tail;
    }
    Ok(acc)
}

/// Binary entropy in nats; 0 at both endpoints.
pub fn binary_entropy(delta: f64) -> f64 {
    assert!((0.0..=1.0).contains(&delta));
    if delta == 0.0 || delta == 1.0 {
        return 0.0;
    }
    -delta * delta.ln() - (1.0 - delta) * (1.0 - delta).ln()
}
