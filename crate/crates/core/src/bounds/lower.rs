//! Bursty-signaling lower bound and its double-exponential growth
//! corollary.
//!
//! Asymptotic sweeps are parametrized by t = ln ln P: a 64-bit float caps
//! ln ln P at about 6.56, far short of where the survival factor
//! (1-δξ)^{L_P} approaches 1, so power points carry either a raw power or
//! its double logarithm.

use super::{lp::lp_double_exponential_at_loglog, min_lp, NetworkConfig};
use crate::error::{ensure, Result};
use crate::fading::FadingProfile;
use crate::special::EULER_GAMMA;

/// A transmit-power sweep point: raw, or as t = ln ln P when the power is
/// too large for f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerPoint {
    Power(f64),
    LogLog(f64),
}

impl PowerPoint {
    /// t = ln ln P.
    pub fn loglog(&self) -> f64 {
        match *self {
            PowerPoint::Power(p) => p.ln().ln(),
            PowerPoint::LogLog(t) => t,
        }
    }

    pub fn raw(&self) -> Option<f64> {
        match *self {
            PowerPoint::Power(p) => Some(p),
            PowerPoint::LogLog(_) => None,
        }
    }
}

/// One evaluation of the bursty-signaling lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundPoint {
    /// t = ln ln P of the evaluated power.
    pub loglog_p: f64,
    /// Burstiness probability used.
    pub xi: f64,
    /// Truncation depth used.
    pub l_p: u64,
    /// Raw bound value in nats (may be negative).
    pub value_nats: f64,
    /// max(0, value): rates are nonnegative, the formula is not.
    pub value_clamped_nats: f64,
    /// Set when P <= e, where ln ln P is nonpositive.
    pub small_power_flag: bool,
}

/// Bursty-signaling lower bound
/// δξ(1-δξ)^{L_P} (ln ln P - γ - 1 - 2 ln(1+√2 σ)).
///
/// `l_p` must satisfy the residual-interference condition for the active
/// profile; this function evaluates the formula for the given depth.
pub fn theorem2_lower_bound(
    cfg: &NetworkConfig,
    xi: f64,
    l_p: u64,
    p: f64,
) -> Result<LowerBoundPoint> {
    ensure!(p > 1.0 && p.is_finite(), "P", "need P > 1 for ln ln P, got {p}");
    theorem2_lower_bound_at_loglog(cfg, xi, l_p, p.ln().ln())
}

/// Same bound with the power given as t = ln ln P.
pub fn theorem2_lower_bound_at_loglog(
    cfg: &NetworkConfig,
    xi: f64,
    l_p: u64,
    loglog_p: f64,
) -> Result<LowerBoundPoint> {
    ensure!(xi > 0.0 && xi <= 1.0, "xi", "must lie in (0, 1], got {xi}");
    ensure!(loglog_p.is_finite(), "P", "ln ln P must be finite, got {loglog_p}");
    let sigma = cfg.sigma2.sqrt();
    let rate_floor = loglog_p - EULER_GAMMA - 1.0 - 2.0 * (1.0 + std::f64::consts::SQRT_2 * sigma).ln();
    let prefactor = cfg.delta * xi;
    let survival = survival_factor(prefactor, l_p);
    let value = prefactor * survival * rate_floor;
    Ok(LowerBoundPoint {
        loglog_p,
        xi,
        l_p,
        value_nats: value,
        value_clamped_nats: value.max(0.0),
        small_power_flag: loglog_p <= 0.0,
    })
}

/// (1-δξ)^{L_P}, computed in log space for large depths.
fn survival_factor(delta_xi: f64, l_p: u64) -> f64 {
    if delta_xi >= 1.0 {
        return if l_p == 0 { 1.0 } else { 0.0 };
    }
    ((l_p as f64) * (-delta_xi).ln_1p()).exp()
}

/// Default ξ optimization grid: `n` log-spaced points covering [1e-6, 1].
pub fn xi_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let lo = 1e-6f64.ln();
    let hi = 0.0f64;
    (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Maximize the lower bound over the ξ grid at a fixed power. The
/// truncation depth comes from the residual-interference oracle and does
/// not depend on ξ.
pub fn optimize_theorem2_over_xi(
    cfg: &NetworkConfig,
    profile: &FadingProfile,
    p: f64,
    grid: &[f64],
) -> Result<LowerBoundPoint> {
    ensure!(!grid.is_empty(), "grid", "xi grid must be non-empty");
    let l_p = min_lp(profile, p, cfg.sigma2)?;
    let mut best: Option<LowerBoundPoint> = None;
    for &xi in grid {
        let point = theorem2_lower_bound(cfg, xi, l_p, p)?;
        if best.map_or(true, |b| point.value_nats > b.value_nats) {
            best = Some(point);
        }
    }
    Ok(best.unwrap())
}

/// Burstiness schedule ξ = (ln ln P)^{-(1+ε)/a} of the growth corollary,
/// clamped to (0, 1].
pub fn corollary2_xi(p: f64, a: f64, eps: f64) -> Result<f64> {
    ensure!(p > std::f64::consts::E.exp(), "P", "need P > e^e, got {p}");
    corollary2_xi_at_loglog(p.ln().ln(), a, eps)
}

/// Same schedule with the power given as t = ln ln P > 0.
pub fn corollary2_xi_at_loglog(loglog_p: f64, a: f64, eps: f64) -> Result<f64> {
    ensure!(a > 1.0 && a.is_finite(), "a", "must satisfy a > 1, got {a}");
    ensure!(eps > 0.0 && eps < a - 1.0, "eps", "must lie in (0, a-1), got {eps}");
    ensure!(loglog_p > 0.0, "P", "need ln ln P > 0, got {loglog_p}");
    Ok(loglog_p.powf(-(1.0 + eps) / a).min(1.0))
}

/// One point of the growth-ratio series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthPoint {
    pub loglog_p: f64,
    pub xi: f64,
    pub l_p: u64,
    pub value_nats: f64,
    /// value / (δ (ln ln P)^{1-(1+ε)/a})
    pub ratio: f64,
    /// (1-δξ)^{L_P}
    pub survival: f64,
}

/// The growth-ratio series with its lim-inf proxy verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub points: Vec<GrowthPoint>,
    /// Desk-scale proxy for the lim inf being bounded away from zero: the
    /// final ratio is at least half the initial one.
    pub liminf_proxy_ok: bool,
}

/// Evaluate the growth ratio r(P) = thm2(ξ(P), L_P) / (δ (ln ln P)^{1-(1+ε)/a})
/// along a double-exponential power grid.
///
/// The grid must hold at least 4 increasing points whose ln ln P values
/// span at least six decades; this is what lets the survival factor
/// approach 1 along the sweep.
pub fn corollary2_growth_check(
    a: f64,
    eps: f64,
    delta: f64,
    sigma2: f64,
    grid: &[PowerPoint],
) -> Result<GrowthReport> {
    ensure!(a > 1.0 && a.is_finite(), "a", "must satisfy a > 1, got {a}");
    ensure!(eps > 0.0 && eps < a - 1.0, "eps", "must lie in (0, a-1), got {eps}");
    ensure!(delta > 0.0 && delta <= 1.0, "delta", "must lie in (0, 1], got {delta}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    let ts: Vec<f64> = grid.iter().map(|p| p.loglog()).collect();
    if ts.len() < 4 {
        return Err(crate::error::Error::InvalidGrid(format!(
            "need at least 4 points, got {}",
            ts.len()
        )));
    }
    for w in ts.windows(2) {
        if !(w[1] > w[0]) {
            return Err(crate::error::Error::InvalidGrid(
                "power grid must be strictly increasing".into(),
            ));
        }
    }
    if !(ts[0] > 0.0) || ts[ts.len() - 1] / ts[0] < 1e6 * (1.0 - 1e-9) {
        return Err(crate::error::Error::InvalidGrid(format!(
            "ln ln P must span six decades, got [{}, {}]",
            ts[0],
            ts[ts.len() - 1]
        )));
    }

    let cfg = NetworkConfig::new(1, 1, delta, sigma2, 1.0)?;
    let mut points = Vec::with_capacity(ts.len());
    for &t in &ts {
        let xi = corollary2_xi_at_loglog(t, a, eps)?;
        let l_p = lp_double_exponential_at_loglog(a, t, sigma2)?;
        let bound = theorem2_lower_bound_at_loglog(&cfg, xi, l_p, t)?;
        let ratio = bound.value_nats / (delta * t.powf(1.0 - (1.0 + eps) / a));
        points.push(GrowthPoint {
            loglog_p: t,
            xi,
            l_p,
            value_nats: bound.value_nats,
            ratio,
            survival: survival_factor(delta * xi, l_p),
        });
    }
    let liminf_proxy_ok = points[points.len() - 1].ratio >= 0.5 * points[0].ratio;
    Ok(GrowthReport { points, liminf_proxy_ok })
}
