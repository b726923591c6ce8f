//! Solvers for the interference truncation depth L_P: the number of
//! interfering cells kept so the residual interference power
//! P · Σ_{ℓ > L_P} α_ℓ falls to or below the noise level σ².

use crate::error::{ensure, Error, Result};
use crate::fading::FadingProfile;

const MAX_DEPTH: u64 = 10_000_000;

/// Smallest L >= 0 with P · Σ_{ℓ>L} α_ℓ <= σ², verified by direct tail
/// evaluation.
pub fn min_lp(profile: &FadingProfile, p: f64, sigma2: f64) -> Result<u64> {
    ensure!(p > 0.0 && p.is_finite(), "P", "must be positive, got {p}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    let mut l = 0u64;
    loop {
        if p * profile.tail_sum(l + 1)? <= sigma2 {
            return Ok(l);
        }
        l += 1;
        if l > MAX_DEPTH {
            return Err(Error::TruncationNotFound { max_depth: MAX_DEPTH });
        }
    }
}

/// Closed-form truncation depth for α_ℓ = ρ^ℓ:
/// ⌈ log(P/σ²)/log(1/ρ) + log(1-ρ)/log(ρ) - 1 ⌉, floored at 0.
///
/// The ceiling is reconciled against the exact geometric tail
/// P ρ^{L+1}/(1-ρ) <= σ², so the returned depth is always the minimal one
/// under the ℓ >= L+1 tail convention (floating-point boundary cases are
/// resolved by the tail test rather than the raw ceiling).
pub fn lp_exponential_closed_form(rho: f64, p: f64, sigma2: f64) -> Result<u64> {
    ensure!(rho > 0.0 && rho < 1.0, "rho", "must lie in (0, 1), got {rho}");
    ensure!(p > 0.0 && p.is_finite(), "P", "must be positive, got {p}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    let snr = p / sigma2;
    let raw = snr.ln() / (1.0 / rho).ln() + (1.0 - rho).ln() / rho.ln() - 1.0;
    let mut l = raw.ceil().max(0.0) as u64;
    let tail_ok = |l: u64| snr * rho.powi(l as i32 + 1) / (1.0 - rho) <= 1.0;
    while !tail_ok(l) {
        l += 1;
    }
    while l > 0 && tail_ok(l - 1) {
        l -= 1;
    }
    Ok(l)
}

/// Truncation depth guaranteed for the double-exponential decay
/// α_ℓ <= exp(-exp(ℓ^a)): the smallest integer strictly greater than
/// (log log((P/σ²) e^{-a}/(1-e^{-a})))^{1/a}, and at least 1.
pub fn lp_double_exponential(a: f64, p: f64, sigma2: f64) -> Result<u64> {
    ensure!(p > 0.0 && p.is_finite(), "P", "must be positive, got {p}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    lp_double_exponential_at_loglog(a, (p / sigma2).ln().ln(), 1.0)
}

/// Same bound with the power expressed as t = ln ln(P) (natural logs), for
/// sweeps whose powers overflow f64. `sigma2` rescales P as usual.
pub fn lp_double_exponential_at_loglog(a: f64, loglog_p: f64, sigma2: f64) -> Result<u64> {
    ensure!(a >= 1.0 && a.is_finite(), "a", "must satisfy a >= 1, got {a}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    // ln x = ln(P/σ²) + ln(e^{-a}/(1-e^{-a}))
    let shift = -a - (-(-a).exp_m1()).ln() - sigma2.ln();
    let ln_ln_x = if loglog_p.is_nan() {
        // P <= 1: no admissible ln ln; the degenerate branch below applies.
        f64::NEG_INFINITY
    } else if loglog_p <= 700.0 {
        let ln_x = loglog_p.exp() + shift;
        if ln_x <= 1.0 {
            // x <= e: the bound is nonpositive; the lemma still needs L >= 1.
            return Ok(1);
        }
        ln_x.ln()
    } else {
        // e^t dwarfs the shift; ln(e^t + shift) = t + ln1p(shift e^{-t}).
        loglog_p + (shift * (-loglog_p).exp()).ln_1p()
    };
    if ln_ln_x <= 0.0 {
        return Ok(1);
    }
    let bound = ln_ln_x.powf(1.0 / a);
    Ok((bound.floor() as u64 + 1).max(1))
}
