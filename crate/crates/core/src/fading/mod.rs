//! Interferer fading-variance profiles: the ordered sequence α_1 ≥ α_2 ≥ …
//! of variances of the fading coefficients from interfering cells, either in
//! analytic form or measured from a sampled deployment.

mod deployment;
mod pathloss;

pub use deployment::{
    deployment_with_min_count, expected_ordered_distance, sample_deployment, Deployment,
};
pub use pathloss::{path_gain, profile_from_deployment, PathLossModel};

use crate::error::{ensure, Error, Result};

/// Summation stops once the running term drops below this fraction of the
/// accumulated sum.
const TAIL_RELATIVE_CUTOFF: f64 = 1e-15;
/// Hard cap on numerically summed tail terms.
const TAIL_MAX_TERMS: u64 = 1_000_000;

/// Ordered interferer variance sequence {α_ℓ}, ℓ = 1, 2, …
///
/// Analytic kinds evaluate lazily for any index; the empirical kind holds a
/// finite descending list (cells beyond the list contribute nothing).
#[derive(Debug, Clone, PartialEq)]
pub enum FadingProfile {
    /// α_ℓ = c ρ^ℓ with 0 < ρ < 1, c > 0.
    Exponential { rho: f64, c: f64 },
    /// α_ℓ = exp(-exp(ℓ^a)) with a ≥ 1.
    DoubleExponential { a: f64 },
    /// Finite descending list of positive variances.
    Empirical { values: Vec<f64> },
}

/// α_ℓ = c ρ^ℓ; the variance ratio α_{ℓ+1}/α_ℓ equals ρ for every ℓ.
pub fn exponential_profile(rho: f64, c: f64) -> Result<FadingProfile> {
    ensure!(rho > 0.0 && rho < 1.0, "rho", "must lie in (0, 1), got {rho}");
    ensure!(c > 0.0 && c.is_finite(), "c", "must be positive, got {c}");
    Ok(FadingProfile::Exponential { rho, c })
}

/// α_ℓ = exp(-exp(ℓ^a)), the equality case of the double-exponential decay
/// condition.
pub fn double_exponential_profile(a: f64) -> Result<FadingProfile> {
    ensure!(a >= 1.0 && a.is_finite(), "a", "must satisfy a >= 1, got {a}");
    Ok(FadingProfile::DoubleExponential { a })
}

/// Profile from an explicit list of variances; must be positive and
/// non-increasing.
pub fn empirical_profile(values: Vec<f64>) -> Result<FadingProfile> {
    ensure!(!values.is_empty(), "values", "list must be non-empty");
    for (i, &v) in values.iter().enumerate() {
        ensure!(v > 0.0 && v.is_finite(), "values", "entry {i} = {v} is not positive/finite");
        if i > 0 {
            ensure!(
                v <= values[i - 1],
                "values",
                "not non-increasing at index {i}: {} < {v}",
                values[i - 1]
            );
        }
    }
    Ok(FadingProfile::Empirical { values })
}

impl FadingProfile {
    /// Variance α_ℓ of the ℓ-th interfering cell, ℓ ≥ 1.
    ///
    /// Empirical profiles return 0 beyond their last entry (inactive cells).
    pub fn alpha(&self, ell: u64) -> f64 {
        assert!(ell >= 1, "cell index starts at 1");
        match self {
            FadingProfile::Exponential { rho, c } => c * rho.powi(ell as i32),
            FadingProfile::DoubleExponential { a } => (-((ell as f64).powf(*a)).exp()).exp(),
            FadingProfile::Empirical { values } => {
                values.get(ell as usize - 1).copied().unwrap_or(0.0)
            }
        }
    }

    /// Tail sum Σ_{ℓ=start}^∞ α_ℓ, closed-form where available.
    pub fn tail_sum(&self, start: u64) -> Result<f64> {
        assert!(start >= 1, "cell index starts at 1");
        match self {
            FadingProfile::Exponential { rho, c } => Ok(c * rho.powi(start as i32) / (1.0 - rho)),
            FadingProfile::DoubleExponential { .. } => {
                let mut acc = 0.0f64;
                for i in 0..TAIL_MAX_TERMS {
                    let term = self.alpha(start + i);
                    acc += term;
                    if term <= TAIL_RELATIVE_CUTOFF * acc {
                        return Ok(acc);
                    }
                }
                Err(Error::TailNotConverged {
                    max_terms: TAIL_MAX_TERMS,
                })
            }
            FadingProfile::Empirical { values } => {
                Ok(values.iter().skip(start as usize - 1).sum())
            }
        }
    }

    /// Total interference power Σ_{ℓ≥1} α_ℓ.
    pub fn total_power(&self) -> Result<f64> {
        self.tail_sum(1)
    }

    /// Smallest start index whose tail sum is at or below `tol`; certifies
    /// summability of the sequence at that tolerance.
    pub fn summability_certificate(&self, tol: f64) -> Result<u64> {
        ensure!(tol > 0.0, "tol", "must be positive, got {tol}");
        let mut start = 1u64;
        loop {
            if self.tail_sum(start)? <= tol {
                return Ok(start);
            }
            ensure!(
                start < TAIL_MAX_TERMS,
                "tol",
                "tail never fell below {tol} within {TAIL_MAX_TERMS} cells"
            );
            start += 1;
        }
    }

    /// Infimum of the successive ratios α_{ℓ+1}/α_ℓ over ℓ = 1..=horizon-1.
    ///
    /// For exponential profiles the ratio is ρ identically, independent of
    /// the horizon.
    pub fn ratio_infimum(&self, horizon: u64) -> Result<f64> {
        ensure!(horizon >= 2, "horizon", "need at least two cells, got {horizon}");
        match self {
            FadingProfile::Exponential { rho, .. } => Ok(*rho),
            FadingProfile::Empirical { values } => {
                ensure!(
                    (horizon as usize) <= values.len(),
                    "horizon",
                    "profile only holds {} cells, horizon {horizon} not evaluable",
                    values.len()
                );
                let mut inf = f64::INFINITY;
                for ell in 1..horizon {
                    inf = inf.min(self.alpha(ell + 1) / self.alpha(ell));
                }
                Ok(inf)
            }
            FadingProfile::DoubleExponential { .. } => {
                let mut inf = f64::INFINITY;
                for ell in 1..horizon {
                    inf = inf.min(self.alpha(ell + 1) / self.alpha(ell));
                }
                Ok(inf)
            }
        }
    }

    /// Number of stored cells for empirical profiles, `None` for analytic
    /// kinds (evaluable at any index).
    pub fn len(&self) -> Option<usize> {
        match self {
            FadingProfile::Empirical { values } => Some(values.len()),
            _ => None,
        }
    }
}
