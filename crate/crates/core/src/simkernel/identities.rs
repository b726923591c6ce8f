//! Closed-form identities used by the bounds, with seeded Monte Carlo or
//! quadrature verification: the single-user rate floor, the log-fading
//! expectation, the chi-square log identity, the Cauchy-magnitude auxiliary
//! density, and the residual-interference condition.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mc::{mc_estimate, McEstimate};
use super::{complex_gaussian, uniform_phase};
use crate::error::{ensure, Result};
use crate::fading::FadingProfile;
use crate::special::{digamma, ln_gamma, EULER_GAMMA};

/// Noncoherent point-to-point rate floor
/// ln ln P - γ - 1 - 2 ln(1 + √2 σ), in nats per channel use.
///
/// The value may be negative at small P; callers decide whether to clamp.
pub fn single_user_rate_floor(p: f64, sigma: f64) -> Result<f64> {
    ensure!(p > std::f64::consts::E, "P", "need P > e for a positive ln ln P, got {p}");
    ensure!(sigma > 0.0 && sigma.is_finite(), "sigma", "must be positive, got {sigma}");
    Ok(p.ln().ln() - EULER_GAMMA - 1.0 - 2.0 * (1.0 + std::f64::consts::SQRT_2 * sigma).ln())
}

/// Monte Carlo estimate of E[ln |H|²] for Rayleigh fading H ~ CN(0,1);
/// the exact value is -γ.
pub fn verify_exp_log_fading(n_samples: u64, seed: u64) -> Result<McEstimate> {
    ensure!(n_samples >= 100_000, "n_samples", "need at least 1e5, got {n_samples}");
    Ok(mc_estimate(seed, n_samples, |rng| {
        complex_gaussian(rng, 1.0).norm_sqr().ln()
    }))
}

/// Monte Carlo estimate of E[ln ‖Y‖²] for Y an n_R-vector of i.i.d.
/// CN(0, K) entries, paired with the analytic value ln K + ψ(n_R).
pub fn chi_square_log_identity(
    n_r: u32,
    k_scale: f64,
    n_samples: u64,
    seed: u64,
) -> Result<(McEstimate, f64)> {
    ensure!(n_r >= 1, "n_R", "need at least one antenna");
    ensure!(k_scale > 0.0 && k_scale.is_finite(), "K", "must be positive, got {k_scale}");
    ensure!(n_samples >= 1, "n_samples", "need at least one sample");
    let est = mc_estimate(seed, n_samples, |rng| {
        (0..n_r)
            .map(|_| complex_gaussian(rng, k_scale).norm_sqr())
            .sum::<f64>()
            .ln()
    });
    Ok((est, k_scale.ln() + digamma(n_r as f64)))
}

/// Auxiliary density over C^{n_R} whose magnitude is Cauchy distributed:
/// g(ŷ) = n_R √β Γ(n_R) / (π^{n_R+1} ‖ŷ‖^{n_R}) · 1/(1 + β‖ŷ‖^{2n_R}).
///
/// Diverges (integrably) at ‖ŷ‖ = 0; that case returns +∞.
pub fn cauchy_magnitude_density(y_norm: f64, beta: f64, n_r: u32) -> Result<f64> {
    ensure!(y_norm >= 0.0 && y_norm.is_finite(), "y_norm", "must be nonnegative, got {y_norm}");
    ensure!(beta > 0.0 && beta.is_finite(), "beta", "must be positive, got {beta}");
    ensure!(n_r >= 1, "n_R", "need at least one antenna");
    if y_norm == 0.0 {
        return Ok(f64::INFINITY);
    }
    let n = n_r as f64;
    // exp-log form keeps large n_R and extreme radii finite.
    let ln_prefactor = n.ln() + 0.5 * beta.ln() + ln_gamma(n) - (n + 1.0) * std::f64::consts::PI.ln();
    let ln_radial = -n * y_norm.ln() - softplus(beta.ln() + 2.0 * n * y_norm.ln());
    Ok((ln_prefactor + ln_radial).exp())
}

/// ln(1 + e^x) without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Quadrature of the Cauchy-magnitude density over C^{n_R}: the radial
/// integral of g times the sphere-surface factor 2π^{n_R} r^{2n_R-1}/Γ(n_R),
/// evaluated on a log-radius grid by Simpson's rule. Equals 1 for a proper
/// density.
pub fn cauchy_normalization_quadrature(beta: f64, n_r: u32) -> Result<f64> {
    ensure!(beta > 0.0 && beta.is_finite(), "beta", "must be positive, got {beta}");
    ensure!(n_r >= 1, "n_R", "need at least one antenna");
    let n = n_r as f64;
    // Substituting r = e^x, the integrand decays like e^{-n|x - x0|}
    // around x0 where β r^{2n} = 1.
    let x0 = -beta.ln() / (2.0 * n);
    let half_span = 50.0 / n + 10.0;
    let (lo, hi) = (x0 - half_span, x0 + half_span);
    let intervals = 1 << 17; // even, Simpson
    let h = (hi - lo) / intervals as f64;
    let ln_surface_prefactor = std::f64::consts::LN_2 + n * std::f64::consts::PI.ln() - ln_gamma(n);
    let integrand = |x: f64| -> Result<f64> {
        let r = x.exp();
        let g = cauchy_magnitude_density(r, beta, n_r)?;
        // surface(r) · r (Jacobian of r = e^x), in log form
        let ln_jacobian = ln_surface_prefactor + 2.0 * n * x;
        Ok(g * ln_jacobian.exp())
    };
    let mut acc = integrand(lo)? + integrand(hi)?;
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * integrand(lo + i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// Residual interference P Σ_{ℓ>L_P} α_ℓ and whether it sits at or below
/// the noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualCheck {
    pub value: f64,
    pub satisfied: bool,
}

pub fn residual_interference(
    profile: &FadingProfile,
    l_p: u64,
    p: f64,
    sigma2: f64,
) -> Result<ResidualCheck> {
    ensure!(p >= 0.0 && p.is_finite(), "P", "must be nonnegative, got {p}");
    ensure!(sigma2 > 0.0 && sigma2.is_finite(), "sigma2", "must be positive, got {sigma2}");
    let value = p * profile.tail_sum(l_p + 1)?;
    Ok(ResidualCheck {
        value,
        satisfied: value <= sigma2,
    })
}

/// Bursty signaling source: circularly-symmetric symbols with ln|X|
/// uniform on [0, power], all zeroed by a single Bernoulli(xi) gate drawn
/// at construction (burst-level gating).
#[derive(Debug, Clone)]
pub struct BurstySampler {
    rng: ChaCha8Rng,
    power: f64,
    gate_on: bool,
}

impl BurstySampler {
    pub fn new(power: f64, xi: f64, seed: u64) -> Result<Self> {
        ensure!(power > 0.0 && power.is_finite(), "P", "must be positive, got {power}");
        ensure!((0.0..=1.0).contains(&xi), "xi", "must lie in [0, 1], got {xi}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gate_on = rng.random::<f64>() < xi;
        Ok(Self { rng, power, gate_on })
    }

    pub fn gate_on(&self) -> bool {
        self.gate_on
    }

    /// Next symbol; identically zero when the burst gate is off.
    pub fn sample(&mut self) -> Complex64 {
        if !self.gate_on {
            return Complex64::new(0.0, 0.0);
        }
        let magnitude = (self.rng.random::<f64>() * self.power).exp();
        uniform_phase(&mut self.rng) * magnitude
    }
}

/// Convenience wrapper drawing `n` symbols; returns the stream and the
/// gate state.
pub fn bursty_symbols(power: f64, xi: f64, seed: u64, n: usize) -> Result<(Vec<Complex64>, bool)> {
    let mut sampler = BurstySampler::new(power, xi, seed)?;
    let symbols = (0..n).map(|_| sampler.sample()).collect();
    Ok((symbols, sampler.gate_on()))
}
