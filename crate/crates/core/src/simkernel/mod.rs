//! Deterministic Monte Carlo engine for the channel model and the analytic
//! identities supporting the bounds.

pub mod mc;

mod channel;
mod identities;

pub use channel::{sample_channel, ChannelBurst, ChannelSample, InputLaw};
pub use identities::{
    bursty_symbols, cauchy_magnitude_density, cauchy_normalization_quadrature,
    chi_square_log_identity, residual_interference, single_user_rate_floor,
    verify_exp_log_fading, BurstySampler, ResidualCheck,
};
pub use mc::{chunk_rng, mc_estimate, McEstimate, CHUNK_SIZE};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Circularly-symmetric complex Gaussian draw with the given variance:
/// independent real Gaussians of variance `variance/2` per component.
pub(crate) fn complex_gaussian(rng: &mut ChaCha8Rng, variance: f64) -> Complex64 {
    let scale = (0.5 * variance).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(scale * re, scale * im)
}

/// Uniform phase point on the unit circle.
pub(crate) fn uniform_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
}
