//! Seeded sampling of the interference channel: the intended cell plus a
//! truncated stack of interfering cells, each with per-user Bernoulli
//! activity held constant over a burst.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{complex_gaussian, uniform_phase};
use crate::bounds::NetworkConfig;
use crate::error::{ensure, Result};
use crate::fading::FadingProfile;

/// Input distribution shared by every cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputLaw {
    /// No transmissions; the output is pure noise.
    Silent,
    /// Every user sends |x| = √power with uniform phase.
    ConstantModulus { power: f64 },
    /// User 1 sends circularly-symmetric symbols with ln|x| uniform on
    /// [0, power], gated per cell by an extra Bernoulli(xi) drawn once per
    /// burst; users 2.. stay silent.
    Bursty { power: f64, xi: f64 },
}

/// One channel use: received vector and the transmitted symbols behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    /// Received vector, length n_R.
    pub y: Vec<Complex64>,
    /// Activity flags per cell (0 = intended) per user; constant across
    /// the burst.
    pub active: Vec<Vec<bool>>,
    /// Transmitted symbols per cell per user (zero where inactive).
    pub inputs: Vec<Vec<Complex64>>,
}

/// A burst of `n` channel uses with fixed activity.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelBurst {
    pub samples: Vec<ChannelSample>,
    /// Residual interference coefficient left out by the truncation:
    /// Σ_{ℓ > L_trunc} α_ℓ (multiply by the symbol power for the bias
    /// bound).
    pub truncation_tail: f64,
    pub seed: u64,
}

/// Draw one burst of `n` samples with interference truncated to `l_trunc`
/// cells. Fading is i.i.d. across time; activity (and the bursty gates)
/// are drawn once and held for the whole burst.
pub fn sample_channel(
    cfg: &NetworkConfig,
    profile: &FadingProfile,
    l_trunc: u64,
    law: InputLaw,
    seed: u64,
    n: usize,
) -> Result<ChannelBurst> {
    ensure!(n >= 1, "n", "need at least one sample");
    match law {
        InputLaw::ConstantModulus { power } => {
            ensure!(power > 0.0, "power", "must be positive, got {power}")
        }
        InputLaw::Bursty { power, xi } => {
            ensure!(power > 0.0, "power", "must be positive, got {power}");
            ensure!((0.0..=1.0).contains(&xi), "xi", "must lie in [0, 1], got {xi}");
        }
        InputLaw::Silent => {}
    }

    let n_cells = l_trunc as usize + 1;
    let n_t = cfg.n_t as usize;
    let n_r = cfg.n_r as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Burst-level randomness: user activity, then bursty gates.
    let active: Vec<Vec<bool>> = (0..n_cells)
        .map(|_| (0..n_t).map(|_| rng.random::<f64>() < cfg.delta).collect())
        .collect();
    let gates: Vec<bool> = match law {
        InputLaw::Bursty { xi, .. } => (0..n_cells).map(|_| rng.random::<f64>() < xi).collect(),
        _ => vec![true; n_cells],
    };

    let cell_variance =
        |ell: usize| if ell == 0 { 1.0 } else { profile.alpha(ell as u64) };

    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        // Inputs for this channel use.
        let mut inputs = vec![vec![Complex64::new(0.0, 0.0); n_t]; n_cells];
        for (ell, cell) in inputs.iter_mut().enumerate() {
            for (u, slot) in cell.iter_mut().enumerate() {
                if !active[ell][u] {
                    continue;
                }
                *slot = match law {
                    InputLaw::Silent => Complex64::new(0.0, 0.0),
                    InputLaw::ConstantModulus { power } => {
                        uniform_phase(&mut rng) * power.sqrt()
                    }
                    InputLaw::Bursty { power, .. } => {
                        if u == 0 && gates[ell] {
                            let magnitude = (rng.random::<f64>() * power).exp();
                            uniform_phase(&mut rng) * magnitude
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    }
                };
            }
        }
        // Received vector: fading per (cell, user, antenna), then noise.
        let mut y = vec![Complex64::new(0.0, 0.0); n_r];
        for (ell, cell) in inputs.iter().enumerate() {
            let var = cell_variance(ell);
            for &x in cell.iter() {
                for slot in y.iter_mut() {
                    let h = complex_gaussian(&mut rng, var);
                    *slot += h * x;
                }
            }
        }
        for slot in y.iter_mut() {
            *slot += complex_gaussian(&mut rng, cfg.sigma2);
        }
        samples.push(ChannelSample {
            y,
            active: active.clone(),
            inputs,
        });
    }

    Ok(ChannelBurst {
        samples,
        truncation_tail: profile.tail_sum(l_trunc + 1)?,
        seed,
    })
}
