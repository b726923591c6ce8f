//! Deterministic chunked Monte Carlo estimation.
//!
//! Work is always split into fixed-size chunks; chunk i draws from an
//! independent generator derived from (master seed, i), and partial moments
//! are folded in chunk order. Estimates are therefore bit-identical whether
//! chunks run on one thread or many.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples per chunk.
pub const CHUNK_SIZE: u64 = 8192;

/// Generator for one chunk of a seeded computation.
pub fn chunk_rng(master_seed: u64, chunk_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(chunk_index);
    rng
}

/// Mean and standard error of a seeded Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Moments {
    pub sum: f64,
    pub sum_sq: f64,
    pub n: u64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.n += 1;
    }

    pub fn merge(mut self, other: Moments) -> Moments {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.n += other.n;
        self
    }

    pub fn estimate(&self, seed: u64) -> McEstimate {
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = if self.n > 1 {
            ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        McEstimate {
            mean,
            std_error: (var / n).sqrt(),
            n_samples: self.n,
            seed,
        }
    }
}

/// Number of chunks covering `n_samples`.
pub(crate) fn chunk_count(n_samples: u64) -> u64 {
    n_samples.div_ceil(CHUNK_SIZE)
}

/// Samples assigned to chunk `i`.
pub(crate) fn chunk_len(n_samples: u64, i: u64) -> u64 {
    let start = i * CHUNK_SIZE;
    CHUNK_SIZE.min(n_samples - start)
}

/// Estimate E[f] by `n_samples` seeded draws, chunked and folded in order.
pub fn mc_estimate<F>(seed: u64, n_samples: u64, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    assert!(n_samples >= 1, "need at least one sample");
    let partials: Vec<Moments> = (0..chunk_count(n_samples))
        .into_par_iter()
        .map(|i| {
            let mut rng = chunk_rng(seed, i);
            let mut m = Moments::default();
            for _ in 0..chunk_len(n_samples, i) {
                m.push(f(&mut rng));
            }
            m
        })
        .collect();
    partials
        .into_iter()
        .fold(Moments::default(), Moments::merge)
        .estimate(seed)
}
