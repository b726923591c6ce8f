//! Monte Carlo evaluation of the scale-family interference bounds: the
//! always-active bound -Σ_r E[log(X†G_rX)] and its bursty-activity variant.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{binary_entropy, BoundTerm, NetworkConfig};
use crate::error::{ensure, Error, Result};
use crate::simkernel::mc::{chunk_count, chunk_len, chunk_rng, Moments};

/// Per-receive-antenna diagonal gain profiles g_{r,u}; every row sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMatrix {
    rows: Vec<Vec<f64>>,
}

impl GainMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        ensure!(!rows.is_empty(), "G", "need at least one receive antenna row");
        let n_t = rows[0].len();
        ensure!(n_t >= 1, "G", "need at least one user column");
        for (r, row) in rows.iter().enumerate() {
            ensure!(row.len() == n_t, "G", "row {r} has {} entries, expected {n_t}", row.len());
            let mut sum = 0.0;
            for (u, &g) in row.iter().enumerate() {
                ensure!(g >= 0.0 && g.is_finite(), "G", "entry ({r},{u}) = {g} must be nonnegative");
                sum += g;
            }
            ensure!((sum - 1.0).abs() < 1e-9, "G", "row {r} sums to {sum}, expected 1");
        }
        Ok(Self { rows })
    }

    pub fn n_r(&self) -> usize {
        self.rows.len()
    }

    pub fn n_t(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Monte Carlo estimate of a scale-family bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LozanoEstimate {
    pub value_nats: f64,
    pub std_error: f64,
    pub n_samples: u64,
    /// Samples discarded because an input entry was exactly zero.
    pub rejected: u64,
    pub seed: u64,
}

const MIN_MC_SAMPLES: u64 = 10_000;
const MAX_REJECTIONS_PER_SAMPLE: u64 = 10_000;

fn draw_nonzero<F>(
    rng: &mut ChaCha8Rng,
    sampler: &F,
    n_t: usize,
    rejected: &mut u64,
) -> Result<Vec<Complex64>>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<Complex64>,
{
    for _ in 0..MAX_REJECTIONS_PER_SAMPLE {
        let x = sampler(rng);
        ensure!(
            x.len() == n_t,
            "input_sampler",
            "drew {} entries, gain matrix has {n_t} users",
            x.len()
        );
        if x.iter().all(|v| v.norm_sqr() > 0.0) {
            return Ok(x);
        }
        *rejected += 1;
    }
    Err(Error::param(
        "input_sampler",
        format!("still drawing zero entries after {MAX_REJECTIONS_PER_SAMPLE} rejections"),
    ))
}

/// -Σ_r E[log(X†G_rX)] with G_r = diag(g_{r,1}, …, g_{r,n_T}), estimated by
/// seeded Monte Carlo. Inputs with zero entries are rejected and resampled;
/// the rejection count is reported.
pub fn lozano_upper_bound<F>(
    g: &GainMatrix,
    sampler: F,
    mc_samples: u64,
    seed: u64,
) -> Result<LozanoEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<Complex64> + Sync,
{
    ensure!(
        mc_samples >= MIN_MC_SAMPLES,
        "mc_samples",
        "need at least {MIN_MC_SAMPLES}, got {mc_samples}"
    );
    let n_t = g.n_t();
    let partials: Vec<Result<(Moments, u64)>> = (0..chunk_count(mc_samples))
        .into_par_iter()
        .map(|i| {
            let mut rng = chunk_rng(seed, i);
            let mut m = Moments::default();
            let mut rejected = 0u64;
            for _ in 0..chunk_len(mc_samples, i) {
                let x = draw_nonzero(&mut rng, &sampler, n_t, &mut rejected)?;
                let stat: f64 = g
                    .rows()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&x)
                            .map(|(&gu, xv)| gu * xv.norm_sqr())
                            .sum::<f64>()
                            .ln()
                    })
                    .sum();
                m.push(stat);
            }
            Ok((m, rejected))
        })
        .collect();

    let mut total = Moments::default();
    let mut rejected = 0u64;
    for partial in partials {
        let (m, r) = partial?;
        total = total.merge(m);
        rejected += r;
    }
    let est = total.estimate(seed);
    Ok(LozanoEstimate {
        value_nats: -est.mean,
        std_error: est.std_error,
        n_samples: mc_samples,
        rejected,
        seed,
    })
}

/// Bursty-activity variant of the scale-family bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LozanoBurstyReport {
    pub value_nats: f64,
    /// Standard error of the Monte Carlo term.
    pub std_error: f64,
    pub terms: Vec<BoundTerm>,
    /// Per-antenna minimizing user index (0-based).
    pub u_star: Vec<usize>,
    pub n_samples: u64,
    pub rejected: u64,
    pub seed: u64,
}

/// n_R(1-δ)^{n_T} log P + n_T H_b(δ) + n_R log(1+1/P)
/// - (1-(1-δ)^{n_T}) Σ_r E[log(|X̃_{u*}|² g_{r,u*})], with u* the
/// per-antenna minimizer of E[log(|X̃_u|² g_{r,u})].
pub fn lozano_bursty_upper_bound<F>(
    cfg: &NetworkConfig,
    g: &GainMatrix,
    sampler: F,
    mc_samples: u64,
    seed: u64,
) -> Result<LozanoBurstyReport>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<Complex64> + Sync,
{
    ensure!(cfg.p > 0.0, "P", "log P undefined at P = 0");
    ensure!(
        mc_samples >= MIN_MC_SAMPLES,
        "mc_samples",
        "need at least {MIN_MC_SAMPLES}, got {mc_samples}"
    );
    ensure!(
        g.n_t() == cfg.n_t as usize && g.n_r() == cfg.n_r as usize,
        "G",
        "gain matrix is {}x{}, config says {}x{}",
        g.n_r(),
        g.n_t(),
        cfg.n_r,
        cfg.n_t
    );
    for (r, row) in g.rows().iter().enumerate() {
        for (u, &gu) in row.iter().enumerate() {
            ensure!(gu > 0.0, "G", "entry ({r},{u}) must be strictly positive here");
        }
    }

    let n_t = g.n_t();
    // Per-user moments of z_u = ln|x_u|², plus cross moments for the
    // variance of the selected sum.
    #[derive(Clone)]
    struct UserMoments {
        sums: Vec<f64>,
        cross: Vec<f64>, // n_t x n_t, row-major
        n: u64,
        rejected: u64,
    }
    let partials: Vec<Result<UserMoments>> = (0..chunk_count(mc_samples))
        .into_par_iter()
        .map(|i| {
            let mut rng = chunk_rng(seed, i);
            let mut acc = UserMoments {
                sums: vec![0.0; n_t],
                cross: vec![0.0; n_t * n_t],
                n: 0,
                rejected: 0,
            };
            let mut z = vec![0.0; n_t];
            for _ in 0..chunk_len(mc_samples, i) {
                let x = draw_nonzero(&mut rng, &sampler, n_t, &mut acc.rejected)?;
                for (u, xv) in x.iter().enumerate() {
                    z[u] = xv.norm_sqr().ln();
                }
                for u in 0..n_t {
                    acc.sums[u] += z[u];
                    for v in 0..n_t {
                        acc.cross[u * n_t + v] += z[u] * z[v];
                    }
                }
                acc.n += 1;
            }
            Ok(acc)
        })
        .collect();

    let mut sums = vec![0.0; n_t];
    let mut cross = vec![0.0; n_t * n_t];
    let mut n = 0u64;
    let mut rejected = 0u64;
    for partial in partials {
        let acc = partial?;
        for u in 0..n_t {
            sums[u] += acc.sums[u];
            for v in 0..n_t {
                cross[u * n_t + v] += acc.cross[u * n_t + v];
            }
        }
        n += acc.n;
        rejected += acc.rejected;
    }
    let nf = n as f64;
    let means: Vec<f64> = sums.iter().map(|s| s / nf).collect();

    // Per-antenna minimizer of E[ln(|x_u|² g_{r,u})] = mean_u + ln g_{r,u}.
    let u_star: Vec<usize> = g
        .rows()
        .iter()
        .map(|row| {
            (0..n_t)
                .min_by(|&a, &b| {
                    let va = means[a] + row[a].ln();
                    let vb = means[b] + row[b].ln();
                    va.partial_cmp(&vb).unwrap()
                })
                .unwrap()
        })
        .collect();

    // MC term: Σ_r (mean_{u*(r)} + ln g_{r,u*(r)}), with variance from the
    // selection weights w_u = #{r : u*(r) = u}.
    let mut mc_mean = 0.0;
    let mut weights = vec![0.0f64; n_t];
    for (r, &u) in u_star.iter().enumerate() {
        mc_mean += means[u] + g.rows()[r][u].ln();
        weights[u] += 1.0;
    }
    let mut var_sum = 0.0;
    for u in 0..n_t {
        for v in 0..n_t {
            let cov = (cross[u * n_t + v] - nf * means[u] * means[v]) / (nf - 1.0);
            var_sum += weights[u] * weights[v] * cov;
        }
    }
    let activity = 1.0 - (1.0 - cfg.delta).powi(cfg.n_t as i32);
    let std_error = activity * (var_sum.max(0.0) / nf).sqrt();

    let n_r = cfg.n_r as f64;
    let terms = vec![
        BoundTerm {
            name: "silent_power_term",
            nats: n_r * (1.0 - cfg.delta).powi(cfg.n_t as i32) * cfg.p.ln(),
        },
        BoundTerm {
            name: "activity_entropy_term",
            nats: cfg.n_t as f64 * binary_entropy(cfg.delta),
        },
        BoundTerm {
            name: "noise_term",
            nats: n_r * (1.0 / cfg.p).ln_1p(),
        },
        BoundTerm {
            name: "fading_log_term",
            nats: -activity * mc_mean,
        },
    ];
    let value_nats = terms.iter().map(|t| t.nats).sum();
    Ok(LozanoBurstyReport {
        value_nats,
        std_error,
        terms,
        u_star,
        n_samples: mc_samples,
        rejected,
        seed,
    })
}
