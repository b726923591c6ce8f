//! Planar Poisson point process deployments of interfering cells.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{ensure, Result};

/// Interferer locations sampled from a homogeneous Poisson point process on
/// a disk, reduced to their sorted radial distances.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    /// Cells per unit area.
    pub intensity: f64,
    /// Disk radius in km.
    pub region_radius_km: f64,
    /// Seed the deployment was drawn with.
    pub seed: u64,
    /// Ascending radial distances in km.
    pub distances_km: Vec<f64>,
}

/// Draw one deployment: point count N ~ Poisson(η π r²), points uniform on
/// the disk, distances sorted ascending. Deterministic for a fixed seed.
pub fn sample_deployment(eta: f64, region_radius_km: f64, seed: u64) -> Result<Deployment> {
    ensure!(eta > 0.0 && eta.is_finite(), "eta", "must be positive, got {eta}");
    ensure!(
        region_radius_km > 0.0 && region_radius_km.is_finite(),
        "region_radius",
        "must be positive, got {region_radius_km}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mean = eta * std::f64::consts::PI * region_radius_km * region_radius_km;
    let n = Poisson::new(mean)
        .map_err(|e| crate::error::Error::param("eta", format!("invalid Poisson mean: {e}")))?
        .sample(&mut rng) as u64;
    let mut distances: Vec<f64> = (0..n)
        // Radius of a uniform point on a disk: r √U.
        .map(|_| region_radius_km * rng.random::<f64>().sqrt())
        .collect();
    distances.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(Deployment {
        intensity: eta,
        region_radius_km,
        seed,
        distances_km: distances,
    })
}

/// Deployment holding at least `min_count` points: the disk is sized so the
/// expected count is 4x the request (keeps ordered statistics away from the
/// edge), and resampled with a rotated seed on the rare shortfall.
pub fn deployment_with_min_count(eta: f64, min_count: usize, seed: u64) -> Result<Deployment> {
    ensure!(min_count >= 1, "min_count", "must be at least 1");
    let target = 4.0 * min_count as f64;
    let radius = (target / (eta * std::f64::consts::PI)).sqrt();
    let mut attempt_seed = seed;
    loop {
        let dep = sample_deployment(eta, radius, attempt_seed)?;
        if dep.distances_km.len() >= min_count {
            return Ok(dep);
        }
        attempt_seed = attempt_seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    }
}

/// Expected distance to the ℓ-th closest point of a planar PPP with
/// intensity η: √(ℓ/(ηπ)).
pub fn expected_ordered_distance(ell: u64, eta: f64) -> Result<f64> {
    ensure!(ell >= 1, "ell", "index starts at 1, got {ell}");
    ensure!(eta > 0.0 && eta.is_finite(), "eta", "must be positive, got {eta}");
    Ok((ell as f64 / (eta * std::f64::consts::PI)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = sample_deployment(3.2, 5.0, 42).unwrap();
        let b = sample_deployment(3.2, 5.0, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_deployment(3.2, 5.0, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn distances_sorted_and_in_range() {
        let dep = sample_deployment(3.2, 5.0, 7).unwrap();
        for w in dep.distances_km.windows(2) {
            assert!(w[0] <= w[1]);
        }
        assert!(dep.distances_km.iter().all(|&d| d > 0.0 && d <= 5.0));
    }

    #[test]
    fn mean_count_matches_poisson_intensity() {
        // η π r² = 200; mean over seeds must land within 1% of 200.
        let eta = 3.2;
        let r = (200.0 / (eta * std::f64::consts::PI)).sqrt();
        let seeds = 2_000u64;
        let total: usize = (0..seeds)
            .map(|s| sample_deployment(eta, r, s).unwrap().distances_km.len())
            .sum();
        let mean = total as f64 / seeds as f64;
        assert!((mean - 200.0).abs() < 2.0, "mean count {mean}");
    }

    #[test]
    fn expected_distance_values() {
        let eta = 1.0 / std::f64::consts::PI;
        assert!((expected_ordered_distance(1, eta).unwrap() - 1.0).abs() < 1e-15);
        assert!((expected_ordered_distance(4, eta).unwrap() - 2.0).abs() < 1e-15);
        let d = expected_ordered_distance(10, 3.2).unwrap();
        assert!((d - (10.0 / (3.2 * std::f64::consts::PI)).sqrt()).abs() < 1e-15);
        assert!((d - 0.997).abs() < 0.001);
    }

    #[test]
    fn empirical_ordered_distances_match_ppp_theory() {
        // ηπ D_ℓ² ~ Gamma(ℓ, 1), so E[D_ℓ²] = ℓ/(ηπ) exactly and
        // E[D_ℓ] = Γ(ℓ+1/2)/Γ(ℓ) (ηπ)^{-1/2}. The √(ℓ/(ηπ)) formula of
        // expected_ordered_distance is therefore the root-mean-square
        // distance, which the mean approaches from below as ℓ grows
        // (relative gap ≈ 1/(8ℓ)).
        let eta = 3.2;
        let seeds = 3_000u64;
        let max_ell = 10usize;
        let mut sums = vec![0.0f64; max_ell];
        let mut sq_sums = vec![0.0f64; max_ell]; // of D
        let mut quad_sums = vec![0.0f64; max_ell]; // of D²
        for s in 0..seeds {
            let dep = deployment_with_min_count(eta, max_ell, s).unwrap();
            for (i, acc) in sums.iter_mut().enumerate() {
                let d = dep.distances_km[i];
                *acc += d;
                sq_sums[i] += d * d;
                quad_sums[i] += d * d * d * d;
            }
        }
        let n = seeds as f64;
        let eta_pi = eta * std::f64::consts::PI;
        for ell in 1..=max_ell {
            let mean = sums[ell - 1] / n;
            let var = (sq_sums[ell - 1] - n * mean * mean) / (n - 1.0);
            let se = (var / n).sqrt();
            let exact = crate::special::gamma(ell as f64 + 0.5)
                / crate::special::gamma(ell as f64)
                / eta_pi.sqrt();
            assert!(
                (mean - exact).abs() <= 3.0 * se,
                "ell={ell}: mean={mean}, exact={exact}, se={se}"
            );

            let mean_sq = sq_sums[ell - 1] / n;
            let var_sq = (quad_sums[ell - 1] - n * mean_sq * mean_sq) / (n - 1.0);
            let se_sq = (var_sq / n).sqrt();
            let rms = expected_ordered_distance(ell as u64, eta).unwrap();
            assert!(
                (mean_sq - rms * rms).abs() <= 3.0 * se_sq,
                "ell={ell}: mean D²={mean_sq}, formula²={}",
                rms * rms
            );
        }
    }

    #[test]
    fn min_count_guarantee() {
        for seed in 0..20 {
            let dep = deployment_with_min_count(3.2, 50, seed).unwrap();
            assert!(dep.distances_km.len() >= 50);
        }
    }

    #[test]
    fn domain_checks() {
        assert!(sample_deployment(0.0, 1.0, 0).is_err());
        assert!(sample_deployment(1.0, -1.0, 0).is_err());
        assert!(expected_ordered_distance(0, 1.0).is_err());
        assert!(expected_ordered_distance(1, 0.0).is_err());
    }
}
