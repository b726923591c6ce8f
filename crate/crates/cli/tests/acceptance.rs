//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion numbering is stable; tolerances are pinned in the assertions.

use netcap_cli::{parse_config, run_experiment};
use netcap_core::bounds::{
    corollary1_upper_bound, corollary2_growth_check, lp_double_exponential,
    lp_exponential_closed_form, min_lp, optimize_theorem2_over_xi, theorem1_upper_bound, xi_grid,
    NetworkConfig, PowerPoint,
};
use netcap_core::fading::{
    deployment_with_min_count, double_exponential_profile, expected_ordered_distance,
    exponential_profile, path_gain, profile_from_deployment, PathLossModel,
};
use netcap_core::mapping::{
    forward_map, inverse_map, leading_one_series_partial_sums, partition_index, ActivityPattern,
};
use netcap_core::simkernel::{
    cauchy_normalization_quadrature, chi_square_log_identity, residual_interference,
    verify_exp_log_fading,
};
use netcap_core::special::EULER_GAMMA;

fn cfg(n_t: u32, n_r: u32, delta: f64) -> NetworkConfig {
    NetworkConfig::new(n_t, n_r, delta, 1.0, 1.0).unwrap()
}

#[test]
fn criterion_1_paper_number_regression() {
    let full = theorem1_upper_bound(&cfg(2, 2, 1.0), 0.5, 0.5).unwrap();
    let half = theorem1_upper_bound(&cfg(2, 2, 0.5), 0.5, 0.5).unwrap();
    let ok = (full.bits - 3.94).abs() <= 0.01 && (half.bits - 6.70).abs() <= 0.01;
    println!(
        "criterion 1 (paper-number regression): {} — delta=1: {:.4} bits (target 3.94±0.01), delta=0.5: {:.4} bits (target 6.70±0.01)",
        if ok { "PASS" } else { "FAIL" },
        full.bits,
        half.bits
    );
    assert!(ok);
}

#[test]
fn criterion_2_bound_consistency() {
    // Exact coincidence at delta = 1.
    let mut equal_ok = true;
    for (n_t, n_r, rho) in [(1u32, 1u32, 0.2f64), (2, 2, 0.5), (5, 3, 0.8)] {
        let t = theorem1_upper_bound(&cfg(n_t, n_r, 1.0), rho, rho).unwrap();
        let c = corollary1_upper_bound(&cfg(n_t, n_r, 1.0), rho, rho).unwrap();
        equal_ok &= t.nats == c.nats;
    }
    // Dominance over the 99 x 6 grid.
    let mut dominance_ok = true;
    for n_t in 2..=7u32 {
        for i in 1..=99 {
            let delta = i as f64 / 100.0;
            let t = theorem1_upper_bound(&cfg(n_t, 2, delta), 0.5, 0.5).unwrap();
            let c = corollary1_upper_bound(&cfg(n_t, 2, delta), 0.5, 0.5).unwrap();
            dominance_ok &= c.nats <= t.nats + 1e-12;
        }
    }
    let ok = equal_ok && dominance_ok;
    println!(
        "criterion 2 (bound consistency): {} — delta=1 equality exact: {equal_ok}, corollary <= theorem over 99x6 grid: {dominance_ok}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_3_mapping_soundness() {
    let mut checked = 0u64;
    for len in 1..=16usize {
        let words = 1u64 << len;
        let mut seen = vec![false; words as usize];
        for bits in 0..words {
            let b = ActivityPattern::new(bits, len).unwrap();
            let fb = forward_map(&b);
            assert_eq!(fb.weight(), b.weight(), "weight broken at L={len}, b={b}");
            assert_eq!(inverse_map(&fb), b, "inverse broken at L={len}, b={b}");
            assert!(!seen[fb.raw_bits() as usize], "collision at L={len}, b={b}");
            seen[fb.raw_bits() as usize] = true;
            if b.weight() > 0 {
                let m = partition_index(&fb);
                assert!(fb.bit(m));
                for pos in 1..m {
                    assert!(!fb.bit(pos), "leading zeros broken at L={len}, b={b}");
                }
                for pos in m + 1..=len {
                    assert_eq!(fb.bit(pos), b.bit(pos - m), "suffix broken at L={len}, b={b}");
                }
            }
            checked += 1;
        }
        assert!(seen.iter().all(|&s| s), "not onto at L={len}");
    }
    println!(
        "criterion 3 (mapping soundness): PASS — bijective, weight-preserving, structured over all {checked} words, L <= 16"
    );
}

#[test]
fn criterion_4_proposition1_mean_ordered_distance() {
    // As stated: the empirical mean of D_ell over 1e4 seeded deployments
    // must match sqrt(ell/(eta pi)) within 3 standard errors for ell <= 20.
    let eta = 3.2f64;
    let seeds = 10_000u64;
    let max_ell = 20usize;
    let mut sums = vec![0.0f64; max_ell];
    let mut sq_sums = vec![0.0f64; max_ell];
    let mut quad_sums = vec![0.0f64; max_ell];
    for s in 0..seeds {
        let dep = deployment_with_min_count(eta, max_ell, s).unwrap();
        for i in 0..max_ell {
            let d = dep.distances_km[i];
            sums[i] += d;
            sq_sums[i] += d * d;
            quad_sums[i] += d * d * d * d;
        }
    }
    let n = seeds as f64;
    let mut worst_gap_se = 0.0f64;
    let mut worst_ell = 0usize;
    let mut ok = true;
    let mut exact_ok = true;
    let mut rms_ok = true;
    for ell in 1..=max_ell {
        let mean = sums[ell - 1] / n;
        let var = (sq_sums[ell - 1] - n * mean * mean) / (n - 1.0);
        let se = (var / n).sqrt();
        let formula = expected_ordered_distance(ell as u64, eta).unwrap();
        let gap_se = (mean - formula).abs() / se;
        if gap_se > worst_gap_se {
            worst_gap_se = gap_se;
            worst_ell = ell;
        }
        ok &= gap_se <= 3.0;

        // Diagnostics: the PPP's exact mean is Gamma(ell+1/2)/Gamma(ell) /
        // sqrt(eta pi), and sqrt(ell/(eta pi)) is the root-mean-square
        // distance (E[D_ell^2] = ell/(eta pi) exactly).
        let exact_mean = netcap_core::special::gamma(ell as f64 + 0.5)
            / netcap_core::special::gamma(ell as f64)
            / (eta * std::f64::consts::PI).sqrt();
        exact_ok &= (mean - exact_mean).abs() <= 3.0 * se;
        let mean_sq = sq_sums[ell - 1] / n;
        let var_sq = (quad_sums[ell - 1] - n * mean_sq * mean_sq) / (n - 1.0);
        let se_sq = (var_sq / n).sqrt();
        rms_ok &= (mean_sq - formula * formula).abs() <= 3.0 * se_sq;
    }
    println!(
        "criterion 4 (Proposition 1 mean ordered distance): {} — worst |mean - sqrt(ell/(eta pi))| = {:.1} SE at ell={}; \
         sampler matches the exact PPP mean Gamma(ell+1/2)/Gamma(ell)/sqrt(eta pi) within 3 SE: {}; \
         sqrt(ell/(eta pi)) equals the RMS distance, matched by E[D^2] within 3 SE: {}",
        if ok { "PASS" } else { "FAIL" },
        worst_gap_se,
        worst_ell,
        exact_ok,
        rms_ok
    );
    assert!(
        ok,
        "criterion as stated targets the mean against the RMS closed form: the gap is {:.1} SE at ell={} \
         (the sampler itself is exact: mean matches Gamma(ell+1/2)/Gamma(ell)/sqrt(eta pi) within 3 SE = {}, \
         E[D^2] matches ell/(eta pi) within 3 SE = {})",
        worst_gap_se,
        worst_ell,
        exact_ok,
        rms_ok
    );
}

#[test]
fn criterion_5_path_loss_decay() {
    // Log-log slope of the power-law profile at the expected distances.
    let eta = 3.2f64;
    let model = PathLossModel::PowerLaw { beta: 2.0, ref_gain: 1.0 };
    let n = 200usize;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for ell in 1..=n as u64 {
        let d = expected_ordered_distance(ell, eta).unwrap();
        let x = (ell as f64).ln();
        let y = path_gain(&model, d).unwrap().ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let nf = n as f64;
    let slope = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
    let slope_ok = (slope + 1.0).abs() <= 0.05;

    // The Figure-4 deployment (seed 42): every model profile, normalized at
    // ell = 50, must stay above the 0.9^(ell-50) exponential reference.
    let dep = deployment_with_min_count(eta, 200, 42).unwrap();
    let models = [
        (
            "free-space",
            PathLossModel::FreeSpace { freq_hz: 2.4e9, gain: 1e-4, h_b_m: 50.0, h_m_m: 1.5 },
        ),
        (
            "two-ray",
            PathLossModel::TwoRay { freq_hz: 2.4e9, gain: 1e-4, h_b_m: 50.0, h_m_m: 1.5 },
        ),
        (
            "okumura-hata",
            PathLossModel::OkumuraHataSuburban { freq_mhz: 1500.0, h_b_m: 50.0, h_m_m: 1.5 },
        ),
    ];
    let mut slower_ok = true;
    for (name, model) in &models {
        let profile = profile_from_deployment(&dep, model).unwrap();
        let anchor = profile.alpha(50);
        for ell in 51..=200u64 {
            let normalized = profile.alpha(ell) / anchor;
            let reference = 0.9f64.powi(ell as i32 - 50);
            if normalized <= reference {
                slower_ok = false;
                println!("  {name} violates the exponential reference at ell={ell}");
            }
        }
    }
    let ok = slope_ok && slower_ok;
    println!(
        "criterion 5 (path-loss decay): {} — power-law log-log slope {:.4} (target -1.00±0.05), models decay slower than 0.9^ell beyond ell=50: {}",
        if ok { "PASS" } else { "FAIL" },
        slope,
        slower_ok
    );
    assert!(ok);
}

#[test]
fn criterion_6_truncation_depth_soundness() {
    let mut tail_ok = true;
    for exp in 1..=12 {
        let snr = 10f64.powi(exp);
        for rho in [0.3, 0.5, 0.9] {
            let profile = exponential_profile(rho, 1.0).unwrap();
            let direct = min_lp(&profile, snr, 1.0).unwrap();
            let closed = lp_exponential_closed_form(rho, snr, 1.0).unwrap();
            tail_ok &= residual_interference(&profile, direct, snr, 1.0).unwrap().satisfied;
            tail_ok &= residual_interference(&profile, closed, snr, 1.0).unwrap().satisfied;
        }
    }
    let mut ratio_ok = true;
    for exp in 1..=12 {
        let snr = 10f64.powi(exp);
        for a in [1.0, 1.5, 2.0] {
            let profile = double_exponential_profile(a).unwrap();
            let l = lp_double_exponential(a, snr, 1.0).unwrap();
            tail_ok &= residual_interference(&profile, l, snr, 1.0).unwrap().satisfied;
            let ratio = l as f64 / snr.ln().ln().powf(1.0 / a);
            ratio_ok &= (1.0..=2.0).contains(&ratio);
        }
    }
    let ok = tail_ok && ratio_ok;
    println!(
        "criterion 6 (L_P soundness): {} — residual tail below noise at every solver depth: {tail_ok}, L_P/(ln ln SNR)^(1/a) in [1,2]: {ratio_ok}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_7_lower_bound_asymptotics() {
    // Exponential decay saturates: the xi-optimized bound sits below the
    // converse ceiling at P = 1e12.
    let network = NetworkConfig::new(1, 1, 1.0, 1.0, 1e12).unwrap();
    let profile = exponential_profile(0.9, 1.0).unwrap();
    let best = optimize_theorem2_over_xi(&network, &profile, 1e12, &xi_grid(200)).unwrap();
    let ceiling = theorem1_upper_bound(&network, 0.9, 0.9).unwrap();
    let below = best.value_clamped_nats <= ceiling.nats;

    // Double-exponential decay grows: positive ratio series with a
    // survival factor approaching 1.
    let grid: Vec<PowerPoint> = (0..=6).map(|k| PowerPoint::LogLog(4.0 * 10f64.powi(k))).collect();
    let report = corollary2_growth_check(2.0, 0.5, 1.0, 1.0, &grid).unwrap();
    let positive = report.points.iter().all(|pt| pt.ratio > 0.0);
    let final_vs_initial = report.points.last().unwrap().ratio
        >= 0.5 * report.points.first().unwrap().ratio;
    let survival = report.points.last().unwrap().survival;
    let survival_ok = survival >= 0.9;

    let ok = below && positive && final_vs_initial && survival_ok;
    println!(
        "criterion 7 (theorem-2 / corollary-2 asymptotics): {} — thm2(P=1e12)={:.3e} nats <= ceiling {:.3} nats: {below}; \
         ratio series positive: {positive}; final >= 0.5 x initial: {final_vs_initial}; final survival {:.4} >= 0.9: {survival_ok}",
        if ok { "PASS" } else { "FAIL" },
        best.value_clamped_nats,
        ceiling.nats,
        survival
    );
    assert!(ok);
}

#[test]
fn criterion_8_identity_suite() {
    let est = verify_exp_log_fading(1_000_000, 2024).unwrap();
    let fading_ok = (est.mean + EULER_GAMMA).abs() <= 3.0 * est.std_error;

    let mut chi_ok = true;
    for (i, n_r) in [1u32, 2, 4].into_iter().enumerate() {
        let (mc, analytic) = chi_square_log_identity(n_r, 1.0, 1_000_000, 77 + i as u64).unwrap();
        chi_ok &= (mc.mean - analytic).abs() <= 3.0 * mc.std_error;
    }

    let mut cauchy_ok = true;
    for n_r in [1u32, 2, 4] {
        for beta in [0.1, 1.0, 10.0] {
            let integral = cauchy_normalization_quadrature(beta, n_r).unwrap();
            cauchy_ok &= (integral - 1.0).abs() < 1e-6;
        }
    }

    let mut geo_ok = true;
    for p in [0.01, 0.1, 0.5, 0.9, 0.99] {
        let (unit, shifted) = leading_one_series_partial_sums(p, 10_000).unwrap();
        geo_ok &= (unit - 1.0).abs() < 1e-12;
        let closed = (1.0 - p) / p;
        geo_ok &= ((shifted - closed) / closed).abs() < 1e-12;
    }

    let mut telescoping_ok = true;
    for n_t in 1..=8u32 {
        for i in 1..=20 {
            let delta = i as f64 / 20.0;
            let sum = netcap_core::bounds::binomial_telescoping_sum(n_t, delta).unwrap();
            telescoping_ok &= sum <= n_t as f64 * (1.0 - delta) + 1e-12;
        }
    }

    let ok = fading_ok && chi_ok && cauchy_ok && geo_ok && telescoping_ok;
    println!(
        "criterion 8 (identity suite): {} — E[ln|H|^2]=-gamma: {fading_ok}, chi-square log identity: {chi_ok}, \
         cauchy normalization 1±1e-6: {cauchy_ok}, geometric sums 1e-12: {geo_ok}, telescoping bound: {telescoping_ok}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_9_determinism() {
    let configs = [
        r#"{"experiment": "fig3a_bound_vs_delta", "seed": 42}"#,
        r#"{"experiment": "fig3b_bound_vs_rho", "seed": 42}"#,
        r#"{"experiment": "fig4_decay_patterns", "seed": 42}"#,
        r#"{"experiment": "lp_growth", "seed": 42}"#,
        r#"{"experiment": "thm2_sweep", "seed": 42}"#,
        r#"{"experiment": "cor2_growth", "seed": 42}"#,
        r#"{"experiment": "mapping_audit", "seed": 42}"#,
        r#"{"experiment": "identity_audit", "seed": 42, "params": {"mc_samples": 200000}}"#,
    ];
    for text in configs {
        let cfg = parse_config(text).unwrap();
        let first = run_experiment(&cfg).unwrap();
        let second = run_experiment(&cfg).unwrap();
        assert_eq!(
            first.files.len(),
            second.files.len(),
            "{}: file count changed between runs",
            cfg.kind.name()
        );
        for ((name_a, bytes_a), (name_b, bytes_b)) in first.files.iter().zip(&second.files) {
            assert_eq!(name_a, name_b);
            assert_eq!(
                bytes_a,
                bytes_b,
                "{}: output {name_a} not byte-identical across reruns",
                cfg.kind.name()
            );
        }
    }
    println!("criterion 9 (determinism): PASS — byte-identical outputs across reruns of all 8 experiments");
}
