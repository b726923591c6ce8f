//! Line-oriented CSV serialization with a fixed floating-point rendering
//! (17 significant digits, enough to round-trip any f64 bit pattern).

use crate::fading::{Deployment, FadingProfile};
use crate::simkernel::McEstimate;

/// Render with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `ell,alpha` rows for the first `max_ell` cells of a profile.
pub fn profile_to_csv(profile: &FadingProfile, max_ell: u64) -> String {
    let mut out = String::from("ell,alpha\n");
    for ell in 1..=max_ell {
        out.push_str(&format!("{ell},{}\n", fmt_f64(profile.alpha(ell))));
    }
    out
}

/// `ell,distance_km` rows for a sampled deployment.
pub fn deployment_to_csv(dep: &Deployment) -> String {
    let mut out = String::from("ell,distance_km\n");
    for (i, d) in dep.distances_km.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, fmt_f64(*d)));
    }
    out
}

/// `estimate,std_error,n,seed` single-row rendering.
pub fn estimate_to_csv(est: &McEstimate) -> String {
    format!(
        "estimate,std_error,n,seed\n{},{},{},{}\n",
        fmt_f64(est.mean),
        fmt_f64(est.std_error),
        est.n_samples,
        est.seed
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::exponential_profile;

    #[test]
    fn fmt_round_trips_exactly() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-300,
            9.87e250,
            -0.0,
            42.0,
        ] {
            let parsed: f64 = fmt_f64(x).parse().unwrap();
            assert_eq!(parsed.to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn profile_rows() {
        let p = exponential_profile(0.5, 1.0).unwrap();
        let csv = profile_to_csv(&p, 3);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "ell,alpha");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("3,"));
        let alpha3: f64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(alpha3, 0.125);
    }

    #[test]
    fn deployment_rows() {
        let dep = Deployment {
            intensity: 1.0,
            region_radius_km: 2.0,
            seed: 0,
            distances_km: vec![0.5, 1.25],
        };
        let csv = deployment_to_csv(&dep);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("ell,distance_km\n1,"));
    }
}
