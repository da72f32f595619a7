use std::f64::consts::{FRAC_PI_2, PI};

use leo_doppler_core::distribution::{DopplerMagnitudeDistribution, OrderStatistics};
use leo_doppler_core::doppler::{
    doppler_bound, doppler_exact, doppler_exact_from_rate, gamma_dot, theta_of_alpha_max,
    PassGeometry,
};
use leo_doppler_core::geometry::{self, SatelliteConfig};
use leo_doppler_core::Error;
use proptest::prelude::*;

fn leo() -> SatelliteConfig {
    SatelliteConfig::leo_600()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn exact_doppler_is_dominated_by_envelope(alpha_max in 0.01f64..FRAC_PI_2 - 1e-3, dt in -700.0f64..700.0) {
        let cfg = leo();
        let pass = PassGeometry::from_alpha_max(&cfg, alpha_max, 0.0).unwrap();
        let gamma = geometry::central_angle(&cfg, dt, pass.theta()).unwrap();
        match geometry::elevation_from_central_angle(&cfg, gamma) {
            Ok(alpha_t) => {
                let exact = doppler_exact(&cfg, dt, &pass).abs();
                let bound = doppler_bound(&cfg, alpha_t).unwrap();
                prop_assert!(exact <= bound * (1.0 + 1e-12));
                if dt != 0.0 && pass.theta() < 1.0 - 1e-9 {
                    prop_assert!(exact < bound);
                }
            }
            Err(e) => prop_assert_eq!(e, Error::BelowHorizon),
        }
    }

    #[test]
    fn central_angle_rate_is_below_orbital_rate(theta in 0.9f64..0.999_999, dt in -3000.0f64..3000.0) {
        let cfg = leo();
        prop_assert!(gamma_dot(&cfg, dt, theta).unwrap().abs() < cfg.ecf_angular_velocity());
    }

    #[test]
    fn two_doppler_forms_agree(alpha_max in 0.0f64..=FRAC_PI_2, dt in -900.0f64..900.0) {
        let cfg = leo();
        let pass = PassGeometry::from_alpha_max(&cfg, alpha_max, 0.0).unwrap();
        let a = doppler_exact(&cfg, dt, &pass);
        let b = doppler_exact_from_rate(&cfg, dt, &pass);
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(b.abs()), "{} vs {}", a, b);
    }

    #[test]
    fn doppler_sign_opposes_phase(alpha_max in 0.0f64..=FRAC_PI_2, dt in -900.0f64..900.0) {
        let cfg = leo();
        let pass = PassGeometry::from_alpha_max(&cfg, alpha_max, 0.0).unwrap();
        let chi = doppler_exact(&cfg, dt, &pass);
        let s = (dt * cfg.ecf_angular_velocity()).sin();
        prop_assert!(chi * s <= 0.0);
        if s != 0.0 {
            prop_assert!(chi != 0.0);
        }
    }

    #[test]
    fn central_angle_round_trip(theta in 0.9f64..=1.0, dt in -2000.0f64..2000.0) {
        let cfg = leo();
        let g = geometry::central_angle(&cfg, dt, theta).unwrap();
        let expected = (dt * cfg.ecf_angular_velocity()).cos() * theta;
        prop_assert!((g.cos() - expected).abs() < 1e-12);
    }

    #[test]
    fn slant_range_is_consistent_with_law_of_cosines(theta in 0.92f64..=1.0, dt in -600.0f64..600.0) {
        let cfg = leo();
        let g = geometry::central_angle(&cfg, dt, theta).unwrap();
        let s1 = geometry::slant_range(&cfg, dt, theta).unwrap();
        let s2 = geometry::slant_range_from_central_angle(&cfg, g);
        prop_assert!((s1 - s2).abs() <= 1e-6 * s1);
        prop_assert!(s1 >= cfg.altitude() * (1.0 - 1e-12));
        prop_assert!(s1 <= cfg.earth_radius() + cfg.orbital_radius());
    }

    #[test]
    fn slant_range_monotonicity(theta in 0.92f64..1.0, a in 0.0f64..PI, b in 0.0f64..PI) {
        let cfg = leo();
        let wf = cfg.ecf_angular_velocity();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s_lo = geometry::slant_range(&cfg, lo / wf, theta).unwrap();
        let s_hi = geometry::slant_range(&cfg, hi / wf, theta).unwrap();
        prop_assert!(s_lo <= s_hi * (1.0 + 1e-15));
        // Θ only shortens the range while cos(dt ω_F) ≥ 0
        let tighter = (theta + (1.0 - theta) * 0.5).min(1.0);
        prop_assume!(lo <= std::f64::consts::FRAC_PI_2);
        prop_assert!(geometry::slant_range(&cfg, lo / wf, tighter).unwrap() <= s_lo * (1.0 + 1e-15));
    }

    #[test]
    fn theta_stays_in_range(alpha_max in 0.0f64..=FRAC_PI_2) {
        let cfg = leo();
        let t = theta_of_alpha_max(&cfg, alpha_max).unwrap();
        prop_assert!(t >= cfg.horizon_cosine() * (1.0 - 1e-15) && t <= 1.0);
    }

    #[test]
    fn doppler_cdf_is_a_distribution(
        scale in 1e3f64..1e5,
        h_km in 300.0f64..2000.0,
        rho_km in 1.0f64..300.0,
        rhat_km in 0.0f64..600.0,
        u in 0.0f64..1.0,
        v in 0.0f64..1.0,
    ) {
        let d = DopplerMagnitudeDistribution::new(scale, h_km * 1e3, rho_km * 1e3, rhat_km * 1e3).unwrap();
        let top = d.support_max();
        prop_assert!(top < scale);
        prop_assert_eq!(d.cdf(0.0).unwrap(), 0.0);
        prop_assert_eq!(d.cdf(top).unwrap(), 1.0);
        let (x, y) = if u < v { (u * top, v * top) } else { (v * top, u * top) };
        let (fx, fy) = (d.cdf(x).unwrap(), d.cdf(y).unwrap());
        prop_assert!(fx <= fy + 1e-12);
        prop_assert!((0.0..=1.0).contains(&fx));
        prop_assert!(d.pdf(x).unwrap() >= 0.0);
        // right continuity
        prop_assert!((d.cdf(x + 1e-9 * top).unwrap() - fx).abs() < 1e-4);
    }

    #[test]
    fn order_statistics_sandwich(n in 1u32..64, rhat_km in 0.0f64..400.0, u in 0.0f64..1.0) {
        let d = DopplerMagnitudeDistribution::from_config(&leo(), 100e3, rhat_km * 1e3).unwrap();
        let os = OrderStatistics::new(n).unwrap();
        let x = u * d.support_max();
        let f = d.cdf(x).unwrap();
        prop_assert!(os.max_cdf(&d, x).unwrap() <= f + 1e-15);
        prop_assert!(f <= os.min_cdf(&d, x).unwrap() + 1e-15);
    }
}

fn grid(top: f64) -> impl Iterator<Item = f64> {
    (0..=400).map(move |i| top * i as f64 / 400.0)
}

#[test]
fn cdf_worsens_with_cluster_size_at_proportional_offset() {
    let cfg = leo();
    let curves: Vec<_> = [50e3, 100e3, 150e3]
        .iter()
        .map(|&rho| DopplerMagnitudeDistribution::from_config(&cfg, rho, 2.0 * rho).unwrap())
        .collect();
    for x in grid(cfg.doppler_scale()) {
        let f: Vec<f64> = curves.iter().map(|d| d.cdf(x).unwrap()).collect();
        assert!(f[0] >= f[1] && f[1] >= f[2], "x={x} {f:?}");
    }
}

#[test]
fn cdf_worsens_as_sub_satellite_point_moves_away() {
    let cfg = leo();
    let mut rhats = Vec::new();
    for i in 0..=30 {
        rhats.push(i as f64 * 20e3);
    }
    let curves: Vec<_> = rhats
        .iter()
        .map(|&r| DopplerMagnitudeDistribution::from_config(&cfg, 100e3, r).unwrap())
        .collect();
    for x in grid(cfg.doppler_scale()) {
        for w in curves.windows(2) {
            assert!(
                w[0].cdf(x).unwrap() >= w[1].cdf(x).unwrap() - 1e-12,
                "x={x}"
            );
        }
    }
}

#[test]
fn higher_altitude_improves_cdf() {
    let low = leo();
    let high = SatelliteConfig::leo_1200();
    for rho in [100e3, 200e3] {
        let a = DopplerMagnitudeDistribution::from_config(&low, rho, 2.0 * rho).unwrap();
        let b = DopplerMagnitudeDistribution::from_config(&high, rho, 2.0 * rho).unwrap();
        for x in grid(low.doppler_scale()) {
            assert!(b.cdf(x).unwrap() >= a.cdf(x).unwrap(), "rho={rho} x={x}");
        }
    }
}

#[test]
fn doubling_altitude_more_than_quadruples_small_threshold_probability() {
    let low = DopplerMagnitudeDistribution::from_config(&leo(), 100e3, 0.0).unwrap();
    let high = DopplerMagnitudeDistribution::from_config(&SatelliteConfig::leo_1200(), 100e3, 0.0)
        .unwrap();
    let a600 = low.scale();
    for i in 1..=50 {
        let x = 0.001 * i as f64 * a600;
        let ratio = high.overhead_cdf(x).unwrap() / low.overhead_cdf(x).unwrap();
        assert!(ratio > 4.0, "x={x} ratio={ratio}");
    }
    let limit = 4.0 * (a600 / high.scale()).powi(2);
    assert!((limit - 4.389_116_630_699_451).abs() < 1e-9);
}
