//! Seeded statistical checks of the samplers and the Monte Carlo pipeline.

use std::f64::consts::PI;

use leo_doppler_core::cluster::{
    distances_to_point, sample_cell, sample_uniform_disk, stream_rng, CellModel,
};
use leo_doppler_core::disk::DiskDistanceDistribution;
use leo_doppler_core::geometry::{PlanarPoint, SatelliteConfig};
use leo_doppler_core::validation::{run_scenario, EmpiricalCdf, ReportGrid, ScenarioConfig};

/// Upper 0.1% point of the chi-square distribution with 31 degrees of
/// freedom.
const CHI2_31_P001: f64 = 61.098;

#[test]
fn uniform_disk_mean_distance_and_radial_law() {
    let rho = 100e3;
    let n = 1_000_000;
    let s = sample_uniform_disk(&mut stream_rng(2024, 0), PlanarPoint::ORIGIN, rho, n).unwrap();
    let d = distances_to_point(&s, PlanarPoint::ORIGIN);

    let mean = d.iter().sum::<f64>() / n as f64;
    // E[r] = 2ρ/3, Var[r] = ρ²/2 − 4ρ²/9 = ρ²/18
    let se = (rho * rho / 18.0 / n as f64).sqrt();
    assert!((mean - 2.0 * rho / 3.0).abs() < 3.0 * se, "mean={mean}");

    let pit = EmpiricalCdf::new(d.iter().map(|r| (r / rho).powi(2)).collect()).unwrap();
    let ks = pit.ks_distance(|u| u.clamp(0.0, 1.0));
    assert!(ks < 0.002, "ks={ks}");
}

#[test]
fn daughter_angles_are_uniform() {
    let n = 1_000_000;
    let s = sample_uniform_disk(&mut stream_rng(77, 3), PlanarPoint::ORIGIN, 1.0, n).unwrap();
    let mut bins = [0u64; 32];
    for u in &s.users {
        let a = u.y.atan2(u.x).rem_euclid(2.0 * PI);
        bins[((a / (2.0 * PI) * 32.0) as usize).min(31)] += 1;
    }
    let expected = n as f64 / 32.0;
    let chi2: f64 = bins
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi2 < CHI2_31_P001, "chi2={chi2}");
}

#[test]
fn poisson_parent_count_mean() {
    // λ_c π R_cell² = 5
    let model = CellModel::new(10e3, 5.0 / (PI * 1e8), 1e3, 2).unwrap();
    let mut rng = stream_rng(9, 0);
    let draws = 100_000;
    let mut total = 0usize;
    for _ in 0..draws {
        let cell = sample_cell(&mut rng, &model);
        assert!(cell.iter().all(|c| c.users.len() == 2));
        total += cell.len();
    }
    let mean = total as f64 / draws as f64;
    let se = (5.0f64 / draws as f64).sqrt();
    assert!((mean - 5.0).abs() < 3.0 * se, "mean={mean}");
}

#[test]
fn cell_users_may_leave_the_cell() {
    let model = CellModel::new(1e3, 3.0 / (PI * 1e6), 1e3, 50).unwrap();
    let mut rng = stream_rng(1, 0);
    let outside = (0..200)
        .flat_map(|_| sample_cell(&mut rng, &model))
        .flat_map(|c| c.users)
        .filter(|u| u.norm() > 1e3)
        .count();
    assert!(outside > 0);
}

#[test]
fn distances_to_fixed_point_follow_disk_law() {
    let rho = 100e3;
    for (k, rhat) in [0.0, 50e3, 200e3].into_iter().enumerate() {
        let s = sample_uniform_disk(
            &mut stream_rng(31, k as u64),
            PlanarPoint::ORIGIN,
            rho,
            100_000,
        )
        .unwrap();
        let law = DiskDistanceDistribution::new(rho, rhat).unwrap();
        let e = EmpiricalCdf::new(distances_to_point(&s, PlanarPoint::new(rhat, 0.0))).unwrap();
        let ks = e.ks_distance(|r| law.cdf(r));
        assert!(ks < 0.004, "rhat={rhat} ks={ks}");
    }
}

fn fig2_scenario(rho: f64, trials: u64, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        satellite: SatelliteConfig::leo_600(),
        cluster_radius: rho,
        offset: 2.0 * rho,
        users_per_cluster: 8,
        trials,
        seed,
        center_on_track: true,
    }
}

#[test]
fn bound_samples_match_analytic_and_exact_samples_dominate() {
    let report = run_scenario(&fig2_scenario(50e3, 12_500, 5), ReportGrid::default()).unwrap();
    assert_eq!(report.exact_samples, 100_000);
    assert_eq!(report.excluded, 0);
    assert!(report.ks_bound < 0.01, "ks_bound={}", report.ks_bound);
    assert_eq!(report.dominance_violations, 0);
    assert!(report
        .grid
        .iter()
        .all(|r| r.empirical_exact + 1e-12 >= r.empirical_bound));
}

#[test]
fn off_track_geometry_also_dominates() {
    let config = ScenarioConfig {
        center_on_track: false,
        ..fig2_scenario(100e3, 5_000, 8)
    };
    let report = run_scenario(&config, ReportGrid::default()).unwrap();
    assert!(report.ks_bound * (report.bound_samples as f64).sqrt() < 1.63);
    assert_eq!(report.dominance_violations, 0);
}

#[test]
fn bound_is_tighter_for_smaller_clusters() {
    let gaps: Vec<f64> = [200e3, 100e3, 50e3]
        .iter()
        .map(|&rho| {
            run_scenario(&fig2_scenario(rho, 12_500, 17), ReportGrid::default())
                .unwrap()
                .ks_exact
        })
        .collect();
    assert!(gaps[0] >= gaps[1] && gaps[1] >= gaps[2], "{gaps:?}");
}
