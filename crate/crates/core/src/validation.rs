//! Monte Carlo comparison of the analytic Doppler magnitude CDF with
//! per-user Doppler computed on the sphere.
//!
//! Every sampled user gets two magnitudes:
//!
//! - the *exact* Doppler of its own pass: the planar position is mapped to the
//!   sphere (azimuthal equidistant about the cluster center), its
//!   cross-track angle fixes `Θ`, and the along-track angle between the user's
//!   closest-approach point and the sub-satellite point fixes `dt ω_F`;
//! - the *bound*, `A z / sqrt(h² + z²)` with `z` the planar distance to the
//!   sub-satellite point, which is exactly the variable whose law the analytic
//!   CDF describes.
//!
//! The exact magnitude never exceeds the bound, so the analytic CDF should
//! sit below the exact empirical CDF up to sampling noise.
//!
//! Trials are grouped in blocks of [`BLOCK_TRIALS`] clusters, each drawn
//! from its own generator stream, so results do not depend on how blocks are
//! scheduled.

use alloc::vec::Vec;

use libm::{acos, asin, atan2, sqrt};

use crate::cluster::{sample_uniform_disk, stream_rng};
use crate::distribution::DopplerMagnitudeDistribution;
use crate::doppler::{doppler_exact, PassGeometry};
use crate::geometry::{elevation_from_central_angle, PlanarPoint, SatelliteConfig, UnitVector};
use crate::{Error, Result};

/// Clusters per generator stream.
pub const BLOCK_TRIALS: u64 = 1024;

/// Default number of report abscissae.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// Experiment knobs for one simulated snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub satellite: SatelliteConfig,
    /// Cluster radius `ρ`, m.
    pub cluster_radius: f64,
    /// Ground distance `R̂_t` from the sub-satellite point to the cluster
    /// center, m.
    pub offset: f64,
    pub users_per_cluster: u32,
    /// Number of independently sampled clusters.
    pub trials: u64,
    pub seed: u64,
    /// Cluster center on the ground track, with the sub-satellite point
    /// ahead of it along the track. Otherwise the sub-satellite point is
    /// abeam of the center and the track runs parallel to the planar x-axis.
    pub center_on_track: bool,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be >= 1"));
        }
        if self.users_per_cluster == 0 {
            return Err(Error::invalid("users per cluster", "must be >= 1"));
        }
        DopplerMagnitudeDistribution::from_config(
            &self.satellite,
            self.cluster_radius,
            self.offset,
        )?;
        Ok(())
    }

    pub fn total_users(&self) -> u64 {
        self.trials * u64::from(self.users_per_cluster)
    }
}

/// Derived quantities of one sampled user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserSample {
    pub position: PlanarPoint,
    /// Signed great-circle angle between the user and the ground track, rad.
    pub cross_track: f64,
    /// `dt ω_F`: orbital phase of the satellite past the user's closest
    /// approach, rad.
    pub phase: f64,
    pub theta: f64,
    /// Instantaneous elevation of the satellite, rad.
    pub elevation: f64,
    /// Signed exact Doppler, Hz.
    pub exact_doppler: f64,
    /// Flat-earth envelope magnitude, Hz.
    pub bound_doppler: f64,
}

/// A validated scenario with its spherical frame precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    config: ScenarioConfig,
    distribution: DopplerMagnitudeDistribution,
    sub_satellite: PlanarPoint,
    sub_satellite_dir: UnitVector,
    track_pole: UnitVector,
    motion_dir: UnitVector,
}

impl Scenario {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let cfg = &config.satellite;
        let distribution =
            DopplerMagnitudeDistribution::from_config(cfg, config.cluster_radius, config.offset)?;
        let sub_satellite = if config.center_on_track {
            PlanarPoint::new(config.offset, 0.0)
        } else {
            PlanarPoint::new(0.0, config.offset)
        };
        let s = UnitVector::from_plane(sub_satellite, cfg.earth_radius())?;
        let angle = config.offset / cfg.earth_radius();
        let heading = if config.center_on_track {
            UnitVector([-libm::sin(angle), libm::cos(angle), 0.0])
        } else {
            UnitVector([0.0, 1.0, 0.0])
        };
        let pole = UnitVector(s.cross(&heading));
        let motion = UnitVector(pole.cross(&s));
        Ok(Scenario {
            config,
            distribution,
            sub_satellite,
            sub_satellite_dir: s,
            track_pole: pole,
            motion_dir: motion,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn distribution(&self) -> &DopplerMagnitudeDistribution {
        &self.distribution
    }

    pub fn sub_satellite_point(&self) -> PlanarPoint {
        self.sub_satellite
    }

    /// Full per-user evaluation. Fails with [`Error::BelowHorizon`] when the
    /// satellite is not visible from `p`.
    pub fn evaluate_user(&self, p: PlanarPoint) -> Result<UserSample> {
        let cfg = &self.config.satellite;
        let u = UnitVector::from_plane(p, cfg.earth_radius())?;
        let cos_gamma = u.dot(&self.sub_satellite_dir).clamp(-1.0, 1.0);
        if cos_gamma < cfg.horizon_cosine() {
            return Err(Error::BelowHorizon);
        }
        let elevation = elevation_from_central_angle(cfg, acos(cos_gamma))?;
        let cross_track = asin(u.dot(&self.track_pole).clamp(-1.0, 1.0));
        // the satellite sits at phase 0; the user's foot on the track is
        // `ahead` radians further along the direction of motion
        let ahead = atan2(u.dot(&self.motion_dir), u.dot(&self.sub_satellite_dir));
        let phase = -ahead;
        let pass = PassGeometry::from_cross_track(cfg, cross_track)?;
        let dt = phase / cfg.ecf_angular_velocity();
        Ok(UserSample {
            position: p,
            cross_track,
            phase,
            theta: pass.theta(),
            elevation,
            exact_doppler: doppler_exact(cfg, dt, &pass),
            bound_doppler: self.bound_doppler(p),
        })
    }

    /// Signed exact Doppler of the user at `p`, Hz.
    pub fn exact_doppler(&self, p: PlanarPoint) -> Result<f64> {
        self.evaluate_user(p).map(|u| u.exact_doppler)
    }

    /// `A z / sqrt(h² + z²)` with `z` the planar distance from `p` to the
    /// sub-satellite point.
    pub fn bound_doppler(&self, p: PlanarPoint) -> f64 {
        self.distribution
            .magnitude_at_distance(p.distance(&self.sub_satellite))
    }

    pub fn block_count(&self) -> u64 {
        self.config.trials.div_ceil(BLOCK_TRIALS)
    }

    /// Samples the clusters of block `block` and evaluates every user.
    pub fn simulate_block(&self, block: u64) -> BlockResult {
        let first = block * BLOCK_TRIALS;
        let count = self.config.trials.saturating_sub(first).min(BLOCK_TRIALS);
        let users = self.config.users_per_cluster as usize;
        let mut rng = stream_rng(self.config.seed, block);
        let mut out = BlockResult {
            exact: Vec::with_capacity(count as usize * users),
            bound: Vec::with_capacity(count as usize * users),
            excluded: 0,
        };
        for _ in 0..count {
            let cluster = sample_uniform_disk(
                &mut rng,
                PlanarPoint::ORIGIN,
                self.config.cluster_radius,
                users,
            )
            .expect("scenario invariants hold");
            for p in cluster.users {
                out.bound.push(self.bound_doppler(p));
                match self.exact_doppler(p) {
                    Ok(chi) => out.exact.push(chi.abs()),
                    Err(_) => out.excluded += 1,
                }
            }
        }
        out
    }
}

/// Magnitudes drawn by one block.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockResult {
    pub exact: Vec<f64>,
    pub bound: Vec<f64>,
    /// Users that could not see the satellite.
    pub excluded: u64,
}

/// Sorted-sample step function.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid(
                "samples",
                "empirical CDF needs at least one",
            ));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("samples", "must not contain NaN"));
        }
        samples.sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `≤ x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// Kolmogorov-Smirnov distance to `cdf`, taken at the sample points.
    ///
    /// A run of tied samples is one jump of the step function: its right value
    /// is compared with `cdf(x)` and its left value with the left limit
    /// `cdf(x⁻)`, so a discontinuous `cdf` matching the sample gives zero.
    pub fn ks_distance<F>(&self, cdf: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let n = self.sorted.len() as f64;
        let mut sup: f64 = 0.0;
        let mut start = 0;
        while start < self.sorted.len() {
            let x = self.sorted[start];
            let end = start + self.sorted[start..].partition_point(|&v| v <= x);
            let right = (cdf(x) - end as f64 / n).abs();
            let left = (cdf(x.next_down()) - start as f64 / n).abs();
            sup = sup.max(right).max(left);
            start = end;
        }
        sup.min(1.0)
    }
}

/// Free-standing form of [`EmpiricalCdf::ks_distance`].
pub fn ks_distance<F: Fn(f64) -> f64>(e: &EmpiricalCdf, cdf: F) -> f64 {
    e.ks_distance(cdf)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub x_hz: f64,
    pub analytic: f64,
    pub empirical_exact: f64,
    pub empirical_bound: f64,
}

/// Abscissae on which a report is tabulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportGrid {
    pub points: usize,
    /// Right end of the grid; the support maximum when `None`.
    pub upper: Option<f64>,
}

impl Default for ReportGrid {
    fn default() -> Self {
        ReportGrid {
            points: DEFAULT_GRID_POINTS,
            upper: None,
        }
    }
}

impl ReportGrid {
    pub fn abscissae(&self, support_max: f64) -> Vec<f64> {
        let upper = self.upper.unwrap_or(support_max);
        let last = (self.points.max(2) - 1) as f64;
        (0..self.points.max(2))
            .map(|i| {
                if i as f64 == last {
                    upper
                } else {
                    upper * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// KS distance between the bound samples and the analytic CDF.
    pub ks_bound: f64,
    /// KS distance between the exact samples and the analytic CDF.
    pub ks_exact: f64,
    /// Grid points where the analytic CDF exceeds the exact empirical CDF by
    /// more than three binomial standard errors.
    pub dominance_violations: usize,
    pub excluded: u64,
    pub exact_samples: usize,
    pub bound_samples: usize,
    pub grid: Vec<GridRow>,
}

impl ComparisonReport {
    /// Merges block results (in any order) and tabulates the comparison.
    pub fn from_blocks<I>(scenario: &Scenario, blocks: I, grid: ReportGrid) -> Result<Self>
    where
        I: IntoIterator<Item = BlockResult>,
    {
        let mut exact = Vec::new();
        let mut bound = Vec::new();
        let mut excluded = 0;
        for b in blocks {
            exact.extend(b.exact);
            bound.extend(b.bound);
            excluded += b.excluded;
        }
        let exact = EmpiricalCdf::new(exact)?;
        let bound = EmpiricalCdf::new(bound)?;
        let dist = scenario.distribution();
        let analytic = |x: f64| dist.cdf(x.max(0.0)).expect("argument clamped to >= 0");

        let n = exact.len() as f64;
        let mut violations = 0;
        let rows: Vec<GridRow> = grid
            .abscissae(dist.support_max())
            .into_iter()
            .map(|x| {
                let row = GridRow {
                    x_hz: x,
                    analytic: analytic(x),
                    empirical_exact: exact.eval(x),
                    empirical_bound: bound.eval(x),
                };
                let se = sqrt(row.analytic * (1.0 - row.analytic) / n);
                if row.analytic > row.empirical_exact + 3.0 * se {
                    violations += 1;
                }
                row
            })
            .collect();

        Ok(ComparisonReport {
            ks_bound: bound.ks_distance(analytic),
            ks_exact: exact.ks_distance(analytic),
            dominance_violations: violations,
            excluded,
            exact_samples: exact.len(),
            bound_samples: bound.len(),
            grid: rows,
        })
    }
}

/// Runs every block on the calling thread.
pub fn run_scenario(config: &ScenarioConfig, grid: ReportGrid) -> Result<ComparisonReport> {
    let scenario = Scenario::new(*config)?;
    let blocks = (0..scenario.block_count()).map(|b| scenario.simulate_block(b));
    ComparisonReport::from_blocks(&scenario, blocks, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doppler::doppler_bound;
    use approx::assert_relative_eq;

    fn scenario(rho_km: f64, rhat_km: f64) -> Scenario {
        Scenario::new(ScenarioConfig {
            satellite: SatelliteConfig::leo_600(),
            cluster_radius: rho_km * 1e3,
            offset: rhat_km * 1e3,
            users_per_cluster: 10,
            trials: 100,
            seed: 42,
            center_on_track: true,
        })
        .unwrap()
    }

    #[test]
    fn overhead_center_has_zero_doppler() {
        let s = scenario(100.0, 0.0);
        assert_eq!(s.exact_doppler(PlanarPoint::ORIGIN).unwrap(), 0.0);
        assert_eq!(s.bound_doppler(PlanarPoint::ORIGIN), 0.0);
    }

    #[test]
    fn on_track_user_matches_ground_track_formula() {
        let s = scenario(100.0, 200.0);
        let cfg = s.config().satellite;
        for &x in &[-90e3, -10e3, 0.0, 50e3, 99e3] {
            let u = s.evaluate_user(PlanarPoint::new(x, 0.0)).unwrap();
            assert_eq!(u.theta, 1.0);
            let envelope = doppler_bound(&cfg, u.elevation).unwrap();
            assert_relative_eq!(u.exact_doppler.abs(), envelope, max_relative = 1e-9);
        }
    }

    #[test]
    fn approaching_users_see_positive_shift() {
        // the satellite moves towards +x, so users ahead of it are approached
        let s = scenario(100.0, 200.0);
        assert!(s.exact_doppler(PlanarPoint::new(50e3, 20e3)).unwrap() < 0.0);
        assert!(s.exact_doppler(PlanarPoint::new(300e3, 20e3)).is_ok());
        let ahead = Scenario::new(ScenarioConfig {
            offset: 0.0,
            ..*s.config()
        })
        .unwrap();
        assert!(ahead.exact_doppler(PlanarPoint::new(50e3, 20e3)).unwrap() > 0.0);
    }

    #[test]
    fn off_track_users_are_strictly_dominated() {
        let s = scenario(100.0, 200.0);
        let cfg = s.config().satellite;
        for &(x, y) in &[(0.0, 50e3), (-80e3, 40e3), (60e3, -70e3)] {
            let u = s.evaluate_user(PlanarPoint::new(x, y)).unwrap();
            let envelope = doppler_bound(&cfg, u.elevation).unwrap();
            assert!(u.exact_doppler.abs() < envelope);
            assert!(envelope <= u.bound_doppler * (1.0 + 1e-12));
        }
    }

    #[test]
    fn abeam_scenario_geometry() {
        let s = Scenario::new(ScenarioConfig {
            center_on_track: false,
            ..*scenario(100.0, 200.0).config()
        })
        .unwrap();
        // the sub-satellite point itself is on the track, at phase zero
        let u = s.evaluate_user(PlanarPoint::new(0.0, 200e3)).unwrap();
        assert!(u.cross_track.abs() < 1e-12);
        assert!(u.phase.abs() < 1e-12);
        // the cluster center is abeam: zero phase, cross-track R̂/r_E
        let c = s.evaluate_user(PlanarPoint::ORIGIN).unwrap();
        assert!(c.phase.abs() < 1e-12);
        assert_relative_eq!(c.cross_track.abs(), 200.0 / 6371.0, max_relative = 1e-9);
        assert!(c.exact_doppler.abs() < 1e-6);
    }

    #[test]
    fn below_horizon_users_are_flagged() {
        let s = scenario(100.0, 200.0);
        assert_eq!(
            s.exact_doppler(PlanarPoint::new(4_000e3, 0.0)),
            Err(Error::BelowHorizon)
        );
    }

    #[test]
    fn ks_special_cases() {
        let one = EmpiricalCdf::new(alloc::vec![2.0]).unwrap();
        let cdf = |x: f64| (x / 4.0).clamp(0.0, 1.0);
        assert_relative_eq!(one.ks_distance(cdf), 0.5);
        let constant = EmpiricalCdf::new(alloc::vec![1.0; 10]).unwrap();
        assert_eq!(
            constant.ks_distance(|x| if x >= 1.0 { 1.0 } else { 0.0 }),
            0.0
        );
        assert!(EmpiricalCdf::new(alloc::vec![]).is_err());
        assert!(EmpiricalCdf::new(alloc::vec![f64::NAN]).is_err());
    }

    #[test]
    fn empirical_cdf_steps() {
        let e = EmpiricalCdf::new(alloc::vec![3.0, 1.0, 2.0, 2.0]).unwrap();
        assert_eq!(e.samples(), &[1.0, 2.0, 2.0, 3.0]);
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(2.0), 0.75);
        assert_eq!(e.eval(3.0), 1.0);
    }

    #[test]
    fn degenerate_cluster_is_a_step() {
        let config = ScenarioConfig {
            cluster_radius: 1.0,
            trials: 20,
            ..*scenario(100.0, 200.0).config()
        };
        let s = Scenario::new(config).unwrap();
        let center = s.exact_doppler(PlanarPoint::ORIGIN).unwrap().abs();
        let block = s.simulate_block(0);
        assert!(block
            .exact
            .iter()
            .all(|v| (v - center).abs() / center < 1e-4));
        let report = run_scenario(&config, ReportGrid::default()).unwrap();
        assert_eq!(report.exact_samples, 200);
        assert_eq!(report.grid.len(), DEFAULT_GRID_POINTS);
    }

    #[test]
    fn report_is_deterministic_and_block_order_free() {
        let config = ScenarioConfig {
            trials: 3000,
            ..*scenario(50.0, 100.0).config()
        };
        let a = run_scenario(&config, ReportGrid::default()).unwrap();
        let b = run_scenario(&config, ReportGrid::default()).unwrap();
        assert_eq!(a, b);
        let s = Scenario::new(config).unwrap();
        let reversed: Vec<_> = (0..s.block_count())
            .rev()
            .map(|k| s.simulate_block(k))
            .collect();
        let c = ComparisonReport::from_blocks(&s, reversed, ReportGrid::default()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn rejects_invalid_scenarios() {
        let base = *scenario(100.0, 0.0).config();
        assert!(Scenario::new(ScenarioConfig { trials: 0, ..base }).is_err());
        assert!(Scenario::new(ScenarioConfig {
            users_per_cluster: 0,
            ..base
        })
        .is_err());
        assert!(Scenario::new(ScenarioConfig {
            offset: -1.0,
            ..base
        })
        .is_err());
        assert!(Scenario::new(ScenarioConfig {
            cluster_radius: 0.0,
            ..base
        })
        .is_err());
    }

    #[test]
    fn grid_spans_support() {
        let xs = ReportGrid::default().abscissae(10.0);
        assert_eq!(xs.len(), 512);
        assert_eq!(xs[0], 0.0);
        assert_eq!(xs[511], 10.0);
    }
}
