//! Distribution of the Doppler shift magnitude at a random user in a cluster.
//!
//! Users are uniform in a disk of radius `ρ` whose center lies at ground
//! distance `R̂_t` from the sub-satellite point. A user at ground distance `z`
//! from the sub-satellite point is assigned the ground-track envelope Doppler
//! at its flat-earth elevation, `A z / sqrt(h² + z²)`. That map is increasing
//! in `z`, so the magnitude CDF is the disk distance CDF evaluated at
//! `z(x) = h x / sqrt(A² − x²)`.
//!
//! The law depends only on the geometry, not on how many users share the
//! cluster; order statistics over `N` users live in [`OrderStatistics`].

use libm::{pow, sqrt};

use crate::disk::DiskDistanceDistribution;
use crate::geometry::SatelliteConfig;
use crate::numeric::bisect_first_true;
use crate::{Error, Result};

/// Absolute tolerance of [`DopplerMagnitudeDistribution::quantile`], Hz.
pub const QUANTILE_TOLERANCE_HZ: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerMagnitudeDistribution {
    scale: f64,
    altitude: f64,
    disk: DiskDistanceDistribution,
}

impl DopplerMagnitudeDistribution {
    /// `scale` is `A` in Hz, `offset` the ground distance `R̂_t` from the
    /// sub-satellite point to the cluster center.
    pub fn new(scale: f64, altitude: f64, cluster_radius: f64, offset: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::invalid("Doppler scale", "must be finite and > 0"));
        }
        if !(altitude.is_finite() && altitude > 0.0) {
            return Err(Error::invalid("altitude", "must be finite and > 0"));
        }
        if !(cluster_radius.is_finite() && cluster_radius > 0.0) {
            return Err(Error::invalid("cluster radius", "must be finite and > 0"));
        }
        if !(offset.is_finite() && offset >= 0.0) {
            return Err(Error::invalid(
                "sub-satellite offset",
                "must be finite and >= 0",
            ));
        }
        Ok(DopplerMagnitudeDistribution {
            scale,
            altitude,
            disk: DiskDistanceDistribution::new(cluster_radius, offset)?,
        })
    }

    pub fn from_config(cfg: &SatelliteConfig, cluster_radius: f64, offset: f64) -> Result<Self> {
        Self::new(cfg.doppler_scale(), cfg.altitude(), cluster_radius, offset)
    }

    /// Builds the distribution from the slant range to the cluster center,
    /// `R̂_t = sqrt(s_t² − h²)`.
    pub fn from_slant_range(
        cfg: &SatelliteConfig,
        cluster_radius: f64,
        slant_range: f64,
    ) -> Result<Self> {
        let h = cfg.altitude();
        if !(slant_range >= h) {
            return Err(Error::invalid("slant range", "must be >= altitude"));
        }
        let offset = sqrt(slant_range * slant_range - h * h);
        Self::from_config(cfg, cluster_radius, offset)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn altitude(&self) -> f64 {
        self.altitude
    }

    pub fn cluster_radius(&self) -> f64 {
        self.disk.radius()
    }

    pub fn offset(&self) -> f64 {
        self.disk.offset()
    }

    /// Envelope Doppler magnitude of a user at ground distance `z` from the
    /// sub-satellite point.
    pub fn magnitude_at_distance(&self, z: f64) -> f64 {
        self.scale * z / sqrt(self.altitude * self.altitude + z * z)
    }

    /// Inverse of [`Self::magnitude_at_distance`], valid for `0 ≤ x < A`.
    pub fn distance_at_magnitude(&self, x: f64) -> f64 {
        self.altitude * x / sqrt(self.scale * self.scale - x * x)
    }

    /// Left edge of the support: zero when the sub-satellite point lies in
    /// the cluster.
    pub fn support_min(&self) -> f64 {
        let (lo, _) = self.disk.support();
        self.magnitude_at_distance(lo)
    }

    /// `A (R̂_t + ρ) / sqrt(h² + (R̂_t + ρ)²)`.
    pub fn support_max(&self) -> f64 {
        let (_, hi) = self.disk.support();
        self.magnitude_at_distance(hi)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain("Doppler magnitude", x));
        }
        if x >= self.support_max() {
            return Ok(1.0);
        }
        Ok(self.disk.cdf(self.distance_at_magnitude(x)))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain("Doppler magnitude", x));
        }
        if x > self.support_max() {
            return Ok(0.0);
        }
        let a2 = self.scale * self.scale;
        let gap = a2 - x * x;
        let jacobian = self.altitude * a2 / (gap * sqrt(gap));
        Ok(jacobian * self.disk.pdf(self.distance_at_magnitude(x)))
    }

    /// Smallest `x` with `cdf(x) ≥ p`, by bisection to
    /// [`QUANTILE_TOLERANCE_HZ`].
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("probability", p));
        }
        let lo = self.support_min();
        let hi = self.support_max();
        if p == 0.0 {
            return Ok(lo);
        }
        if p == 1.0 {
            return Ok(hi);
        }
        Ok(bisect_first_true(lo, hi, QUANTILE_TOLERANCE_HZ, |x| {
            self.cdf(x).map_or(true, |f| f >= p)
        }))
    }

    fn check_overhead(&self) -> Result<()> {
        if self.offset() != 0.0 {
            return Err(Error::invalid(
                "sub-satellite offset",
                "overhead form requires the satellite above the cluster center",
            ));
        }
        Ok(())
    }

    /// Closed-form CDF when the satellite is above the cluster center:
    /// `(h²/ρ²) x² / (A² − x²)`.
    pub fn overhead_cdf(&self, x: f64) -> Result<f64> {
        self.check_overhead()?;
        if !(x >= 0.0) {
            return Err(Error::domain("Doppler magnitude", x));
        }
        if x >= self.support_max() {
            return Ok(1.0);
        }
        let (h, rho, a) = (self.altitude, self.cluster_radius(), self.scale);
        Ok(h * h / (rho * rho) * x * x / (a * a - x * x))
    }

    /// `(2 A² h² / ρ²) x / (A² − x²)²`.
    pub fn overhead_pdf(&self, x: f64) -> Result<f64> {
        self.check_overhead()?;
        if !(x >= 0.0) {
            return Err(Error::domain("Doppler magnitude", x));
        }
        if x > self.support_max() {
            return Ok(0.0);
        }
        let (h, rho, a) = (self.altitude, self.cluster_radius(), self.scale);
        let gap = a * a - x * x;
        Ok(2.0 * a * a * h * h / (rho * rho) * x / (gap * gap))
    }
}

/// Which statistic of the `N` in-cluster magnitudes to describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Single,
    Min,
    Max,
}

/// Minimum and maximum Doppler magnitude among `N` i.i.d. users.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderStatistics {
    users: u32,
}

impl OrderStatistics {
    pub fn new(users: u32) -> Result<Self> {
        if users == 0 {
            return Err(Error::invalid("users per cluster", "must be >= 1"));
        }
        Ok(OrderStatistics { users })
    }

    pub fn users(&self) -> u32 {
        self.users
    }

    fn n(&self) -> f64 {
        f64::from(self.users)
    }

    // N = 1 returns the single-user law unchanged, bit for bit.
    pub fn min_cdf(&self, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        if self.users == 1 {
            return d.cdf(x);
        }
        Ok(1.0 - pow(1.0 - d.cdf(x)?, self.n()))
    }

    pub fn min_pdf(&self, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        if self.users == 1 {
            return d.pdf(x);
        }
        let f = d.cdf(x)?;
        Ok(self.n() * pow(1.0 - f, self.n() - 1.0) * d.pdf(x)?)
    }

    pub fn max_cdf(&self, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        if self.users == 1 {
            return d.cdf(x);
        }
        Ok(pow(d.cdf(x)?, self.n()))
    }

    pub fn max_pdf(&self, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        if self.users == 1 {
            return d.pdf(x);
        }
        let f = d.cdf(x)?;
        Ok(self.n() * pow(f, self.n() - 1.0) * d.pdf(x)?)
    }

    pub fn cdf(&self, which: Extreme, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        match which {
            Extreme::Single => d.cdf(x),
            Extreme::Min => self.min_cdf(d, x),
            Extreme::Max => self.max_cdf(d, x),
        }
    }

    pub fn pdf(&self, which: Extreme, d: &DopplerMagnitudeDistribution, x: f64) -> Result<f64> {
        match which {
            Extreme::Single => d.pdf(x),
            Extreme::Min => self.min_pdf(d, x),
            Extreme::Max => self.max_pdf(d, x),
        }
    }
}
