//! Distance from a uniformly distributed point in a disk of radius `R` to a
//! fixed point at distance `R̂` from the disk center.
//!
//! For `r ≤ R − R̂` the whole circle of radius `r` about the fixed point lies
//! inside the disk and the CDF is `r²/R²`. For `|R − R̂| < r ≤ R + R̂` it is the
//! normalized area of the lens between the two circles. Outside those ranges
//! the law is completed with 0 below `R̂ − R` and 1 above `R + R̂`.

use core::f64::consts::PI;

use libm::{acos, sin};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskDistanceDistribution {
    radius: f64,
    offset: f64,
}

impl DiskDistanceDistribution {
    pub fn new(radius: f64, offset: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid("disk radius", "must be finite and > 0"));
        }
        if !(offset.is_finite() && offset >= 0.0) {
            return Err(Error::invalid(
                "fixed point offset",
                "must be finite and >= 0",
            ));
        }
        Ok(DiskDistanceDistribution { radius, offset })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `(max(0, R̂ − R), R + R̂)`.
    pub fn support(&self) -> (f64, f64) {
        (
            (self.offset - self.radius).max(0.0),
            self.radius + self.offset,
        )
    }

    fn inner_branch(&self, r: f64) -> bool {
        // R̂ = 0 never reaches the lens branch, which divides by R̂.
        self.offset == 0.0 || r <= self.radius - self.offset
    }

    fn lens_angles(&self, r: f64) -> (f64, f64) {
        let (big_r, rh) = (self.radius, self.offset);
        let theta = acos(((r * r + rh * rh - big_r * big_r) / (2.0 * rh * r)).clamp(-1.0, 1.0));
        let phi = acos(((big_r * big_r + rh * rh - r * r) / (2.0 * rh * big_r)).clamp(-1.0, 1.0));
        (theta, phi)
    }

    pub fn cdf(&self, r: f64) -> f64 {
        let (lo, hi) = self.support();
        if r <= lo {
            return 0.0;
        }
        if r > hi {
            return 1.0;
        }
        let r2 = self.radius * self.radius;
        if self.inner_branch(r) {
            return (r * r / r2).min(1.0);
        }
        let (theta, phi) = self.lens_angles(r);
        let v = r * r / (PI * r2) * (theta - 0.5 * sin(2.0 * theta))
            + (phi - 0.5 * sin(2.0 * phi)) / PI;
        v.clamp(0.0, 1.0)
    }

    pub fn pdf(&self, r: f64) -> f64 {
        let (lo, hi) = self.support();
        if r < lo || r > hi || r < 0.0 {
            return 0.0;
        }
        let r2 = self.radius * self.radius;
        if self.inner_branch(r) {
            return 2.0 * r / r2;
        }
        let (theta, _) = self.lens_angles(r);
        2.0 * r * theta / (PI * r2)
    }
}
