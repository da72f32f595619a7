//! Orbital constants and the earth/satellite geometry shared by every other
//! module.
//!
//! Conventions: the ground track of the satellite is the planar x-axis, the
//! cluster center is the planar origin, and time is always an offset from the
//! instant of maximum elevation of the pass being considered.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use libm::{acos, asin, atan2, cos, sin, sqrt};

use crate::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Mean earth radius used by the reference parameter set, m.
pub const EARTH_RADIUS: f64 = 6_371_000.0;

/// Earth angular velocity in the inertial frame, rad/s.
pub const EARTH_ANGULAR_VELOCITY: f64 = 7.27e-5;

/// Slack allowed on inverse-trig arguments before a value is treated as a
/// domain error instead of rounding noise.
pub const ACOS_TOLERANCE: f64 = 1e-12;

/// `acos` that absorbs floating-point overshoot up to [`ACOS_TOLERANCE`] and
/// rejects anything further out.
pub fn checked_acos(x: f64, what: &'static str) -> Result<f64> {
    if !(-1.0 - ACOS_TOLERANCE..=1.0 + ACOS_TOLERANCE).contains(&x) {
        return Err(Error::domain(what, x));
    }
    Ok(acos(x.clamp(-1.0, 1.0)))
}

/// Physical and orbital constants of one satellite and its carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteConfig {
    carrier_hz: f64,
    altitude: f64,
    omega_s: f64,
    omega_e: f64,
    inclination: f64,
    earth_radius: f64,
    speed_of_light: f64,
}

impl SatelliteConfig {
    /// Validates and builds a configuration. `c` is fixed to
    /// [`SPEED_OF_LIGHT`]; see [`SatelliteConfig::with_speed_of_light`].
    pub fn new(
        carrier_hz: f64,
        altitude: f64,
        omega_s: f64,
        omega_e: f64,
        inclination: f64,
        earth_radius: f64,
    ) -> Result<Self> {
        let cfg = SatelliteConfig {
            carrier_hz,
            altitude,
            omega_s,
            omega_e,
            inclination,
            earth_radius,
            speed_of_light: SPEED_OF_LIGHT,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_speed_of_light(mut self, c: f64) -> Result<Self> {
        self.speed_of_light = c;
        self.validate()?;
        Ok(self)
    }

    /// 2 GHz carrier, 600 km altitude, equatorial orbit.
    pub fn leo_600() -> Self {
        Self::new(
            2e9,
            600e3,
            1.1e-3,
            EARTH_ANGULAR_VELOCITY,
            0.0,
            EARTH_RADIUS,
        )
        .expect("reference parameters are valid")
    }

    /// 2 GHz carrier, 1200 km altitude, equatorial orbit.
    pub fn leo_1200() -> Self {
        Self::new(
            2e9,
            1200e3,
            9.5809e-4,
            EARTH_ANGULAR_VELOCITY,
            0.0,
            EARTH_RADIUS,
        )
        .expect("reference parameters are valid")
    }

    fn validate(&self) -> Result<()> {
        fn positive(v: f64, name: &'static str) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be finite and > 0"))
            }
        }
        positive(self.carrier_hz, "carrier frequency")?;
        positive(self.altitude, "altitude")?;
        positive(self.omega_s, "satellite angular velocity")?;
        positive(self.earth_radius, "earth radius")?;
        positive(self.speed_of_light, "speed of light")?;
        if !(self.omega_e.is_finite() && self.omega_e >= 0.0) {
            return Err(Error::invalid(
                "earth angular velocity",
                "must be finite and >= 0",
            ));
        }
        if !(0.0..=PI).contains(&self.inclination) {
            return Err(Error::invalid("inclination", "must lie in [0, pi]"));
        }
        Ok(())
    }

    pub fn carrier_hz(&self) -> f64 {
        self.carrier_hz
    }

    pub fn altitude(&self) -> f64 {
        self.altitude
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn omega_e(&self) -> f64 {
        self.omega_e
    }

    pub fn inclination(&self) -> f64 {
        self.inclination
    }

    pub fn earth_radius(&self) -> f64 {
        self.earth_radius
    }

    pub fn speed_of_light(&self) -> f64 {
        self.speed_of_light
    }

    /// `r_E + h`.
    pub fn orbital_radius(&self) -> f64 {
        self.earth_radius + self.altitude
    }

    /// Satellite angular rate seen from the earth-fixed frame,
    /// `ω_s + ω_E cos θ_i`.
    pub fn ecf_angular_velocity(&self) -> f64 {
        self.omega_s + self.omega_e * cos(self.inclination)
    }

    /// Doppler scale `A = f_c r_o ω_F / c`, the supremum of the in-cluster
    /// Doppler magnitude.
    pub fn doppler_scale(&self) -> f64 {
        self.carrier_hz * self.orbital_radius() * self.ecf_angular_velocity() / self.speed_of_light
    }

    /// Ground-track Doppler magnitude at zero elevation, `f_c r_E ω_F / c`.
    pub fn horizon_doppler(&self) -> f64 {
        self.carrier_hz * self.earth_radius * self.ecf_angular_velocity() / self.speed_of_light
    }

    /// `r_E / r_o`, the cosine of the central angle at which the satellite
    /// sets.
    pub fn horizon_cosine(&self) -> f64 {
        self.earth_radius / self.orbital_radius()
    }
}

/// Point on the tangent plane at the cluster center, metres.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    pub fn norm(&self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn distance(&self, other: &PlanarPoint) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Slant range at offset `dt` from maximum elevation for a pass with cosine
/// of minimum central angle `theta`.
pub fn slant_range(cfg: &SatelliteConfig, dt: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let re = cfg.earth_radius;
    let ro = cfg.orbital_radius();
    let phase = dt * cfg.ecf_angular_velocity();
    let sq = re * re + ro * ro - 2.0 * ro * re * cos(phase) * theta;
    Ok(sqrt(sq.max(0.0)))
}

/// Central angle between the sub-satellite point and the user,
/// `arccos(cos(dt ω_F) Θ)`.
pub fn central_angle(cfg: &SatelliteConfig, dt: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    checked_acos(
        cos(dt * cfg.ecf_angular_velocity()) * theta,
        "central angle cosine",
    )
}

/// Law-of-cosines slant range for a central angle.
pub fn slant_range_from_central_angle(cfg: &SatelliteConfig, gamma: f64) -> f64 {
    let re = cfg.earth_radius;
    let ro = cfg.orbital_radius();
    sqrt((re * re + ro * ro - 2.0 * ro * re * cos(gamma)).max(0.0))
}

/// `cos α = r_o sin γ / s`, without any visibility check.
///
/// Values above one mean the satellite is below the horizon.
pub fn elevation_cosine(cfg: &SatelliteConfig, gamma: f64) -> f64 {
    let s = slant_range_from_central_angle(cfg, gamma);
    if s == 0.0 {
        return 0.0;
    }
    cfg.orbital_radius() * sin(gamma) / s
}

/// Elevation angle of the satellite seen from a user at central angle
/// `gamma` from the sub-satellite point.
pub fn elevation_from_central_angle(cfg: &SatelliteConfig, gamma: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&gamma) {
        return Err(Error::domain("central angle", gamma));
    }
    if cfg.orbital_radius() * cos(gamma) < cfg.earth_radius * (1.0 - ACOS_TOLERANCE) {
        return Err(Error::BelowHorizon);
    }
    Ok(checked_acos(elevation_cosine(cfg, gamma), "elevation cosine")?.min(FRAC_PI_2))
}

/// Flat-earth elevation cosine for a user at ground distance `z` from the
/// sub-satellite point: `r_o z / (r_E sqrt(h² + z²))`.
pub fn elevation_planar_approx(cfg: &SatelliteConfig, z: f64) -> f64 {
    let h = cfg.altitude;
    cfg.orbital_radius() * z / (cfg.earth_radius * sqrt(h * h + z * z))
}

/// Cross-track and along-track angles of a point relative to the ground
/// track through the cluster center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackAngles {
    /// Signed great-circle angle from the ground track, rad.
    pub cross_track: f64,
    /// Angle along the track from the cluster center to the foot of the
    /// perpendicular, rad.
    pub along_track: f64,
}

impl TrackAngles {
    /// Central angle to the cluster center, `cos γ = cos β cos ψ`.
    pub fn central_angle(&self) -> f64 {
        acos((cos(self.cross_track) * cos(self.along_track)).clamp(-1.0, 1.0))
    }
}

/// Inverse azimuthal-equidistant projection about the cluster center, with
/// the ground track as the x-axis, expressed as track angles.
pub fn plane_to_sphere(cfg: &SatelliteConfig, p: PlanarPoint) -> Result<TrackAngles> {
    let u = UnitVector::from_plane(p, cfg.earth_radius)?;
    Ok(TrackAngles {
        cross_track: asin(u.0[2].clamp(-1.0, 1.0)),
        along_track: atan2(u.0[1], u.0[0]),
    })
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::domain("theta", theta))
    }
}

/// Unit vector on the earth sphere in the cluster frame: the cluster center is
/// `(1, 0, 0)`, planar `x` maps towards `(0, 1, 0)` and planar `y` towards
/// `(0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct UnitVector(pub(crate) [f64; 3]);

impl UnitVector {
    pub(crate) fn from_plane(p: PlanarPoint, earth_radius: f64) -> Result<Self> {
        let d = p.norm();
        if !(d <= FRAC_PI_4 * earth_radius) {
            return Err(Error::domain("planar distance from cluster center", d));
        }
        if d == 0.0 {
            return Ok(UnitVector([1.0, 0.0, 0.0]));
        }
        let angle = d / earth_radius;
        let (s, c) = (sin(angle), cos(angle));
        Ok(UnitVector([c, s * p.x / d, s * p.y / d]))
    }

    pub(crate) fn dot(&self, other: &UnitVector) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub(crate) fn cross(&self, other: &UnitVector) -> [f64; 3] {
        let (a, b) = (self.0, other.0);
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }
}
