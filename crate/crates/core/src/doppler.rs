//! Instantaneous Doppler shift of a pass over a stationary user.
//!
//! A pass is summarised by `Θ`, the cosine of the smallest central angle
//! between the user and the sub-satellite point. `Θ = 1` is a user on the
//! ground track; for it the exact Doppler coincides with the envelope
//! [`doppler_bound`], which dominates every other pass at equal elevation.

use core::f64::consts::{FRAC_PI_2, PI};

use libm::{acos, atan2, cos, sin, sqrt};

use crate::geometry::{self, checked_acos, SatelliteConfig};
use crate::{Error, Result};

/// `Θ[α_max] = cos(arccos((r_E/r_o) cos α_max) − α_max)`.
pub fn theta_of_alpha_max(cfg: &SatelliteConfig, alpha_max: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&alpha_max) {
        return Err(Error::domain("maximum elevation", alpha_max));
    }
    let inner = checked_acos(cfg.horizon_cosine() * cos(alpha_max), "theta argument")?;
    Ok(cos(inner - alpha_max))
}

/// Geometry of one pass as seen by one user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassGeometry {
    alpha_max: f64,
    t_alpha_max: f64,
    theta: f64,
}

impl PassGeometry {
    pub fn from_alpha_max(cfg: &SatelliteConfig, alpha_max: f64, t_alpha_max: f64) -> Result<Self> {
        let theta = theta_of_alpha_max(cfg, alpha_max)?;
        Ok(PassGeometry {
            alpha_max,
            t_alpha_max,
            theta,
        })
    }

    /// Pass of a user whose great-circle distance to the ground track is
    /// `cross_track` radians.
    pub fn from_cross_track(cfg: &SatelliteConfig, cross_track: f64) -> Result<Self> {
        let alpha_max = geometry::elevation_from_central_angle(cfg, cross_track.abs())?;
        Self::from_alpha_max(cfg, alpha_max, 0.0)
    }

    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    pub fn t_alpha_max(&self) -> f64 {
        self.t_alpha_max
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Rate of change of the central angle, rad/s.
///
/// On the ground track (`Θ = 1`) this is the limit `±ω_F`, and zero at the
/// instant of closest approach.
pub fn gamma_dot(cfg: &SatelliteConfig, dt: f64, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain("theta", theta));
    }
    let wf = cfg.ecf_angular_velocity();
    let phase = dt * wf;
    let s = sin(phase);
    if theta == 1.0 {
        return Ok(if s > 0.0 {
            wf
        } else if s < 0.0 {
            -wf
        } else {
            0.0
        });
    }
    Ok(wf * theta * s / sin_central_angle(theta, phase))
}

/// `sin γ = sqrt(1 − Θ² cos² φ)`, arranged to stay accurate near `Θ = 1`.
fn sin_central_angle(theta: f64, phase: f64) -> f64 {
    let s = sin(phase);
    sqrt((1.0 - theta) * (1.0 + theta) + theta * theta * s * s)
}

/// Signed Doppler shift at offset `dt` from maximum elevation, Hz.
///
/// Computed as `-(f_c/c) r_E r_o ω_F sin(dt ω_F) Θ / s_t`, i.e. the carrier
/// scaled rate of change of the slant range.
pub fn doppler_exact(cfg: &SatelliteConfig, dt: f64, pass: &PassGeometry) -> f64 {
    let wf = cfg.ecf_angular_velocity();
    let theta = pass.theta;
    let s = geometry::slant_range(cfg, dt, theta).expect("pass theta lies in [0, 1]");
    -(cfg.carrier_hz() / cfg.speed_of_light())
        * cfg.earth_radius()
        * cfg.orbital_radius()
        * wf
        * sin(dt * wf)
        * theta
        / s
}

/// The same Doppler shift evaluated through `-(f_c r_E / c) γ̇ cos α`.
pub fn doppler_exact_from_rate(cfg: &SatelliteConfig, dt: f64, pass: &PassGeometry) -> f64 {
    let rate = gamma_dot(cfg, dt, pass.theta).expect("pass theta lies in [0, 1]");
    let phase = dt * cfg.ecf_angular_velocity();
    let gamma = atan2(
        sin_central_angle(pass.theta, phase),
        cos(phase) * pass.theta,
    );
    let cos_alpha = geometry::elevation_cosine(cfg, gamma);
    -(cfg.carrier_hz() * cfg.earth_radius() / cfg.speed_of_light()) * rate * cos_alpha
}

/// Ground-track Doppler magnitude at instantaneous elevation `alpha_t`,
/// `(f_c r_E ω_F / c) cos α_t`.
pub fn doppler_bound(cfg: &SatelliteConfig, alpha_t: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&alpha_t) {
        return Err(Error::domain("elevation", alpha_t));
    }
    Ok(cfg.horizon_doppler() * cos(alpha_t))
}

/// Where the ground-track envelope is within a relative error ε of the exact
/// Doppler of a pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonWindow {
    /// The envelope is ε-accurate for `inner ≤ |dt| ≤ outer` (seconds from
    /// maximum elevation, within one orbital half period).
    Window { inner: f64, outer: f64 },
    /// The normalized error never reaches ε: either `Θ < 1 − ε`, so the
    /// envelope is never ε-accurate, or `Θ = 1`, where it is exact.
    NoCrossing,
}

impl EpsilonWindow {
    /// `(-inner, +inner)`: the offsets at which accuracy is first reached on
    /// either side of maximum elevation.
    pub fn symmetric_offsets(&self) -> Option<(f64, f64)> {
        match *self {
            EpsilonWindow::Window { inner, .. } => Some((-inner, inner)),
            EpsilonWindow::NoCrossing => None,
        }
    }
}

/// Offsets from maximum elevation at which the normalized gap
/// `1 − |χ_exact| / χ_bound` equals `epsilon`.
pub fn epsilon_accuracy_offsets(
    cfg: &SatelliteConfig,
    epsilon: f64,
    theta: f64,
) -> Result<EpsilonWindow> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::domain("epsilon", epsilon));
    }
    if !(theta >= cfg.horizon_cosine() * (1.0 - geometry::ACOS_TOLERANCE) && theta <= 1.0) {
        return Err(Error::domain("theta", theta));
    }
    let keep = 1.0 - epsilon;
    if theta == 1.0 || keep > theta {
        return Ok(EpsilonWindow::NoCrossing);
    }
    let radicand = (1.0 - keep * keep / (theta * theta)) / (1.0 - keep * keep);
    let root = sqrt(radicand.clamp(0.0, 1.0));
    let wf = cfg.ecf_angular_velocity();
    let inner = acos(root) / wf;
    Ok(EpsilonWindow::Window {
        inner,
        outer: (PI - acos(root)) / wf,
    })
}
