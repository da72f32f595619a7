//! `key = value` run configuration.
//!
//! One assignment per line; blank lines and `#` comments are ignored. Key
//! names carry their unit (`h_km`, `fc_ghz`, ...). A value may repeat the
//! unit after the number (`h_km = 600 km`), in which case it must match.

use std::fs;
use std::path::Path;

use leo_doppler_core::distribution::DopplerMagnitudeDistribution;
use leo_doppler_core::geometry::{SatelliteConfig, EARTH_ANGULAR_VELOCITY};
use leo_doppler_core::validation::{ReportGrid, ScenarioConfig};

use crate::error::{CliError, Result};

/// Standard gravitational parameter of the earth, m³/s².
const EARTH_MU: f64 = 3.986_004_418e14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Ghz,
    Km,
    RadPerSec,
    Rad,
    Count,
}

impl Unit {
    fn suffix(self) -> &'static str {
        match self {
            Unit::Ghz => "ghz",
            Unit::Km => "km",
            Unit::RadPerSec => "rad_s",
            Unit::Rad => "rad",
            Unit::Count => "",
        }
    }

    fn accepts(self, token: &str) -> bool {
        let t = token.to_ascii_lowercase();
        match self {
            Unit::Ghz => t == "ghz",
            Unit::Km => t == "km",
            Unit::RadPerSec => t == "rad/s" || t == "rad_s",
            Unit::Rad => t == "rad",
            Unit::Count => false,
        }
    }
}

const KEYS: &[(&str, &str, Unit)] = &[
    ("fc_ghz", "fc", Unit::Ghz),
    ("h_km", "h", Unit::Km),
    ("omega_s_rad_s", "omega_s", Unit::RadPerSec),
    ("omega_e_rad_s", "omega_e", Unit::RadPerSec),
    ("theta_i_rad", "theta_i", Unit::Rad),
    ("r_e_km", "r_e", Unit::Km),
    ("rho_km", "rho", Unit::Km),
    ("r_hat_km", "r_hat", Unit::Km),
    ("n_users", "n_users", Unit::Count),
    ("trials", "trials", Unit::Count),
    ("seed", "seed", Unit::Count),
    ("grid_points", "grid_points", Unit::Count),
];

const OTHER_SUFFIXES: &[&str] = &[
    "_ghz", "_mhz", "_khz", "_hz", "_km", "_m", "_rad_s", "_deg_s", "_rad", "_deg",
];

/// Values exactly as written in a configuration file; `None` means the key
/// was absent.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub fc_ghz: Option<f64>,
    pub h_km: Option<f64>,
    pub omega_s_rad_s: Option<f64>,
    pub omega_e_rad_s: Option<f64>,
    pub theta_i_rad: Option<f64>,
    pub r_e_km: Option<f64>,
    pub rho_km: Option<f64>,
    pub r_hat_km: Option<f64>,
    pub n_users: Option<u32>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub grid_points: Option<usize>,
}

impl RawConfig {
    pub fn parse_str(text: &str, origin: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        let mut seen: Vec<&'static str> = Vec::new();
        for (idx, full) in text.lines().enumerate() {
            let line = idx + 1;
            let content = full.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| CliError::Parse {
                path: origin.to_string(),
                line,
                message,
            };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            let value = value.trim();

            let Some(&(name, _, unit)) = KEYS.iter().find(|(k, _, _)| *k == key) else {
                return Err(unknown_key(key, origin, line));
            };
            if seen.contains(&name) {
                return Err(parse_err(format!("duplicate key `{key}`")));
            }
            seen.push(name);

            let mut tokens = value.split_whitespace();
            let number = tokens
                .next()
                .ok_or_else(|| parse_err(format!("missing value for `{key}`")))?;
            if let Some(u) = tokens.next() {
                if !unit.accepts(u) {
                    return Err(CliError::UnitMismatch {
                        path: origin.to_string(),
                        line,
                        key: key.to_string(),
                        expected: if unit == Unit::Count {
                            "none"
                        } else {
                            unit.suffix()
                        },
                        found: u.to_string(),
                    });
                }
            }
            if let Some(extra) = tokens.next() {
                return Err(parse_err(format!("unexpected trailing `{extra}`")));
            }

            let float = || {
                number
                    .parse::<f64>()
                    .map_err(|_| parse_err(format!("`{key}`: `{number}` is not a number")))
            };
            let int = || {
                number.parse::<u64>().map_err(|_| {
                    parse_err(format!("`{key}`: `{number}` is not a non-negative integer"))
                })
            };
            match name {
                "fc_ghz" => raw.fc_ghz = Some(float()?),
                "h_km" => raw.h_km = Some(float()?),
                "omega_s_rad_s" => raw.omega_s_rad_s = Some(float()?),
                "omega_e_rad_s" => raw.omega_e_rad_s = Some(float()?),
                "theta_i_rad" => raw.theta_i_rad = Some(float()?),
                "r_e_km" => raw.r_e_km = Some(float()?),
                "rho_km" => raw.rho_km = Some(float()?),
                "r_hat_km" => raw.r_hat_km = Some(float()?),
                "n_users" => {
                    raw.n_users = Some(
                        u32::try_from(int()?)
                            .map_err(|_| parse_err("`n_users` is too large".to_string()))?,
                    )
                }
                "trials" => raw.trials = Some(int()?),
                "seed" => raw.seed = Some(int()?),
                "grid_points" => raw.grid_points = Some(int()? as usize),
                _ => unreachable!("key table and match arms agree"),
            }
        }
        Ok(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_str(&text, &path.display().to_string())
    }
}

fn unknown_key(key: &str, origin: &str, line: usize) -> CliError {
    for suffix in OTHER_SUFFIXES {
        if let Some(stem) = key.strip_suffix(suffix) {
            if let Some((name, _, unit)) = KEYS.iter().find(|(_, s, _)| *s == stem) {
                return CliError::UnitMismatch {
                    path: origin.to_string(),
                    line,
                    key: (*name).to_string(),
                    expected: unit.suffix(),
                    found: suffix.trim_start_matches('_').to_string(),
                };
            }
        }
    }
    CliError::Parse {
        path: origin.to_string(),
        line,
        message: format!("unknown key `{key}`"),
    }
}

/// Satellite angular velocity used when `omega_s_rad_s` is absent: the
/// reference values at 600 and 1200 km, circular Keplerian motion otherwise.
pub fn default_omega_s(h_km: f64, r_e_km: f64) -> f64 {
    if h_km == 600.0 {
        1.1e-3
    } else if h_km == 1200.0 {
        9.5809e-4
    } else {
        let r = (r_e_km + h_km) * 1e3;
        (EARTH_MU / (r * r * r)).sqrt()
    }
}

/// Fully resolved and validated configuration, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub satellite: SatelliteConfig,
    pub cluster_radius: f64,
    pub offset: f64,
    pub users_per_cluster: u32,
    pub trials: u64,
    pub seed: u64,
    pub grid_points: usize,
}

pub const DEFAULT_RHO_KM: f64 = 100.0;
pub const DEFAULT_USERS: u32 = 8;
pub const DEFAULT_TRIALS: u64 = 12_500;
pub const DEFAULT_SEED: u64 = 1;

impl RunConfig {
    pub fn resolve(raw: &RawConfig) -> Result<Self> {
        let h_km = raw
            .h_km
            .ok_or_else(|| CliError::Validation("`h_km` is required".to_string()))?;
        Self::resolve_with_altitude(raw, h_km)
    }

    /// Resolves `raw` with the altitude (and, when `raw` leaves it out, the
    /// satellite rate) taken from `h_km`.
    pub fn resolve_with_altitude(raw: &RawConfig, h_km: f64) -> Result<Self> {
        let r_e_km = raw.r_e_km.unwrap_or(6371.0);
        let omega_s = raw
            .omega_s_rad_s
            .unwrap_or_else(|| default_omega_s(h_km, r_e_km));
        let satellite = SatelliteConfig::new(
            raw.fc_ghz.unwrap_or(2.0) * 1e9,
            h_km * 1e3,
            omega_s,
            raw.omega_e_rad_s.unwrap_or(EARTH_ANGULAR_VELOCITY),
            raw.theta_i_rad.unwrap_or(0.0),
            r_e_km * 1e3,
        )?;
        let rho_km = raw.rho_km.unwrap_or(DEFAULT_RHO_KM);
        let cfg = RunConfig {
            satellite,
            cluster_radius: rho_km * 1e3,
            offset: raw.r_hat_km.unwrap_or(2.0 * rho_km) * 1e3,
            users_per_cluster: raw.n_users.unwrap_or(DEFAULT_USERS),
            trials: raw.trials.unwrap_or(DEFAULT_TRIALS),
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            grid_points: raw.grid_points.unwrap_or(512),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(CliError::Validation("grid_points must be >= 2".to_string()));
        }
        self.distribution()?;
        self.scenario().validate()?;
        Ok(())
    }

    pub fn distribution(&self) -> Result<DopplerMagnitudeDistribution> {
        Ok(DopplerMagnitudeDistribution::from_config(
            &self.satellite,
            self.cluster_radius,
            self.offset,
        )?)
    }

    pub fn scenario(&self) -> ScenarioConfig {
        ScenarioConfig {
            satellite: self.satellite,
            cluster_radius: self.cluster_radius,
            offset: self.offset,
            users_per_cluster: self.users_per_cluster,
            trials: self.trials,
            seed: self.seed,
            center_on_track: true,
        }
    }

    pub fn grid(&self) -> ReportGrid {
        ReportGrid {
            points: self.grid_points,
            upper: None,
        }
    }
}

pub fn parse_config(path: &Path) -> Result<RunConfig> {
    RunConfig::resolve(&RawConfig::load(path)?)
}
