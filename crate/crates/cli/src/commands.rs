use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use leo_doppler_core::distribution::{Extreme, OrderStatistics};
use leo_doppler_core::validation::{ComparisonReport, ReportGrid};

use crate::config::{RawConfig, RunConfig};
use crate::error::Result;
use crate::format::{report_csv, summary_text, value_csv};
use crate::runner::run_scenario_parallel;

/// A named text artifact produced by a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub name: String,
    pub contents: String,
}

fn tabulate<F>(cfg: &RunConfig, f: F) -> Result<String>
where
    F: Fn(f64) -> leo_doppler_core::Result<f64>,
{
    let d = cfg.distribution()?;
    let rows = cfg
        .grid()
        .abscissae(d.support_max())
        .into_iter()
        .map(|x| Ok((x, f(x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(value_csv(&rows))
}

/// CDF of the selected statistic of `n` users over `[0, x_sup]`.
pub fn cmd_cdf(cfg: &RunConfig, which: Extreme, n: u32) -> Result<String> {
    let d = cfg.distribution()?;
    let os = OrderStatistics::new(n)?;
    tabulate(cfg, |x| os.cdf(which, &d, x))
}

/// Density of the selected statistic of `n` users over `[0, x_sup]`.
pub fn cmd_pdf(cfg: &RunConfig, which: Extreme, n: u32) -> Result<String> {
    let d = cfg.distribution()?;
    let os = OrderStatistics::new(n)?;
    tabulate(cfg, |x| os.pdf(which, &d, x))
}

/// Same table as [`cmd_cdf`]; the command differs only in its CLI defaults.
pub fn cmd_order_stats(cfg: &RunConfig, which: Extreme, n: u32) -> Result<String> {
    cmd_cdf(cfg, which, n)
}

pub fn simulate(
    cfg: &RunConfig,
    grid: ReportGrid,
    threads: NonZeroUsize,
) -> Result<ComparisonReport> {
    run_scenario_parallel(&cfg.scenario(), grid, threads)
}

/// Report CSV and summary text of one Monte Carlo run.
pub fn cmd_simulate(cfg: &RunConfig, threads: NonZeroUsize) -> Result<(String, String)> {
    let report = simulate(cfg, cfg.grid(), threads)?;
    Ok((report_csv(&report), summary_text(&report)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        })
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            other => Err(format!(
                "unknown preset `{other}` (expected fig2, fig3 or fig4)"
            )),
        }
    }
}

/// One curve of a figure preset.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub config: RunConfig,
}

/// Curves of `preset`. Altitude, satellite rate, `rho` and `r_hat` come from
/// the preset; every other setting comes from `base`.
pub fn preset_curves(preset: Preset, base: &RawConfig) -> Result<Vec<Curve>> {
    // (h km, ω_s rad/s, ρ km, R̂ km)
    let params: Vec<(f64, f64, f64, f64)> = match preset {
        Preset::Fig2 => [50.0, 100.0, 150.0]
            .iter()
            .map(|&rho| (600.0, 1.1e-3, rho, 2.0 * rho))
            .collect(),
        Preset::Fig3 => [0.0, 100.0, 200.0, 300.0]
            .iter()
            .map(|&rhat| (600.0, 1.1e-3, 100.0, rhat))
            .collect(),
        Preset::Fig4 => [(600.0, 1.1e-3), (1200.0, 9.5809e-4)]
            .iter()
            .flat_map(|&(h, w)| [100.0, 200.0].map(|rho| (h, w, rho, 2.0 * rho)))
            .collect(),
    };
    params
        .into_iter()
        .map(|(h, w, rho, rhat)| {
            let raw = RawConfig {
                h_km: Some(h),
                omega_s_rad_s: Some(w),
                rho_km: Some(rho),
                r_hat_km: Some(rhat),
                ..base.clone()
            };
            Ok(Curve {
                label: format!("h{h}_rho{rho}_rhat{rhat}"),
                config: RunConfig::resolve(&raw)?,
            })
        })
        .collect()
}

/// Runs every curve of `preset` on a common grid whose right end is the
/// largest support maximum among the curves. Emits `<preset>_<label>.csv`
/// and `<preset>_<label>_summary.txt` per curve.
pub fn cmd_figure(preset: Preset, base: &RawConfig, threads: NonZeroUsize) -> Result<Vec<Output>> {
    let curves = preset_curves(preset, base)?;
    let mut upper: f64 = 0.0;
    for c in &curves {
        upper = upper.max(c.config.distribution()?.support_max());
    }
    let mut outputs = Vec::with_capacity(2 * curves.len());
    for c in &curves {
        let grid = ReportGrid {
            points: c.config.grid_points,
            upper: Some(upper),
        };
        let report = simulate(&c.config, grid, threads)?;
        outputs.push(Output {
            name: format!("{preset}_{}.csv", c.label),
            contents: report_csv(&report),
        });
        outputs.push(Output {
            name: format!("{preset}_{}_summary.txt", c.label),
            contents: summary_text(&report),
        });
    }
    Ok(outputs)
}

pub fn parse_extreme(s: &str) -> std::result::Result<Extreme, String> {
    match s {
        "single" => Ok(Extreme::Single),
        "min" => Ok(Extreme::Min),
        "max" => Ok(Extreme::Max),
        other => Err(format!(
            "unknown statistic `{other}` (expected single, min or max)"
        )),
    }
}
