use std::fs;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use leo_doppler::commands::{self, parse_extreme, Preset};
use leo_doppler::config::{parse_config, RawConfig};
use leo_doppler::{CliError, Output, Result};
use leo_doppler_core::distribution::Extreme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Cdf,
    Pdf,
    OrderStats,
    Simulate,
    Figure,
}

/// Doppler shift magnitude statistics for clustered users under a LEO
/// satellite.
#[derive(Debug, Parser)]
#[command(name = "leo-doppler", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Configuration file (`key = value` lines)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for output files; standard output when absent
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Figure preset for `figure`
    #[arg(long, value_parser = |s: &str| s.parse::<Preset>())]
    preset: Option<Preset>,

    /// Statistic over the users of a cluster
    #[arg(long, value_parser = parse_extreme)]
    which: Option<Extreme>,

    /// Users per cluster for `min`/`max`; defaults to `n_users`
    #[arg(long)]
    n: Option<u32>,

    /// Simulation worker threads
    #[arg(long, default_value = "1")]
    threads: NonZeroUsize,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

fn emit(out: Option<&Path>, outputs: &[Output]) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            outputs
                .iter()
                .try_for_each(|o| write_file(dir, &o.name, &o.contents))
        }
        None => {
            let mut stdout = io::stdout().lock();
            outputs
                .iter()
                .try_for_each(|o| stdout.write_all(o.contents.as_bytes()))
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn require_config(args: &Args) -> Result<&Path> {
    args.config
        .as_deref()
        .ok_or_else(|| CliError::Validation(format!("`{:?}` needs --config", args.command)))
}

fn run(args: &Args) -> Result<()> {
    let out = args.out.as_deref();
    match args.command {
        Command::Cdf | Command::Pdf | Command::OrderStats => {
            let cfg = parse_config(require_config(args)?)?;
            let default_which = match args.command {
                Command::OrderStats => Extreme::Max,
                _ => Extreme::Single,
            };
            let which = args.which.unwrap_or(default_which);
            let n = args.n.unwrap_or(cfg.users_per_cluster);
            let (name, contents) = match args.command {
                Command::Cdf => ("cdf.csv".to_string(), commands::cmd_cdf(&cfg, which, n)?),
                Command::Pdf => ("pdf.csv".to_string(), commands::cmd_pdf(&cfg, which, n)?),
                _ => {
                    let tag = match which {
                        Extreme::Single => "single",
                        Extreme::Min => "min",
                        Extreme::Max => "max",
                    };
                    (
                        format!("order_stats_{tag}_n{n}.csv"),
                        commands::cmd_order_stats(&cfg, which, n)?,
                    )
                }
            };
            emit(out, &[Output { name, contents }])
        }
        Command::Simulate => {
            let mut cfg = parse_config(require_config(args)?)?;
            if let Some(n) = args.n {
                cfg.users_per_cluster = n;
                cfg.validate()?;
            }
            let (csv, summary) = commands::cmd_simulate(&cfg, args.threads)?;
            match out {
                Some(_) => emit(
                    out,
                    &[
                        Output {
                            name: "report.csv".into(),
                            contents: csv,
                        },
                        Output {
                            name: "summary.txt".into(),
                            contents: summary,
                        },
                    ],
                ),
                None => {
                    eprint!("{summary}");
                    emit(
                        None,
                        &[Output {
                            name: String::new(),
                            contents: csv,
                        }],
                    )
                }
            }
        }
        Command::Figure => {
            let preset = args
                .preset
                .ok_or_else(|| CliError::Validation("`figure` needs --preset".to_string()))?;
            let base = match &args.config {
                Some(p) => RawConfig::load(p)?,
                None => RawConfig::default(),
            };
            let outputs = commands::cmd_figure(preset, &base, args.threads)?;
            emit(Some(out.unwrap_or(Path::new("."))), &outputs)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("leo-doppler: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
