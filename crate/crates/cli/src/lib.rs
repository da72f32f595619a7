//! Configuration files, CSV output, a multi-threaded Monte Carlo runner and
//! the figure presets behind the `leo-doppler` command.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod runner;

pub use commands::{cmd_cdf, cmd_figure, cmd_order_stats, cmd_pdf, cmd_simulate, Output, Preset};
pub use config::{parse_config, RawConfig, RunConfig};
pub use error::{CliError, Result};
pub use runner::run_scenario_parallel;
