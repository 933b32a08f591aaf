//! Command-line front end: configuration loading, the `verify`, `orbit` and
//! `probe` commands, and byte-stable JSON and CSV output.

pub mod args;
pub mod commands;
pub mod config;
pub mod expected;
pub mod render;

pub use args::{Cli, Command, Format};
pub use commands::{orbit_csv, probe_report, run, verify_document, CliError, VerifyDocument};
pub use config::{load_config, ConfigError, RunConfig};
pub use expected::expected_status;
