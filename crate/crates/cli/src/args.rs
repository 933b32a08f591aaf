use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaugeflow_core::Family;

#[derive(Debug, Parser)]
#[command(
    name = "gaugeflow",
    version,
    about = "Verify the dynamics of the switching-cycle gauge space"
)]
pub struct Cli {
    /// TOML run configuration (defaults apply when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Overrides `sampling.seed`.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every checker and compare with the expected outcomes.
    Verify,
    /// Export a trajectory as CSV `t,x,y`.
    Orbit(OrbitArgs),
    /// Run one checker with explicit parameters.
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub dt: f64,
}

#[derive(Debug, Subcommand)]
pub enum Probe {
    /// Construct a transitivity witness for two subbasic balls.
    Transitivity {
        /// First ball as `FAMILY,PHASE,T,RADIUS`.
        #[arg(long, allow_hyphen_values = true)]
        y1: BallArg,
        /// Second ball as `FAMILY,PHASE,T,RADIUS`.
        #[arg(long, allow_hyphen_values = true)]
        y2: BallArg,
    },
    /// Best simultaneous approach of `X` to an `X0` solution under several gauges.
    Density {
        /// Phase of the `X0` solution.
        #[arg(long, default_value_t = 0.0)]
        phase: f64,
        /// Comma-separated gauge times.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        gauges: Vec<f64>,
        /// Phase grid size for the `X` search (defaults to `sampling.phase_grid`).
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Look for a sensitivity escape near the far turning point of `X`.
    Sensitivity {
        /// Radius of the `d_0` bound of the tested entourage.
        #[arg(long, default_value_t = 0.1)]
        eps_min: f64,
        /// Extra gauge times added to the entourage with the same radius.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        extra_gauges: Vec<f64>,
        /// Offset used for the expansion constant.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
    },
    /// Look for a non-equicontinuity witness in one neighbourhood.
    Equicontinuity {
        #[arg(long, value_parser = parse_family, default_value = "X0")]
        family: Family,
        #[arg(long, default_value_t = 0.0)]
        phase: f64,
        /// Gauge time of the neighbourhood.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, default_value_t = 1e-3)]
        radius: f64,
        #[arg(long, default_value_t = 0.05)]
        eps0: f64,
    },
}

/// A subbasic ball given on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallArg {
    pub family: Family,
    pub phase: f64,
    pub t: f64,
    pub radius: f64,
}

impl FromStr for BallArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [family, phase, t, radius] = parts[..] else {
            return Err(format!("expected FAMILY,PHASE,T,RADIUS, got `{s}`"));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        Ok(BallArg {
            family: parse_family(family)?,
            phase: num(phase)?,
            t: num(t)?,
            radius: num(radius)?,
        })
    }
}

pub fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "X" | "x" => Ok(Family::X),
        "X0" | "x0" => Ok(Family::X0),
        other => Err(format!("unknown family `{other}` (expected X or X0)")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ball_parsing() {
        let b: BallArg = "X0, 0.1, -2, 0.01".parse().unwrap();
        assert_eq!(b.family, Family::X0);
        assert_eq!(b.t, -2.0);
        assert!("X,0,0".parse::<BallArg>().is_err());
        assert!("Y,0,0,1".parse::<BallArg>().is_err());
    }
}
