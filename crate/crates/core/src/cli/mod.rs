//! The `biphoton` command line: subcommands `spectrum`, `wavepacket`, `map`,
//! `ratios`, `fit` and `validate`, each driven by a TOML config file.
//!
//! Exit codes: 0 success, 2 configuration or input validation, 3 numerical
//! failure, 4 I/O.

mod commands;
pub mod config;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{read_columns, InputProvenance};
pub use config::RunConfig;

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "biphoton", version, about = "Biphoton spectra and wave packets from a Doppler-broadened vapor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML configuration file.
    pub config: PathBuf,
    /// Output file stem, overriding `[output] path`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// EIT, FWM or overall spectrum, optionally next to its analytic form.
    Spectrum(RunArgs),
    /// Biphoton wave packet G²(τ) with its exponential fit.
    Wavepacket(RunArgs),
    /// Numeric-versus-analytic FWHM difference map over (Ω_c², γ).
    Map(RunArgs),
    /// Γ_EIT/Γ_BI and Γ_FWM/Γ_BI curves, one file per (α_s, γ).
    Ratios(RunArgs),
    /// Fit measured wave packets or EIT spectra given as CSV files.
    Fit {
        #[command(flatten)]
        run: RunArgs,
        /// Input CSV files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Print the validity metrics of the configured parameters.
    Validate {
        config: PathBuf,
    },
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config { .. } | Error::Schema { .. } | Error::InvalidParameter { .. } | Error::NonPowerOfTwo { .. } => 2,
        Error::Io { .. } => 4,
        _ => 3,
    }
}

fn load(args: &RunArgs) -> Result<(RunConfig, PathBuf)> {
    let config = RunConfig::load(&args.config)?;
    let stem = args.output.clone().unwrap_or_else(|| config.output.path.clone());
    Ok((config, stem))
}

/// Runs one command, writing the list of produced files (or the validation
/// report) to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let written = match &cli.command {
        Command::Spectrum(a) => {
            let (c, stem) = load(a)?;
            commands::spectrum(&c, &stem)?
        }
        Command::Wavepacket(a) => {
            let (c, stem) = load(a)?;
            commands::wavepacket(&c, &stem)?
        }
        Command::Map(a) => {
            let (c, stem) = load(a)?;
            commands::map(&c, &stem)?
        }
        Command::Ratios(a) => {
            let (c, stem) = load(a)?;
            commands::ratios(&c, &stem)?
        }
        Command::Fit { run, inputs } => {
            let (c, stem) = load(run)?;
            commands::fit(&c, &stem, inputs)?
        }
        Command::Validate { config } => {
            return commands::validate(&RunConfig::load(config)?, out);
        }
    };
    for path in written {
        writeln!(out, "{}", path.display()).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(exit_code(&Error::invalid("gamma", "bad")), 2);
        assert_eq!(exit_code(&Error::Fit("x".into())), 3);
        let io = Error::Io {
            path: "x".into(),
            source: std::io::Error::other("x"),
        };
        assert_eq!(exit_code(&io), 4);
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["biphoton", "fit", "c.toml", "a.csv", "b.csv"]).unwrap();
        assert!(matches!(cli.command, Command::Fit { ref inputs, .. } if inputs.len() == 2));
        assert!(Cli::try_parse_from(["biphoton", "fit", "c.toml"]).is_err());
    }
}
