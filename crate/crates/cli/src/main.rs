use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use dunkl_amp::DunklError;
use thiserror::Error;

mod commands;
mod config;
mod output;

use config::{Flags, Settings};

/// Dunkl-deformed parametric amplifier: algebra checks, spectra, squeezing
/// transforms and photon statistics.
#[derive(Debug, Parser)]
#[command(name = "dunkl-amp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Algebra identity residuals on the truncation interior.
    Verify,
    /// Numerical spectrum against the closed form.
    Spectrum,
    /// Tilting transformation residuals.
    Tilt,
    /// Bogoliubov diagonal form residuals.
    Bogoliubov,
    /// Photon statistics of one squeezed number state.
    Stats,
    /// Photon statistics over a (mu, r, n) grid.
    Sweep,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Model(#[from] DunklError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(DunklError::Eigensolver { .. } | DunklError::ExpmConvergence { .. }) => 1,
            CliError::Input(_) | CliError::Model(_) | CliError::Io(_) => 2,
        }
    }
}

fn run(command: Command, settings: &Settings) -> Result<commands::Failures, CliError> {
    let out: Box<dyn Write> = match &settings.out {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let out = BufWriter::new(out);
    match command {
        Command::Verify => commands::verify(settings, out),
        Command::Spectrum => commands::spectrum(settings, out),
        Command::Tilt => commands::tilt(settings, out),
        Command::Bogoliubov => commands::bogoliubov(settings, out),
        Command::Stats => commands::stats(settings, out),
        Command::Sweep => commands::sweep(settings, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    let result = Settings::resolve(&cli.flags).and_then(|s| run(cli.command, &s));
    match result {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in &failures {
                eprintln!("tolerance failure: {f}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
