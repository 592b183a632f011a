//! The `plab` command line.
//!
//! Exit status: 0 when every requested check comes out as predicted, 1 when
//! some relation is unexpectedly violated, 2 for usage and configuration errors.

pub mod commands;
pub mod config;
pub mod output;

use std::io::Write;

use clap::{Parser, Subcommand};

pub use commands::Outcome;
pub use config::{Command, Format, RunConfig};
use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "plab", version, about = "Exact checks and spectral simulations for Poincaré-group particle theories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// List catalogued representations and their discrete-symmetry data
    Catalog(RunConfig),
    /// Run the Lie, Casimir, discrete and position suites
    Verify(RunConfig),
    /// Search the octet for Jordan-Mukunda-consistent positions
    PositionScan(RunConfig),
    /// Commutant dimensions and the time-operator obstruction
    Commutant(RunConfig),
    /// Spectral time evolution of a spin-0 theory
    Evolve(RunConfig),
    /// Everything above in one document
    Report(RunConfig),
}

impl Sub {
    fn split(self) -> (Command, RunConfig) {
        match self {
            Sub::Catalog(c) => (Command::Catalog, c),
            Sub::Verify(c) => (Command::Verify, c),
            Sub::PositionScan(c) => (Command::PositionScan, c),
            Sub::Commutant(c) => (Command::Commutant, c),
            Sub::Evolve(c) => (Command::Evolve, c),
            Sub::Report(c) => (Command::Report, c),
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Rendered output of one run.
pub struct Rendered {
    pub ok: bool,
    pub bytes: Vec<u8>,
}

/// Merges the config file under the flags and validates the result.
pub fn resolve(cmd: Command, flags: RunConfig) -> Result<(RunConfig, Format)> {
    let cfg = match &flags.config {
        Some(path) => RunConfig::load(path)?.overlay(&flags),
        None => flags,
    };
    let format = cfg.validate(cmd)?;
    Ok((cfg, format))
}

/// Runs one subcommand and renders it in the requested format.
pub fn execute(cmd: Command, cfg: &RunConfig, format: Format) -> Result<Rendered> {
    let out = match cmd {
        Command::Catalog => commands::catalog(cfg)?,
        Command::Verify => commands::verify(cfg)?,
        Command::PositionScan => commands::position_scan(cfg)?,
        Command::Commutant => commands::commutant(cfg)?,
        Command::Evolve => commands::evolve_command(cfg, format == Format::Binary)?,
        Command::Report => commands::report(cfg)?,
    };
    let bytes = match format {
        Format::Json => {
            let doc = output::envelope(cmd.name(), out.ok, out.result, &out.adjudications);
            let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Markdown => {
            let mut s = out.markdown;
            if cmd != Command::Report {
                s.push('\n');
                s.push_str(&output::adjudications_markdown(&out.adjudications));
            }
            s.into_bytes()
        }
        Format::Csv => out.csv.ok_or_else(|| Error::Config(format!("`{}` has no CSV form", cmd.name())))?.into_bytes(),
        Format::Binary => out.binary.ok_or_else(|| Error::Config(format!("`{}` has no binary form", cmd.name())))?,
    };
    Ok(Rendered { ok: out.ok, bytes })
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("PLAB_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Error::Config(format!("PLAB_THREADS must be a positive integer, got `{v}`")))?;
    // A pool may already exist when embedded; the cap then stays as it was.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_) | Error::Parse { .. } | Error::BadSpin(_) | Error::IllegalCombination(_) | Error::IncompatibleAnsatz(_) | Error::Boundary(_) | Error::Grid(_)
    )
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (cmd, flags) = cli.command.split();
    let result = configure_threads().and_then(|_| resolve(cmd, flags)).and_then(|(cfg, format)| {
        let rendered = execute(cmd, &cfg, format)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, &rendered.bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                match stdout.write_all(&rendered.bytes).and_then(|_| stdout.flush()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                    _ => {}
                }
            }
        }
        Ok(rendered.ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("plab: some relations were violated unexpectedly");
            EXIT_VIOLATION
        }
        Err(e) => {
            eprintln!("plab: {e}");
            if usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_VIOLATION
            }
        }
    }
}
