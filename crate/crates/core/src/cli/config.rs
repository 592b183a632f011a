//! Run configuration: command-line flags merged over an optional JSON file.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Csv,
    Binary,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Markdown => "markdown",
            Format::Csv => "csv",
            Format::Binary => "binary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Catalog,
    Verify,
    PositionScan,
    Commutant,
    Evolve,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Verify => "verify",
            Command::PositionScan => "position-scan",
            Command::Commutant => "commutant",
            Command::Evolve => "evolve",
            Command::Report => "report",
        }
    }

    fn formats(self) -> &'static [Format] {
        match self {
            Command::Catalog | Command::Verify | Command::Commutant => &[Format::Json, Format::Markdown, Format::Csv],
            Command::PositionScan | Command::Report => &[Format::Json, Format::Markdown],
            Command::Evolve => &[Format::Json, Format::Markdown, Format::Csv, Format::Binary],
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Evolve => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// Every option accepted by some subcommand. Each field doubles as a key of the
/// JSON config file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Subcommand; only meaningful in a config file.
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,

    /// JSON file with defaults for any of these options
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,

    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,

    /// Spin, e.g. 0, 1/2 or 0.5; omitted means both 0 and 1/2 where that makes sense
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin: Option<String>,

    /// Representation label (Uu, Ud, U1..U6, D-id, D-rho1, D-rho3, D-irho2, Q-plus, Q-minus) or `all`
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rep: Vec<String>,

    /// lie, casimir, discrete, position or all
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,

    /// Position ansatz for the position suite
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ansatz: Option<String>,

    /// Ansatz coefficient `a` (spin-shifted) or `A` (two-block families), scalar syntax
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,

    /// Rational `sin B` of the two-block families
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sin_b: Option<String>,

    /// Rational `cos B` of the two-block families
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos_b: Option<String>,

    /// Drop `T` from the commutant constraints
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub without_t: bool,

    /// Drop `S` from the commutant constraints
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub without_s: bool,

    /// Also test for a time operator
    #[arg(long)]
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub time_operator: bool,

    /// T1, T2, T3 or T4
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<String>,

    /// Points per axis (power of two)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,

    /// Number of space dimensions, 1 to 3
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<usize>,

    /// Box half-width L
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,

    /// Numeric mass for simulations
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,

    /// Record observables every this many steps
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,

    /// Gaussian width (standard deviation of |ψ|²)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,

    /// Gaussian centre, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub center: Vec<f64>,

    /// Carrier wave vector, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub k0: Vec<f64>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, [$($opt:ident),*], [$($vec:ident),*], [$($flag:ident),*]) => {{
        $( if $top.$opt.is_some() { $base.$opt = $top.$opt.clone(); } )*
        $( if !$top.$vec.is_empty() { $base.$vec = $top.$vec.clone(); } )*
        $( $base.$flag |= $top.$flag; )*
    }};
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// `self` with every option set in `top` replaced.
    pub fn overlay(mut self, top: &RunConfig) -> Self {
        let base = &mut self;
        overlay!(
            base,
            top,
            [format, output, spin, suite, ansatz, a, sin_b, cos_b, theory, n, dims, half_width, mass, dt, steps, record_every, width],
            [rep, center, k0],
            [without_t, without_s, time_operator]
        );
        self
    }

    /// Names of the options that are set, as spelled on the command line.
    fn set_options(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let mut add = |on: bool, name: &'static str| {
            if on {
                v.push(name);
            }
        };
        add(self.spin.is_some(), "spin");
        add(!self.rep.is_empty(), "rep");
        add(self.suite.is_some(), "suite");
        add(self.ansatz.is_some(), "ansatz");
        add(self.a.is_some(), "a");
        add(self.sin_b.is_some(), "sin-b");
        add(self.cos_b.is_some(), "cos-b");
        add(self.without_t, "without-t");
        add(self.without_s, "without-s");
        add(self.time_operator, "time-operator");
        add(self.theory.is_some(), "theory");
        add(self.n.is_some(), "n");
        add(self.dims.is_some(), "dims");
        add(self.half_width.is_some(), "half-width");
        add(self.mass.is_some(), "mass");
        add(self.dt.is_some(), "dt");
        add(self.steps.is_some(), "steps");
        add(self.record_every.is_some(), "record-every");
        add(self.width.is_some(), "width");
        add(!self.center.is_empty(), "center");
        add(!self.k0.is_empty(), "k0");
        v
    }

    /// Rejects options the command does not use and formats it cannot produce.
    pub fn validate(&self, cmd: Command) -> Result<Format> {
        if let Some(c) = self.command {
            if c != cmd {
                return Err(Error::Config(format!("config file is for `{}`, but `{}` was requested", c.name(), cmd.name())));
            }
        }
        let allowed: &[&str] = match cmd {
            Command::Catalog => &["spin", "rep"],
            Command::Verify => &["spin", "rep", "suite", "ansatz", "a", "sin-b", "cos-b"],
            Command::PositionScan => &["spin"],
            Command::Commutant => &["spin", "rep", "without-t", "without-s", "time-operator"],
            Command::Evolve => &[
                "theory", "n", "dims", "half-width", "mass", "dt", "steps", "record-every", "width", "center", "k0",
            ],
            Command::Report => &["spin"],
        };
        for name in self.set_options() {
            if !allowed.contains(&name) {
                return Err(Error::Config(format!(
                    "--{name} is not used by `{}`; it accepts {}",
                    cmd.name(),
                    allowed.iter().map(|a| format!("--{a}")).collect::<Vec<_>>().join(", ")
                )));
            }
        }
        let format = self.format.unwrap_or(cmd.default_format());
        if !cmd.formats().contains(&format) {
            return Err(Error::Config(format!(
                "`{}` cannot write {}; choose one of {}",
                cmd.name(),
                format.name(),
                cmd.formats().iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
            )));
        }
        if format == Format::Binary && self.output.is_none() {
            return Err(Error::Config("binary output needs --output".into()));
        }
        if cmd == Command::Verify && self.rep.is_empty() {
            return Err(Error::Config("`verify` needs at least one --rep (or --rep all)".into()));
        }
        if cmd == Command::Commutant && self.rep.is_empty() {
            return Err(Error::Config("`commutant` needs at least one --rep (or --rep all)".into()));
        }
        if self.ansatz.is_none() && (self.a.is_some() || self.sin_b.is_some() || self.cos_b.is_some()) {
            return Err(Error::Config("--a, --sin-b and --cos-b need --ansatz".into()));
        }
        for (name, v) in [("center", &self.center), ("k0", &self.k0)] {
            if !v.is_empty() && v.len() != 3 {
                return Err(Error::Config(format!("--{name} takes three comma-separated numbers")));
            }
        }
        Ok(format)
    }
}
