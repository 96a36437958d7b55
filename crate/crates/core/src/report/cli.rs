//! Command-line parsing for the `tamagawa` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Result;
use crate::report::config::{Command, RunConfig, Settings};
use crate::report::run::{run, summary, RunOutcome};

#[derive(Parser, Debug)]
#[command(name = "tamagawa", version, about = "Check Tamagawa number identities for algebraic tori over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Top,
}

#[derive(Subcommand, Debug)]
pub enum Top {
    /// Run one group of checks and print a JSON report.
    Verify {
        #[arg(value_enum)]
        what: What,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum What {
    Euler,
    Lifting,
    Globalinv,
    Density,
    Sha,
    Tnc,
    All,
}

impl From<What> for Command {
    fn from(w: What) -> Self {
        match w {
            What::Euler => Command::Euler,
            What::Lifting => Command::Lifting,
            What::Globalinv => Command::Globalinv,
            What::Density => Command::Density,
            What::Sha => Command::Sha,
            What::Tnc => Command::Tnc,
            What::All => Command::All,
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Torus as family:d or family:d1,d2 (families: res, norm1, quot). Repeatable.
    #[arg(long)]
    pub torus: Vec<String>,
    /// Largest prime checked.
    #[arg(long)]
    pub pmax: Option<u64>,
    /// Lifting depth at good primes.
    #[arg(long)]
    pub kmax: Option<u32>,
    /// Tolerance for analytic comparisons.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Enumeration budget (default from TAMAGAWA_BUDGET, else 1e8).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record wall-clock time per row (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig> {
        let Top::Verify { what, flags } = self.cmd;
        let file = match &flags.config {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        let cli = Settings {
            torus: flags.torus,
            pmax: flags.pmax,
            kmax: flags.kmax,
            tol: flags.tol,
            budget: flags.budget,
            jobs: flags.jobs,
            out: flags.out,
            timings: flags.timings.then_some(true),
        };
        RunConfig::merge(what.into(), cli, file)
    }
}

/// Parses `args`, runs, prints the report (stdout unless `--out`) and the
/// summary (stderr). Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { crate::report::run::EXIT_CONFIG } else { 0 };
        }
    };
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return crate::report::run::EXIT_CONFIG;
        }
    };
    let outcome: RunOutcome = run(&cfg);
    if cfg.out.is_none() {
        if let Some(doc) = &outcome.document {
            print!("{doc}");
        }
    }
    eprintln!("{}", summary(&outcome));
    outcome.exit_code
}
