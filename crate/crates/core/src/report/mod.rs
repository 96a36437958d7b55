//! Configuration, JSON reports and the run driver behind the CLI.

pub mod cli;
pub mod config;
pub mod record;
pub mod render;
pub mod run;

pub use config::{Command, RunConfig, Settings};
pub use record::{Identity, Real, Verdict, VerificationReport};
pub use render::{render_report, write_atomic, SCHEMA_VERSION};
pub use run::{exit_code, run, RunOutcome};
