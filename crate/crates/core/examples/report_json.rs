//! Runs a verification from code and prints the JSON report.

use tamagawa::report::{run, Command, RunConfig, Settings};

fn main() {
    let flags = Settings { torus: vec!["norm1:-3".into(), "quot:5".into()], pmax: Some(20), ..Settings::default() };
    let cfg = match RunConfig::merge(Command::All, flags, Settings::default()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(64);
        }
    };
    let outcome = run(&cfg);
    if let Some(doc) = &outcome.document {
        print!("{doc}");
    }
    eprintln!("{}", tamagawa::report::run::summary(&outcome));
    std::process::exit(outcome.exit_code);
}
