//! Library half of the `ses` binary, so integration tests can drive commands
//! in-process.

pub mod args;
mod commands;
mod report;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use ses_core::{Error, Limits};

pub use args::Cli;
pub use report::Outcome;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_BOUND: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// Exit code for an error escaping a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BoundExceeded { .. }) => EXIT_BOUND,
        Some(Error::Disagreement { .. }) => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

/// Enumeration caps: defaults, then `SES_MAX_ENUM`, then `--max-enum`.
pub fn limits(cli: &Cli) -> anyhow::Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("SES_MAX_ENUM") {
        let cap: u64 = v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("SES_MAX_ENUM must be a positive integer, got {v:?}"))?;
        limits = limits.with_max_enum(cap);
    }
    if let Some(cap) = cli.global.max_enum {
        limits = limits.with_max_enum(cap);
    }
    if limits.max_enum == 0 {
        anyhow::bail!("enumeration cap must be positive");
    }
    Ok(limits)
}

/// Runs a parsed command inside a pool of the requested size.
pub fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let limits = limits(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.global.workers {
        if w == 0 {
            anyhow::bail!("--workers must be positive");
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build()?;
    pool.install(|| commands::dispatch(cli, &limits))
}

/// Parses `argv`, runs it and writes the result. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return exit_code(&e);
        }
    };
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => stdout.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    outcome.code
}
