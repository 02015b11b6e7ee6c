//! Front end for the `qlambda` binary: argument types, dispatch and artifact
//! emission. `run` returns the process exit code.

pub mod args;
pub mod commands;
pub mod output;

use clap::Parser;
use thiserror::Error;

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verification(_) | CliError::Io(_) => 1,
        }
    }
}

/// Parse `argv`, print the effective configuration to stderr and execute.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    eprintln!("config {}", serde_json::to_string(&cli).expect("arguments serialise"));
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        // a second call in the same process keeps the first pool
        eprintln!("note: {e}");
    }
    match commands::execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
