//! The `egyfrac` command-line tool.
//!
//! Results go to standard output in the chosen format. Progress, timing,
//! execution settings and errors go to standard error as JSON lines.

pub mod args;
mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
const EXIT_IO: i32 = 1;

/// How a command ended, short of an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    Incomplete,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Precondition(egyfrac::Error),
    Io(io::Error),
}

impl From<egyfrac::Error> for Failure {
    fn from(e: egyfrac::Error) -> Self {
        Failure::Precondition(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let stdout = io::stdout().lock();
    let result = commands::execute(cli, io::BufWriter::new(stdout));
    match result {
        Ok(Outcome::Complete) => EXIT_OK,
        Ok(Outcome::Incomplete) => EXIT_INCOMPLETE,
        Err(Failure::Usage(message)) => {
            report_error("Usage", &message);
            EXIT_USAGE
        }
        Err(Failure::Precondition(e)) => {
            report_error(e.kind(), &e.to_string());
            EXIT_PRECONDITION
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            report_error("Io", &e.to_string());
            EXIT_IO
        }
    }
}

fn report_error(kind: &str, message: &str) {
    let record = json!({ "error": { "kind": kind, "message": message } });
    let _ = writeln!(io::stderr().lock(), "{record}");
}
