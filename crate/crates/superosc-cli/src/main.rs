mod args;
mod commands;
mod table;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Library(#[from] superosc::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl AppError {
    fn is_broken_pipe(&self) -> bool {
        let io = match self {
            AppError::Io(e) => Some(e),
            AppError::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e),
                _ => None,
            },
            AppError::Json(e) => return e.io_error_kind() == Some(io::ErrorKind::BrokenPipe),
            _ => None,
        };
        io.is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
    }
}

const EXIT_ERROR: u8 = 1;
const EXIT_VERIFICATION_FAILED: u8 = 2;

fn diagnostic(msg: impl std::fmt::Display) -> ExitCode {
    let text = msg.to_string();
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("unknown error");
    eprintln!("superosc: {}", line.trim_start_matches("error: "));
    ExitCode::from(EXIT_ERROR)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return diagnostic(e),
    };
    let report = match commands::run(&cli.command, &cli.global) {
        Ok(r) => r,
        Err(e) => return diagnostic(e),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    if let Err(e) = report.table.write(cli.global.output, &mut out).and_then(|()| Ok(out.flush()?)) {
        if e.is_broken_pipe() {
            return ExitCode::SUCCESS;
        }
        return diagnostic(e);
    }
    if report.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    }
}
