//! Library half of the `divint` binary: argument and config handling, report
//! documents, the antichain cache and the subcommands themselves.

pub mod cache;
pub mod commands;
pub mod config;
mod error;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::Parser;

pub use commands::{execute, Outcome, Table};
pub use config::{Cli, Format, RunConfig};
pub use error::{CliError, CliResult};
pub use report::ReportDocument;

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig::resolve(&cli.global)?;
    let start = Instant::now();
    let out = execute(&cli.command, &cfg)?;
    for n in &out.notices {
        eprintln!("{n}");
    }
    let body = render(&out, cfg.format)?;
    let mut stdout = io::stdout().lock();
    match stdout
        .write_all(body.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if cfg.format == Format::Json {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    if out.failed > 0 {
        return Err(CliError::Counterexample { failed: out.failed });
    }
    Ok(())
}

pub fn render(out: &Outcome, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Text => out.text.clone(),
        Format::Json => out.doc.to_json(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.table.header).map_err(io::Error::from)?;
            for row in &out.table.rows {
                w.write_record(row).map_err(io::Error::from)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            String::from_utf8(bytes).expect("csv of strings is utf-8")
        }
    })
}
