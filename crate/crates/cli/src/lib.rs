//! Command-line front end. [`run`] parses arguments, dispatches and writes
//! a report; the exit code is `0` on success, `2` when a verification
//! fails and `1` on usage or input errors.
//!
//! Every JSON report carries `"schema": "1"`.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;

pub use args::{Cli, Format};

pub const SCHEMA: &str = "1";

/// A finished report and whether everything it checks holds.
#[derive(Debug)]
pub struct Report {
    pub body: Value,
    pub verified: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, verified: true }
    }
}

#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(report) => {
            let mut body = report.body;
            if let Value::Object(map) = &mut body {
                map.insert("schema".into(), Value::String(SCHEMA.into()));
            }
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&body).expect("serializable"),
                Format::Table => render_table(&body),
            };
            let _ = writeln!(out, "{text}");
            if report.verified {
                0
            } else {
                2
            }
        }
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// One aligned `key  value` line per top-level field; nested values are
/// printed as compact JSON.
pub fn render_table(body: &Value) -> String {
    let Value::Object(map) = body else {
        return body.to_string();
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("{k:<width$}  {shown}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
