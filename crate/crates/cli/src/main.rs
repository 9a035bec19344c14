mod args;
mod commands;
mod schema;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use heisweil::Error;
use serde_json::{json, Value};

use args::Cli;

const EXIT_DOMAIN: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 64;

fn emit(doc: &Value, output: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("JSON value") + "\n";
    match output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// The subcommand path (`"heis build"`) named on the command line, parsed
/// leniently so `--schema` works without the subcommand's required flags.
fn schema_path(raw: &[String]) -> Option<String> {
    let m = Cli::command().ignore_errors(true).try_get_matches_from(raw).ok()?;
    let (group, sub) = m.subcommand()?;
    let (leaf, _) = sub.subcommand()?;
    Some(format!("{group} {leaf}"))
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    if raw.iter().any(|a| a == "--schema") {
        return match schema_path(&raw).and_then(|p| schema::schema(&p)) {
            Some(s) => {
                emit(&s, None).expect("stdout");
                ExitCode::SUCCESS
            }
            None => {
                let all: Value = schema::subcommands().into_iter().map(|p| (p.to_string(), schema::schema(p).unwrap())).collect::<serde_json::Map<_, _>>().into();
                emit(&all, None).expect("stdout");
                ExitCode::SUCCESS
            }
        };
    }
    let cli = match Cli::try_parse_from(&raw) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let (doc, code) = match commands::run(&cli.command, cli.seed) {
        Ok(out) => (out.doc, if out.ok { 0 } else { EXIT_CHECK_FAILED }),
        Err(e) => {
            let (kind, code) = match &e {
                Error::Domain(_) => ("domain", EXIT_DOMAIN),
                Error::Unsupported(_) => ("unsupported", EXIT_DOMAIN),
                Error::Resource(_) => ("resource", EXIT_RESOURCE),
            };
            eprintln!("heisweil: {e}");
            (json!({ "error": { "kind": kind, "message": e.to_string() } }), code)
        }
    };
    if let Err(e) = emit(&doc, cli.output.as_deref()) {
        eprintln!("heisweil: cannot write output: {e}");
        return ExitCode::from(EXIT_DOMAIN);
    }
    ExitCode::from(code)
}
