mod args;
mod commands;
mod error;
mod pipeline;
mod verify;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Output;
use error::{CliError, CliResult};

const SUBCOMMANDS: &[&str] = &["parse", "invariants", "riley", "torsion", "growth", "mahler", "colorings", "verify-paper"];

fn config_path(argv: &[OsString]) -> Option<String> {
    let mut it = argv.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Turn `key = value` lines into long options.
fn config_args(text: &str) -> CliResult<Vec<OsString>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            v => {
                out.push(format!("--{key}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}

/// Splice config options in right after the subcommand so that flags given
/// on the command line win.
fn expand_config(mut argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(path) = config_path(&argv) else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let extra = config_args(&text)?;
    let at = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(argv.len(), |i| i + 1);
    argv.splice(at..at, extra);
    Ok(argv)
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Parse(input) => commands::parse(input),
        Command::Invariants { input, rep } => commands::invariants(input, rep),
        Command::Riley { two_bridge, example, recursion } => {
            commands::riley(two_bridge.as_deref(), example.as_deref(), *recursion)
        }
        Command::Torsion { input, rep, lattice, strip } => commands::torsion(input, rep, lattice, strip),
        Command::Growth { input, rep, rmax, strip } => commands::growth(input, rep, *rmax, strip),
        Command::Mahler { poly, tol, input, rep } => commands::mahler(poly.as_deref(), *tol, input, rep),
        Command::Colorings { input, prime } => commands::colorings(input, *prime),
        Command::VerifyPaper => {
            let (out, failed) = verify::verify_paper()?;
            emit(&out, cli.json);
            if failed > 0 {
                return Err(verify::failure(failed));
            }
            Ok(Output { json: serde_json::Value::Null, human: String::new() })
        }
    }
}

fn emit(out: &Output, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
    } else {
        print!("{}", out.human);
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => return fail(&e),
    };
    let cli = Cli::parse_from(argv);
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            if !out.json.is_null() || !out.human.is_empty() {
                emit(&out, cli.json);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
