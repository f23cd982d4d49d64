//! `rosenthal` command-line tool.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal
//! consistency, resource or I/O error. Errors go to stderr as one JSON line.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use chrono::Utc;
use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use output::{manifest_path, timestamp, write_file, CliError, RunManifest};

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Dim(_) => "dim",
        Command::Char(_) => "char",
        Command::Profile(_) => "profile",
        Command::Lemmas(_) => "lemmas",
        Command::Terms(_) => "terms",
        Command::Bound(_) => "bound",
        Command::Mixtime(_) => "mixtime",
        Command::Censor(_) => "censor",
        Command::Simulate(_) => "simulate",
        Command::DecayCheck(_) => "decay-check",
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot size worker pool: {e}")))?;
    }
    let started = Utc::now();
    let out = commands::run(&cli.command)?;
    let finished = Utc::now();

    let mut digests = Vec::new();
    for (path, bytes) in &out.files {
        digests.push(write_file(path, bytes)?);
    }
    if let Some((first, _)) = out.files.first() {
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand_name(&cli.command),
            argv,
            parameters: &cli.command,
            seed: out.seed,
            threads: rayon::current_num_threads(),
            started_at: timestamp(started),
            finished_at: timestamp(finished),
            outputs: digests,
        };
        write_file(&manifest_path(first), output::to_json(&manifest).as_bytes())?;
    }
    if let Some(s) = out.stdout {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not an error worth reporting
        let _ = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush());
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(output::EXIT_USAGE as u8);
        }
        Err(e) => {
            let text = e.to_string();
            let head: Vec<&str> = text.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            let msg = head.join(" ");
            let err = CliError::usage(msg.trim_start_matches("error: "));
            eprintln!("{}", err.line());
            return ExitCode::from(err.code as u8);
        }
    };
    match execute(&cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(e.code as u8)
        }
    }
}
