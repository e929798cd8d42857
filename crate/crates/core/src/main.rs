use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use srgrank::cli::{run, Cli, RunReport};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let start = Instant::now();
    let outcome = match run(&cli, &mut io::stdin().lock()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut stdout = io::stdout().lock();
    let written = if cli.json {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        let report = RunReport::new(argv, &outcome, start.elapsed().as_millis());
        writeln!(stdout, "{}", serde_json::to_string(&report).expect("report serializes"))
    } else {
        stdout.write_all(outcome.stdout.as_bytes())
    };
    if let Err(e) = written.and_then(|_| stdout.flush()) {
        eprintln!("error: writing output: {e}");
        return ExitCode::FAILURE;
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr);
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        None => ExitCode::SUCCESS,
    }
}
