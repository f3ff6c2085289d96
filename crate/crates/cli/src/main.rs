use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use gtkit_cli::args::Cli;
use gtkit_cli::execute;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let written = if cli.csv {
        report.write_csv(&mut out).map_err(io::Error::other)
    } else {
        writeln!(out, "{}", report.to_json_line())
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
