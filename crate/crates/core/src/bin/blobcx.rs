use std::process::ExitCode;

use blobcx::cli::{exit_code, run, Cli};
use blobcx::field::FieldChoice;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match FieldChoice::from_env() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: BLOB_FIELD: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cli.command, field) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    eprint!("{}", report.summary());
    let json = report.to_json() + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(exit_code(&report) as u8)
}
