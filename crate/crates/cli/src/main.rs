use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtop::app::{run, Cli, Outcome};
use qtop::CliError;

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = run(&cli).and_then(|o| match o {
        Outcome::Ok(text) => emit(&cli, &text),
        Outcome::Failed(text, e) => emit(&cli, &text).and(Err(e)),
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qtop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
