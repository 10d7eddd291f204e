use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dkp_spectra::cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out.text).map(|_| out.failed)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dkp-spectra: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("cannot write output: {e}"));
    match &cli.options.output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}
