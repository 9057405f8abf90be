use std::process::ExitCode;

use clap::Parser;
use monopath::output::{render, write_output};
use monopath::spec::{Cli, OUT_DIR_ENV};
use monopath::{commands, CliError, ExperimentSpec};

fn run() -> Result<bool, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help, --version
            print!("{e}");
            return Ok(false);
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return Err(CliError::BadArguments(
                first.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(Into::into);
    let spec = ExperimentSpec::from_cli(&cli, out_dir)?;
    let table = commands::run(&spec)?;
    let bytes = render(spec.command.name(), &table, spec.output_format)?;
    write_output(&spec.output, &bytes)?;
    Ok(table.numerical_failure)
}

fn main() -> ExitCode {
    match run() {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("monopath: some rows failed to converge; see the error column");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("monopath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
