use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use quantsyl_cli::{execute, Cli, CliError};

fn read_input(file: Option<&std::path::Path>) -> Result<String, CliError> {
    let mut text = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Io {
                path: "stdin".into(),
                message: e.to_string(),
            })?;
        }
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (args, cap) = cli.resolve();
    let result = read_input(args.file.as_deref()).and_then(|text| execute(&text, &args, cap));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Disagreement { output, .. } = &e {
                print!("{output}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
