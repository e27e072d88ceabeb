use std::process::ExitCode;

use padic_cubic::Limits;
use padic_cubic_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let result = parse_args(std::env::args_os()).and_then(|cmd| run(&cmd, &Limits::from_env()));
    match result {
        Ok(out) => {
            println!("{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(CliError::Clap(e)) if !e.use_stderr() => {
            print!("{e}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
