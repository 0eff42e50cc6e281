use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = mangle_cli::Cli::parse();
    match mangle_cli::run(&cli) {
        Ok(outcome) => {
            for notice in &outcome.notices {
                eprintln!("notice: {notice}");
            }
            print!("{}", outcome.stdout);
            if outcome.verdict_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
