use std::process::ExitCode;

use clap::Parser;
use qbilliard_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(summary) => {
            for m in &summary.messages {
                eprintln!("{m}");
            }
            for p in &summary.written {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
