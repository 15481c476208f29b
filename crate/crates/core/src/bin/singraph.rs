use std::process::ExitCode;

use clap::Parser;
use singraph::cli::{run, Cli, EXIT_DOMAIN};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN as u8)
        }
    }
}
