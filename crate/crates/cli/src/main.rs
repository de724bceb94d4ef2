//! `coxring`: command-line access to cones, surfaces, graded rings, toric
//! quotients and the fixture verifier.

use std::process::ExitCode;

use clap::Parser;
use coxring_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
