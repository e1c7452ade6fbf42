use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use shelfcoh::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command, &cli.opts) {
        Ok(rep) => {
            let text = if cli.opts.json { rep.to_json() + "\n" } else { rep.to_text() };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(rep.exit_status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
