use std::process::ExitCode;

use clap::Parser;
use jhp_lab::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are precondition failures; help and version are not errors
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let code = match run(&cli, &mut std::io::stdout().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("jhp-lab: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
