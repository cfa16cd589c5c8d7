use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rotorwalk::cli::{run, Cli};

fn main() -> ExitCode {
    let invocation = run(&Cli::parse());
    print!("{}", invocation.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", invocation.stderr);
    ExitCode::from(invocation.status as u8)
}
