mod args;
mod commands;
mod output;

use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let code = match commands::run(cli.command, &mut out, &mut input) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("fanspec: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}
