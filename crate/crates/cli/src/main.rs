use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use concount_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match concount_cli::run(&cli) {
        Ok(out) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match out
                .report
                .render(cli.format, &mut lock)
                .and_then(|()| Ok(lock.flush()?))
            {
                Ok(()) => out.exit_code,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
