use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use opoly::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    // buffer everything so a failed run never leaves partial output behind
    let mut buf = Vec::new();
    let code = match execute(&cli, &mut buf) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.command.shared().out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(&buf)?;
            w.flush()
        }),
        None => std::io::stdout().lock().write_all(&buf),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
