use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use shift_tree_cli::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cfg, &mut out, &mut stderr.lock());
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(e) => {
            eprintln!("shiftsum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
