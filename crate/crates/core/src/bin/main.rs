// SPDX-License-Identifier: MIT

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use poisson_inv::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run(&cli, &mut out);
    if out.flush().is_err() {
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}
