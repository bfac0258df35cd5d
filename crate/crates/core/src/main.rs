use std::io::{BufWriter, Write};

use clap::Parser;

use mea_core::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let mut code = run(&cli, &mut out, &mut stderr.lock());
    if out.flush().is_err() && code == 0 {
        code = mea_core::cli::EXIT_USAGE;
    }
    std::process::exit(code);
}
