use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = qcorr_cli::Cli::parse();
    qcorr_cli::run_cli(&cli)
}
