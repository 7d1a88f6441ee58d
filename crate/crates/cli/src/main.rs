use std::process::ExitCode;

fn main() -> ExitCode {
    wavephase_cli::run(std::env::args().collect())
}
