use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(uflow::cli::run(std::env::args()) as u8)
}
