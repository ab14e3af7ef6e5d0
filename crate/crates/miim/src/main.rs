use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(miim::cli::main_entry())
}
