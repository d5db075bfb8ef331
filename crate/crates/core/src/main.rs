use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(harmonic_shear::cli::run(std::env::args_os()))
}
