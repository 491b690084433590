use std::process::ExitCode;

fn main() -> ExitCode {
    syndromelab::cli::run(std::env::args_os())
}
