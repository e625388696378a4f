use std::process::ExitCode;

fn main() -> ExitCode {
    nonlocal_heat::cli::main_with_args(std::env::args_os()).into()
}
