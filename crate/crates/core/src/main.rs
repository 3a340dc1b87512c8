use std::process::ExitCode;

fn main() -> ExitCode {
    strict_dpp::cli::main()
}
