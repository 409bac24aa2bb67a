use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(poset_automata::cli::run(std::env::args_os()))
}
