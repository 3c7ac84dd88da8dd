use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = heights_cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout.trim_end());
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    ExitCode::from(outcome.code)
}
