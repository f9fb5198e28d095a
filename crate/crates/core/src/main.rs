use std::io::Write;

fn main() {
    semiring_lab::cli::configure_threads();
    let outcome = semiring_lab::cli::dispatch(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
