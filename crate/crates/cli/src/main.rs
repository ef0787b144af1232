use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = cyclotome_cli::execute(std::env::args_os());
    if outcome.code == cyclotome_cli::exit::USAGE {
        eprint!("{}", outcome.output);
    } else {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(outcome.output.as_bytes()).and_then(|()| stdout.flush()).is_err() {
            return ExitCode::from(cyclotome_cli::exit::USAGE);
        }
    }
    ExitCode::from(outcome.code)
}
