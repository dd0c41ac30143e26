use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("LOGSYN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let outcome = logsyn_cli::run(std::env::args_os());
    if outcome.code == logsyn_cli::EXIT_USAGE {
        eprint!("{}", outcome.output);
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.code as u8)
}
