use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    // optional override for the harnesses' worker pool
    if let Ok(threads) = std::env::var("THREADS") {
        let pool = threads.parse().ok().filter(|&t: &usize| t > 0).map(|t| {
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global()
        });
        if !matches!(pool, Some(Ok(()))) {
            eprintln!("error: THREADS must be a positive integer, got `{threads}`");
            return ExitCode::from(2);
        }
    }
    let out = unicolor_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
