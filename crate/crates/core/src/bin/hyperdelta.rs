use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // let clap print help and version directly
    if args.iter().skip(1).any(|a| matches!(a.as_str(), "-h" | "--help" | "-V" | "--version" | "help"))
        || args.len() == 1
    {
        if let Err(e) = <hyperdelta::cli::Cli as clap::Parser>::try_parse_from(&args) {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    }
    let report = hyperdelta::cli::run_args(&args);
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", report.to_json());
    eprint!("{}", report.summary());
    ExitCode::from(report.exit_code() as u8)
}
