use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (report, code) = tsv::run(std::env::args_os());
    let result = if code == tsv::cli::EXIT_USAGE {
        std::io::stderr().write_all(report.as_bytes())
    } else {
        std::io::stdout().write_all(report.as_bytes())
    };
    if result.is_err() {
        return ExitCode::from(tsv::cli::EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
