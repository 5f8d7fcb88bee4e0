use std::io::Write;
use std::process::ExitCode;

use antibidiag_cli::args::BackendArg;
use antibidiag_cli::run::violated_inequality;
use antibidiag_cli::{run, Cli, Format, Report};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = match cli.options.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
                Format::Pretty => report.to_pretty(cli.options.verbose),
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            match report {
                Report::Verify(r) if !r.passed => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.label());
            if let Some(ineq) = violated_inequality(&e) {
                eprintln!("  violated: {ineq}");
            }
            if e.exit_code() == 2 && cli.options.backend == BackendArg::Float64 {
                eprintln!("  hint: --backend rational reconstructs a_j^2 exactly");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
