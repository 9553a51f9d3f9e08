use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use semibrick_cli::{exit_code, run, Cli, ErrorReport, Format, SCHEMA_VERSION};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.opts.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(e.into()),
        },
        None => run(&cli),
    };
    let mut stdout = std::io::stdout().lock();
    match outcome {
        Ok(report) => {
            let text = match cli.opts.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            if cli.opts.format == Format::Json {
                let err = ErrorReport {
                    schema_version: SCHEMA_VERSION,
                    command: cli.command.name().to_string(),
                    error: format!("{e:#}"),
                };
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&err).expect("serialises"));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
