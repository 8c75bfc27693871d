use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fpint_cli::{run, Failure, JobSpec, Settings};

#[derive(Parser)]
#[command(name = "fpint", version, about = "Regularized limits, finite-part integrals and Stieltjes transforms")]
struct Cli {
    /// Relative accuracy target; overrides the JobSpec.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum number of series terms; overrides the JobSpec.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a JobSpec read from FILE, or from stdin when FILE is absent or `-`.
    Run { file: Option<PathBuf> },
    /// Check every fixture; exits 0 iff all pass.
    Verify {
        #[arg(long, default_value = fpint_cli::verify::DEFAULT_SUITE)]
        suite: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

fn read_job(file: Option<PathBuf>) -> Result<String, Failure> {
    let mut src = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            src = std::fs::read_to_string(&p).map_err(|e| Failure::Schema(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut src).map_err(|e| Failure::Schema(format!("stdin: {e}")))?;
        }
    }
    Ok(src)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings { tol: cli.tol, max_terms: cli.max_terms, threads: cli.threads };
    let fixtures = std::env::var_os("FPINT_FIXTURES").map(PathBuf::from);
    let result = (|| {
        let job = match cli.command {
            Cmd::Run { file } => JobSpec::parse(&read_job(file)?).map_err(Failure::Schema)?,
            Cmd::Verify { suite, format } => {
                let fmt = match format {
                    OutFormat::Json => "json",
                    OutFormat::Csv => "csv",
                };
                let src = serde_json::json!({ "command": "verify", "suite": suite, "output": fmt }).to_string();
                JobSpec::parse(&src).map_err(Failure::Schema)?
            }
        };
        run(&job, &settings, fixtures.as_deref())
    })();
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            eprintln!("fpint: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
