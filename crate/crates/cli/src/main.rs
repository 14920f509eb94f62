use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nicerec_cli::certificate::verify_certificate_file;
use nicerec_cli::report::table;
use nicerec_cli::runner::{exit_code, load_all, run, RunOptions};
use nicerec_cli::scenario::Kind;
use nicerec_cli::schema::schema;
use nicerec_core::Limits;

#[derive(Parser)]
#[command(name = "nicerec", version, about = "Exact recurrence verification scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenario files or directories of them.
    Run {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest sweep, in points.
        #[arg(long)]
        cap: Option<u64>,
        /// Seed for randomized scenarios.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for `<id>.cert.json` files.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch.
    VerifyCertificate { file: PathBuf },
    /// List the scenarios found under the given paths.
    ListScenarios {
        #[arg(default_value = "scenarios")]
        paths: Vec<PathBuf>,
    },
    /// Print the payload descriptor of a scenario kind.
    Schema { kind: Kind },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            paths,
            json,
            jobs,
            cap,
            seed,
            emit_certificate,
        } => {
            let opts = RunOptions {
                jobs,
                cap,
                seed,
                emit_certificate,
            };
            match run(&paths, &opts) {
                Err(e) => {
                    eprintln!("error: {e}");
                    code(2)
                }
                Ok(report) => {
                    print!("{}", report.to_text());
                    if let Some(path) = json {
                        if let Err(e) = std::fs::write(&path, report.to_json()) {
                            eprintln!("error: {}: {e}", path.display());
                            return code(2);
                        }
                    }
                    code(exit_code(&report))
                }
            }
        }
        Command::VerifyCertificate { file } => {
            let (c, msg) = verify_certificate_file(&file, &Limits::default());
            if c == 0 {
                println!("{msg}");
            } else {
                eprintln!("{msg}");
            }
            code(c)
        }
        Command::ListScenarios { paths } => match load_all(&paths) {
            Err(e) => {
                eprintln!("error: {e}");
                code(2)
            }
            Ok(mut scenarios) => {
                scenarios.sort_by(|a, b| a.scenario.id.cmp(&b.scenario.id));
                let rows: Vec<Vec<String>> = scenarios
                    .iter()
                    .map(|s| vec![s.scenario.id.clone(), s.scenario.kind.to_string(), s.path.display().to_string()])
                    .collect();
                for line in table(&["id", "kind", "file"], &rows) {
                    println!("{line}");
                }
                code(0)
            }
        },
        Command::Schema { kind } => {
            println!("{}", serde_json::to_string_pretty(&schema(kind)).expect("schema serializes"));
            code(0)
        }
    }
}
