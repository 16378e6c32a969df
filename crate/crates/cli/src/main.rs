use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skewci::{parse_manifest, run_manifest, Overrides};

#[derive(Parser)]
#[command(
    name = "skewci",
    version,
    about = "Complete-intersection checks for graded skew Clifford algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the commands listed in a manifest and print the JSON report.
    Run {
        manifest: PathBuf,
        /// Truncation degree for Gröbner bases.
        #[arg(long, env = "SKEWCI_MAX_DEGREE")]
        max_degree: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated primes for the witness probe.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a manifest.
    Validate { manifest: PathBuf },
}

fn load(path: &PathBuf) -> Result<(String, skewci::Manifest), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let m = parse_manifest(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((text, m))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Validate { manifest } => match load(&manifest) {
            Ok((_, m)) => {
                println!("{}: valid ({} generators)", m.name, m.generators.len());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Run {
            manifest,
            max_degree,
            seed,
            primes,
            out,
        } => {
            let (text, m) = match load(&manifest) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let ov = Overrides {
                max_degree,
                seed,
                primes,
            };
            let outcome = match run_manifest(&m, &text, &ov) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let body =
                serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            for a in outcome.report["alarms"].as_array().into_iter().flatten() {
                eprintln!("{}", a.as_str().unwrap_or_default());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
    }
}
