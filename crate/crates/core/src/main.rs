use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use etnc::error::{Error, Result};
use etnc::fetch::fetch_metadata;
use etnc::pipeline::{run_all, CheckGroup, RunConfig};
use etnc::problem::ProblemFile;

const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "etnc", version, about = "Numerical verification of eTNC criteria from a problem file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks on a problem file and print a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Check groups to run: rat, max, zpg, cor1, bsd or all (repeatable).
    #[arg(long = "check", value_name = "GROUP")]
    checks: Vec<String>,
    /// Recognition tolerance, as `1e-15` or as the exponent `15`.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long, value_name = "N")]
    denom_bound: Option<String>,
    #[arg(long, value_name = "BITS")]
    precision_bits: Option<usize>,
    /// Also write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Metadata endpoint; `GET <endpoint>/<label>` replaces the curve block.
    #[arg(long, value_name = "URL")]
    fetch: Option<String>,
    /// Curve label for `--fetch` when the file has no curve block.
    #[arg(long)]
    label: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_tol(s: &str) -> Result<u32> {
    let s = s.trim();
    let exp = match s.split_once(['e', 'E']) {
        Some((m, e)) if m.trim() == "1" => e.trim().strip_prefix('-').and_then(|e| e.parse().ok()),
        Some(_) => None,
        None => s.parse().ok(),
    };
    exp.filter(|&e: &u32| e > 0).ok_or_else(|| Error::Parse(format!("tolerance must look like 1e-15 or 15, got {s:?}")))
}

fn verify(args: &VerifyArgs) -> Result<i32> {
    let mut file = ProblemFile::load(&args.file)?;
    if let Some(endpoint) = &args.fetch {
        let label = args
            .label
            .clone()
            .or_else(|| file.curve.as_ref().map(|c| c.label.clone()))
            .ok_or_else(|| Error::MissingData("a curve label for --fetch".into()))?;
        let mut meta = fetch_metadata(&label, endpoint)?;
        if let Some(old) = &file.curve {
            if meta.residue_point_counts.is_empty() {
                meta.residue_point_counts = old.residue_point_counts.clone();
            }
        }
        file.curve = Some(meta);
    }
    let checks = args.checks.iter().map(|c| c.parse()).collect::<Result<BTreeSet<CheckGroup>>>()?;
    let config = RunConfig {
        checks,
        tol_exponent: args.tol.as_deref().map(parse_tol).transpose()?,
        denom_bound: args
            .denom_bound
            .as_deref()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Parse(format!("denominator bound: {e}"))))
            .transpose()?,
        precision_bits: args.precision_bits,
        embedding_twist: None,
    };
    let report = run_all(&file, &config)?;
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => match verify(args) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INPUT_ERROR)
            }
        },
    }
}
