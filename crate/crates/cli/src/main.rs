use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pncalc::{emit_report, load_model, run_checks, Format, Report};
use pncalc_core::oracle::SamplePlan;

#[derive(Parser)]
#[command(name = "pncalc", version, about = "Exact verifier for Poisson–Nijenhuis structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a model file and print a report.
    Check(CheckArgs),
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    model: PathBuf,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[arg(long, env = "PNCALC_SEED", default_value_t = 42)]
    seed: u64,
    /// Sample points per oracle check.
    #[arg(long)]
    oracle_samples: Option<usize>,
    #[arg(long)]
    skip_oracle: bool,
    /// Include wall-clock time per check (excluded from the digest).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

fn main() -> ExitCode {
    let Command::Check(args) = Cli::parse().command;
    let model = match load_model(&args.model) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut plan = model.plan(&SamplePlan::with_seed(args.seed));
    if let Some(n) = args.oracle_samples {
        plan.count = n;
    }
    if let Err(e) = plan.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let plan = (!args.skip_oracle).then_some(plan);
    let checks = run_checks(&model, plan.as_ref());
    let report = Report::from_structure(&model, args.seed, plan.as_ref(), &checks, args.timings);
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, emit_report(&report, Format::Json)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let format = match args.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    print!("{}", String::from_utf8_lossy(&emit_report(&report, format)));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
