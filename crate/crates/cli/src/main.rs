use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use smoothquot_cli::classify::{default_model, list_deltas, ClassifyOptions, DeltaSpec};
use smoothquot_cli::config::CustomCase;
use smoothquot_cli::identities::all_passed;
use smoothquot_cli::report::{self, Format};
use smoothquot_cli::{
    branch_locus_report, run_case, run_classification, verify_example_c, verify_matrix_identities,
    ClassificationReport, CliError, CliResult,
};
use smoothquot_core::torus::SurfaceModel;

/// Smoothness of quotients of abelian surfaces by G(m,p)
#[derive(Debug, Parser)]
#[command(name = "smoothquot", version)]
struct Cli {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Torsion bound N for kernel enumeration
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..=24))]
    max_torsion: i64,
    /// Seed for the random spot-check of non-candidate points
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Points sampled per case by the spot-check (0 disables it)
    #[arg(long, global = true, default_value_t = 200)]
    spot_samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Standard,
    SumZero,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every case and kernel and compare against the published verdicts
    Classify {
        /// Also run G(3,3) and G(6,6) on E x E with complex multiplication
        #[arg(long)]
        cm_standard: bool,
    },
    /// Check a single case
    Case {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
        /// `trivial`, `#k` (k-th enumerated kernel), or generators like `1/2,1/2,1/2,1/2;...`
        #[arg(long, default_value = "trivial")]
        delta: String,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
    },
    /// List the admissible kernels of a case
    Deltas {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
    },
    /// Verify the conjugation identities used to identify isomorphic pairs
    Identities,
    /// Verify the order-16 group over Z[i]
    ExampleC,
    /// Compute the branch locus components for the order-16 example
    Branch,
    /// Run a case described in a TOML file
    Custom {
        #[arg(long)]
        config: std::path::PathBuf,
    },
}

fn model_for(m: u32, p: u32, arg: Option<ModelArg>) -> SurfaceModel {
    match arg {
        Some(ModelArg::Standard) => SurfaceModel::Standard,
        Some(ModelArg::SumZero) => SurfaceModel::SumZero,
        None => default_model(m, p),
    }
}

fn emit_classification(r: &ClassificationReport, format: Format) -> CliResult<i32> {
    print!("{}", report::render_classification(r, format)?);
    Ok(r.exit_code())
}

fn run(cli: Cli) -> CliResult<i32> {
    let format = if cli.json {
        Format::Json
    } else {
        Format::Human
    };
    let mut opts = ClassifyOptions {
        max_torsion: cli.max_torsion,
        seed: cli.seed,
        spot_samples: cli.spot_samples,
        ..Default::default()
    };
    match cli.command {
        Command::Classify { cm_standard } => {
            opts.cm_standard = cm_standard;
            emit_classification(&run_classification(&opts)?, format)
        }
        Command::Case { m, p, delta, model } => {
            let spec = DeltaSpec::parse(&delta)?;
            let r = run_case(m, p, model_for(m, p, model), &spec, &opts)?;
            emit_classification(&r, format)
        }
        Command::Deltas { m, p, model } => {
            let d = list_deltas(m, p, model_for(m, p, model), opts.max_torsion)?;
            print!("{}", report::render_deltas(&d, format)?);
            Ok(0)
        }
        Command::Identities => {
            let checks = verify_matrix_identities()?;
            print!(
                "{}",
                report::render_checks("conjugation identities", &checks, format)?
            );
            Ok(if all_passed(&checks) { 0 } else { 1 })
        }
        Command::ExampleC => {
            let checks = verify_example_c()?;
            print!(
                "{}",
                report::render_checks("order-16 group over Z[i]", &checks, format)?
            );
            Ok(if all_passed(&checks) { 0 } else { 1 })
        }
        Command::Branch => {
            let r = branch_locus_report()?;
            print!("{}", report::render_branch(&r, format)?);
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Custom { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?;
            let result = CustomCase::from_toml(&text)?.run()?;
            let r = ClassificationReport {
                schema_version: smoothquot_cli::classify::SCHEMA_VERSION,
                max_torsion: opts.max_torsion,
                cases: vec![result],
                rejected: vec![],
                violations: vec![],
            };
            emit_classification(&r, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
