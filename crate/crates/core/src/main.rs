use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use derham::scenario::{
    builtin_source, run_scenario, RunOptions, Scenario, ScenarioError, BUILTINS, DEFAULT_SEED,
};
use derham::simplex_forms::DEFAULT_QUADRATURE_ORDER;

/// Runs verification scenarios for the comparison between algebraic de Rham forms and
/// singular cochains.
#[derive(Debug, Parser)]
#[command(name = "derham", version)]
struct Cli {
    /// Scenario file (TOML).
    #[arg(long, conflicts_with = "builtin", required_unless_present_any = ["builtin", "list"])]
    scenario: Option<PathBuf>,
    /// Name of a builtin scenario.
    #[arg(long)]
    builtin: Option<String>,
    /// Run only the checks with this name or kind; may be repeated.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Override the weight truncation of every cohomology computation.
    #[arg(long)]
    max_weight: Option<u32>,
    /// Gauss–Legendre points per direction for the numeric lane.
    #[arg(long, default_value_t = DEFAULT_QUADRATURE_ORDER)]
    quad_order: usize,
    /// Absolute tolerance overriding the per-check defaults.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// List the builtin scenarios and exit.
    #[arg(long)]
    list: bool,
}

fn load(cli: &Cli) -> Result<Scenario, ScenarioError> {
    match (&cli.builtin, &cli.scenario) {
        (Some(name), _) => Scenario::parse(builtin_source(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ScenarioError::Parse(format!("{}: {e}", path.display())))?;
            Scenario::parse(&text)
        }
        (None, None) => unreachable!("clap requires a scenario"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for (name, description, _) in BUILTINS {
            println!("{name:20} {description}");
        }
        return ExitCode::SUCCESS;
    }
    if cli.quad_order == 0 {
        eprintln!("error: --quad-order must be positive");
        return ExitCode::from(2);
    }
    let scenario = match load(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let options = RunOptions {
        only: (!cli.checks.is_empty()).then(|| cli.checks.clone()),
        max_weight: cli.max_weight,
        quad_order: cli.quad_order,
        tolerance: cli.tolerance,
        seed: cli.seed,
    };
    if let Some(only) = &options.only {
        let unknown: Vec<_> = only
            .iter()
            .filter(|o| {
                !scenario
                    .checks
                    .iter()
                    .any(|c| &c.name == *o || c.kind.label() == o.as_str())
            })
            .collect();
        if !unknown.is_empty() {
            eprintln!("error: no check named or of kind {unknown:?}");
            return ExitCode::from(2);
        }
    }
    let report = run_scenario(&scenario, &options);
    print!("{}", report.summary_table());
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
