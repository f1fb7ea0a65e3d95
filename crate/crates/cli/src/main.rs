//! `hcs`: exact verification runner for differential (2-)crossed modules and
//! the higher Chern–Simons identities built on them.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hcs_cli::{run, CommandKind, RunConfig, Theory};

#[derive(Parser)]
#[command(
    name = "hcs",
    version,
    about = "Exact symbolic checks for crossed-module gauge theory",
    long_about = "Loads a built-in example module or a JSON module document, runs the \
                  requested verification suite with exact rational arithmetic, and emits a \
                  deterministic JSON report.  Exit status is 0 only when every non-mutation \
                  check is exactly zero."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural axioms and pairing laws of a module.
    Validate(CommonArgs),
    /// Run the differential-calculus, Bianchi, and gauge-covariance suites.
    Identities(CommonArgs),
    /// Run the Chern-form suites: closure, invariance, transgression, actions.
    Chern(CommonArgs),
    /// Solve for invariant pairings and validate every basis element.
    #[command(name = "invariant-forms")]
    InvariantForms(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Cs,
    #[value(name = "2cs")]
    TwoCs,
    #[value(name = "3cs")]
    ThreeCs,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::Cs => Theory::Cs,
            TheoryArg::TwoCs => Theory::TwoCs,
            TheoryArg::ThreeCs => Theory::ThreeCs,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Built-in example name or path to a JSON module document.
    #[arg(long)]
    module: String,
    /// Number of base coordinates (1..10).
    #[arg(long = "nvars", default_value_t = 4)]
    n_vars: usize,
    /// Seed for the deterministic trial generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of randomized trials per check.
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Maximum total degree of sampled coefficient polynomials.
    #[arg(long = "max-poly-degree", default_value_t = 2)]
    max_poly_degree: u32,
    /// Sampled integer coefficients lie in [-bound, bound].
    #[arg(long = "coeff-bound", default_value_t = 3)]
    coeff_bound: i64,
    /// Theory tier for the chern suites (default: deepest the pairing supports).
    #[arg(long, value_enum)]
    theory: Option<TheoryArg>,
    /// Append expected-violation records from single-entry mutations.
    #[arg(long)]
    mutate: bool,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn to_config(command: CommandKind, args: CommonArgs) -> RunConfig {
    RunConfig {
        command,
        module: args.module,
        n_vars: args.n_vars,
        seed: args.seed,
        trials: args.trials,
        max_poly_degree: args.max_poly_degree,
        coeff_bound: args.coeff_bound,
        theory: args.theory.map(Theory::from),
        mutate: args.mutate,
        out: args.out,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.command {
        Cmd::Validate(a) => to_config(CommandKind::Validate, a),
        Cmd::Identities(a) => to_config(CommandKind::Identities, a),
        Cmd::Chern(a) => to_config(CommandKind::Chern, a),
        Cmd::InvariantForms(a) => to_config(CommandKind::InvariantForms, a),
    };
    let report = match run(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = report.to_json();
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{rendered}");
    }
    if report.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
