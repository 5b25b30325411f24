//! Command-line entry point: one subcommand per experiment, CSV or JSON out.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use harness::{
    bounds_experiment, chain_experiment, classes_report, compound_experiment, ltn_iid, ltn_niid,
    parse_family, parse_grid_f64, parse_grid_usize, rate_experiment, ExperimentReport,
};
use thinlaw::{materialize, summary_stats, Error, FamilySpec, Pmf, Result};

#[derive(Parser)]
#[command(
    name = "thinlab",
    about = "Exact thinning experiments: laws of thin numbers, rates, and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Source family, e.g. `bernoulli:0.5`, `binomial:3:0.4`, `geometric:1`,
    /// `negbin:2:1.5`, `poisson:2`, `point:2`. Repeatable for `ltn-niid`.
    #[arg(long = "family")]
    family: Vec<String>,

    /// Empirical source PMF as `{"probs": [...], "tail": t}` JSON.
    #[arg(long = "pmf-file")]
    pmf_file: Option<PathBuf>,

    /// Truncation tail budget for materializing analytic families.
    #[arg(long = "eps-tail", default_value_t = 1e-14)]
    eps_tail: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long = "out")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long = "format", default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// I.i.d. law of thin numbers: T_{1/n}(P^{*n}) vs Po(mean) across n.
    Ltn {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated n grid, e.g. `2,4,8,16`.
        #[arg(long = "n")]
        n_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Non-identical weak law: families cycled to length n, one row per n.
    LtnNiid {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long = "n")]
        n_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// KL decay rate n^kappa D for ultra bounded sources.
    Rate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long = "n")]
        n_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Chi-square decay along the thinning Markov chain.
    Chain {
        #[command(flatten)]
        source: SourceArgs,
        /// Chain rate parameter; defaults to the source mean.
        #[arg(long = "lambda")]
        lambda: Option<f64>,
        /// Comma-separated time grid, e.g. `0,0.5,1,2`.
        #[arg(long = "t-grid")]
        t_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Divergences against their closed-form bounds across n.
    Bounds {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long = "n")]
        n_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compound law of thin numbers with compounding distribution Q.
    Compound {
        #[command(flatten)]
        source: SourceArgs,
        /// Compounding distribution Q (zero mass at 0) as PMF JSON.
        #[arg(long = "compounder")]
        compounder: PathBuf,
        #[arg(long = "n")]
        n_grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Class certificates (Bernoulli sum, ULC, UB, PB) for a source.
    Classes {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn load_pmf(path: &PathBuf) -> Result<Pmf> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::ParameterDomain(format!("cannot read {}: {e}", path.display())))?;
    Pmf::from_json(&text)
}

/// Resolves `--family`/`--pmf-file` into a list of source specs.
fn sources(args: &SourceArgs) -> Result<Vec<FamilySpec>> {
    let mut specs = Vec::new();
    for text in &args.family {
        specs.push(parse_family(text)?);
    }
    if let Some(path) = &args.pmf_file {
        specs.push(FamilySpec::Empirical(load_pmf(path)?));
    }
    if specs.is_empty() {
        return Err(Error::ParameterDomain("give --family or --pmf-file".into()));
    }
    Ok(specs)
}

fn single_source(args: &SourceArgs) -> Result<FamilySpec> {
    let mut specs = sources(args)?;
    if specs.len() > 1 {
        return Err(Error::ParameterDomain(
            "this experiment takes exactly one source".into(),
        ));
    }
    Ok(specs.remove(0))
}

fn emit(report: &ExperimentReport, output: &OutputArgs) -> Result<()> {
    let text = match output.format.as_str() {
        "json" => report.to_json(),
        _ => report.to_csv(),
    };
    emit_text(&text, output)
}

fn emit_text(text: &str, output: &OutputArgs) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::ParameterDomain(format!("cannot write {}: {e}", path.display()))),
        None => {
            // A closed pipe (e.g. piping into `head`) is not an error.
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ltn {
            source,
            n_grid,
            output,
        } => {
            let spec = single_source(&source)?;
            let grid = parse_grid_usize(&n_grid)?;
            emit(&ltn_iid(&spec, &grid, source.eps_tail)?, &output)
        }
        Command::LtnNiid {
            source,
            n_grid,
            output,
        } => {
            let specs = sources(&source)?;
            let grid = parse_grid_usize(&n_grid)?;
            let mut merged: Option<ExperimentReport> = None;
            for &n in &grid {
                let cycled: Vec<FamilySpec> =
                    (0..n).map(|i| specs[i % specs.len()].clone()).collect();
                let one = ltn_niid(&cycled, source.eps_tail)?;
                match &mut merged {
                    None => merged = Some(one),
                    Some(r) => r.push_row(one.rows[0].clone()),
                }
            }
            emit(&merged.expect("nonempty grid"), &output)
        }
        Command::Rate {
            source,
            n_grid,
            output,
        } => {
            let spec = single_source(&source)?;
            let grid = parse_grid_usize(&n_grid)?;
            emit(&rate_experiment(&spec, &grid, source.eps_tail)?, &output)
        }
        Command::Chain {
            source,
            lambda,
            t_grid,
            output,
        } => {
            let spec = single_source(&source)?;
            let grid = parse_grid_f64(&t_grid)?;
            let lambda = match lambda {
                Some(l) => l,
                None => summary_stats(&materialize(&spec, source.eps_tail)?).0,
            };
            emit(
                &chain_experiment(&spec, lambda, &grid, source.eps_tail)?,
                &output,
            )
        }
        Command::Bounds {
            source,
            n_grid,
            output,
        } => {
            let spec = single_source(&source)?;
            let grid = parse_grid_usize(&n_grid)?;
            emit(&bounds_experiment(&spec, &grid, source.eps_tail)?, &output)
        }
        Command::Compound {
            source,
            compounder,
            n_grid,
            output,
        } => {
            let spec = single_source(&source)?;
            let q = load_pmf(&compounder)?;
            let grid = parse_grid_usize(&n_grid)?;
            emit(
                &compound_experiment(&spec, &q, &grid, source.eps_tail)?,
                &output,
            )
        }
        Command::Classes { source, output } => {
            let spec = single_source(&source)?;
            emit_text(&classes_report(&spec, source.eps_tail)?, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ Error::HypothesisViolation { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
