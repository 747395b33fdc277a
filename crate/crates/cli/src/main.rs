//! `springer`: fixed points of components of the type-A equivalued affine
//! Springer fiber, from the command line.
//!
//! Exit codes: 0 every check passed, 1 a mathematical mismatch, 2 bad
//! usage or configuration, 3 inconclusive within the budget.

mod commands;
mod error;
mod progress;
mod report;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use springer_core::certificate::{DEFAULT_SEED, DEFAULT_TRIALS, SYMBOLIC_LIMIT};

use commands::{MethodChoice, RunConfig};
use error::CliError;
use progress::Progress;
use report::Report;

#[derive(Parser)]
#[command(name = "springer", version, about = "Torus fixed points of affine Springer fiber components")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Rank of GL_n.
    #[arg(long)]
    n: usize,
    /// Master seed for every random choice.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random evaluations per determinant or lattice sample.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Include wall-clock timings in the report (makes it nondeterministic).
    #[arg(long)]
    timings: bool,
    /// Suppress progress events on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Clone)]
struct MethodArgs {
    /// Methods to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    method: Vec<MethodChoice>,
    /// Lattice truncation P for the oracle.
    #[arg(long)]
    precision: Option<i64>,
    /// Largest symbolic determinant attempted.
    #[arg(long, default_value_t = SYMBOLIC_LIMIT)]
    symbolic_limit: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the fundamental box with lengths and vertex images.
    EnumerateF {
        #[command(flatten)]
        common: Common,
        /// Scan window; the result is checked against twice the window.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Fixed points of the component of one element of the box.
    FixedPoints {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        methods: MethodArgs,
        /// Box element: `perm=[..];trans=[..]` or a word like `s0 s1`.
        #[arg(long)]
        x: String,
        /// Restrict the per-candidate report to this element.
        #[arg(long)]
        y: Option<String>,
        /// Flip one verdict to test the mismatch path.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Check the fixed points of every component against the Bruhat interval.
    VerifyTheorem {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        methods: MethodArgs,
        /// Stop after this many seconds and flag the report as partial.
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Flip one verdict to test the mismatch path.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Run the matrix identity suites at seeded spectral parameters.
    Identities {
        #[command(flatten)]
        common: Common,
    },
    /// Draw the alcove picture as SVG.
    AlcoveSvg {
        #[arg(long)]
        n: usize,
        /// Highlight the fixed points of this box element.
        #[arg(long)]
        x: Option<String>,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

fn config(common: &Common, methods: Option<&MethodArgs>) -> RunConfig {
    RunConfig {
        n: common.n,
        methods: methods.map_or_else(|| vec![MethodChoice::All], |m| m.method.clone()),
        seed: common.seed,
        trials: common.trials,
        precision: methods.and_then(|m| m.precision),
        json: common.json.clone(),
        svg: None,
        budget: None,
        window: None,
        symbolic_limit: methods.map_or(SYMBOLIC_LIMIT, |m| m.symbolic_limit),
        timings: common.timings,
        inject_fault: false,
    }
}

fn emit(report: &Report, json: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    match json {
        Some(p) if p == Path::new("-") => print!("{text}"),
        Some(p) => {
            fs::write(p, text)?;
            print!("{}", commands::render_text(report));
        }
        None => print!("{}", commands::render_text(report)),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let (report, json, mut progress) = match cli.command {
        Command::EnumerateF { common, window } => {
            let mut cfg = config(&common, None);
            cfg.window = window;
            cfg.validate()?;
            (commands::enumerate_f(&cfg)?, cfg.json.clone(), Progress::new("enumerate-f", !common.quiet))
        }
        Command::FixedPoints { common, methods, x, y, inject_fault } => {
            let mut cfg = config(&common, Some(&methods));
            cfg.inject_fault = inject_fault;
            cfg.validate()?;
            (commands::fixed_points(&cfg, &x, y.as_deref())?, cfg.json.clone(), Progress::new("fixed-points", !common.quiet))
        }
        Command::VerifyTheorem { common, methods, budget_seconds, inject_fault } => {
            let mut cfg = config(&common, Some(&methods));
            cfg.budget = budget_seconds.map(Duration::from_secs);
            cfg.inject_fault = inject_fault;
            cfg.validate()?;
            let mut progress = Progress::new("verify-theorem", !common.quiet);
            (commands::verify_theorem(&cfg, &mut progress)?, cfg.json.clone(), progress)
        }
        Command::Identities { common } => {
            let cfg = config(&common, None);
            cfg.validate()?;
            (commands::identities(&cfg)?, cfg.json.clone(), Progress::new("identities", !common.quiet))
        }
        Command::AlcoveSvg { n, x, svg } => {
            let mut cfg = config(&Common { n, seed: 0, trials: 1, json: None, timings: false, quiet: true }, None);
            cfg.svg = svg;
            cfg.validate()?;
            let x = x.map(|t| cfg.parse(&t)).transpose()?;
            let doc = svg::render(n, x.as_ref())?;
            match &cfg.svg {
                Some(p) => fs::write(p, doc)?,
                None => print!("{doc}"),
            }
            return Ok(0);
        }
    };
    emit(&report, json.as_deref())?;
    progress.event("finished", &[("status", report.status.name().into())]);
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
