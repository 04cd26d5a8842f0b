//! `holder-im`: fit plausibility intervals and run the simulation studies.

mod format;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holder_im::harness::{
    self, coverage_estimate, fit_curve, CoverageMethod, Design, ExperimentConfig, Truth,
};
use holder_im::{Dataset, HolderConfig, OptimizerOptions};

use crate::format::sig;

const DIGITS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

/// Domain errors from the fit path, with dataset rows reported as file lines.
fn domain_error(err: holder_im::Error) -> CliError {
    use holder_im::Error as E;
    let line = |row: usize| row + 2;
    CliError::Domain(match err {
        E::DuplicateDesignPoint { t, first, second } => {
            format!(
                "duplicate design point t={t} on lines {} and {}",
                line(first),
                line(second)
            )
        }
        E::NonFinite { row } => format!("non-finite value on line {}", line(row)),
        other => other.to_string(),
    })
}

#[derive(Parser, Debug)]
#[command(
    name = "holder-im",
    version,
    about = "Plausibility intervals for Hölder-constrained normal means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit intervals for every row of a `t,y` CSV (empty y = unobserved).
    Fit {
        /// Input CSV, or `-` for stdin.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Width comparison studies.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
        /// Design points per trial (n-point only).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Defaults to 100 for two-point and 500 for n-point.
        #[arg(long)]
        trials: Option<usize>,
        /// Report only this 0-based point (n-point only); all points otherwise.
        #[arg(long)]
        point: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Empirical coverage of each interval construction.
    Coverage {
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// 0-based target point; defaults to n/2.
        #[arg(long)]
        point: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Hölder constant.
    #[arg(
        long = "M",
        visible_alias = "m",
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    m: f64,
    /// Hölder exponent.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    gamma: f64,
    /// Noise standard deviation.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma: f64,
    /// Miscoverage level.
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    alpha: f64,
}

impl ModelArgs {
    fn config(&self) -> Result<HolderConfig, CliError> {
        HolderConfig::new(self.m, self.gamma, self.sigma, self.alpha)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args, Debug)]
struct SimArgs {
    #[arg(long, default_value_t = 1234)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = DesignArg::Uniform)]
    design: DesignArg,
    #[arg(long, value_enum, default_value_t = TruthArg::Sqrt)]
    truth: TruthArg,
    /// Extra seeded optimizer restarts.
    #[arg(long, default_value_t = 0)]
    restarts: usize,
}

impl SimArgs {
    fn experiment(&self, n: usize, trials: usize, cfg: HolderConfig) -> ExperimentConfig {
        let mut exp = ExperimentConfig::new(n, trials, self.seed, cfg)
            .with_design(match self.design {
                DesignArg::Uniform => Design::UniformRandom,
                DesignArg::Equispaced => Design::EquallySpaced,
            })
            .with_truth(match self.truth {
                TruthArg::Sqrt => Truth::Sqrt,
                TruthArg::Zero => Truth::Zero,
            });
        exp.optimizer = OptimizerOptions {
            restarts: self.restarts,
            seed: self.seed,
            ..exp.optimizer
        };
        exp
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExperimentKind {
    TwoPoint,
    NPoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DesignArg {
    Uniform,
    Equispaced,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TruthArg {
    Sqrt,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    OnePoint,
    Marginal,
    Partial,
    #[value(name = "cond-1pt")]
    Cond1pt,
    CondAll,
}

impl MethodArg {
    fn methods(self, n: usize) -> Vec<CoverageMethod> {
        match self {
            MethodArg::All if n < 2 => vec![CoverageMethod::OnePoint, CoverageMethod::Marginal],
            MethodArg::All => CoverageMethod::ALL.to_vec(),
            MethodArg::OnePoint => vec![CoverageMethod::OnePoint],
            MethodArg::Marginal => vec![CoverageMethod::Marginal],
            MethodArg::Partial => vec![CoverageMethod::PartialConditioning],
            MethodArg::Cond1pt => vec![CoverageMethod::ConditionalNearest],
            MethodArg::CondAll => vec![CoverageMethod::ConditionalAll],
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HOLDER_IM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "HOLDER_IM_THREADS must be a non-negative integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_fit(input: &Path, output: Option<&PathBuf>, cfg: HolderConfig) -> Result<(), CliError> {
    let points = io::read_points(input)?;
    let data = Dataset::new(points).map_err(domain_error)?;
    let curve = fit_curve(&data, &cfg).map_err(domain_error)?;
    let rows: Vec<Vec<String>> = data
        .points()
        .iter()
        .zip(&curve)
        .map(|(p, (_, iv))| {
            vec![
                p.t.to_string(),
                p.y.map(|y| y.to_string()).unwrap_or_default(),
                sig(iv.lower, DIGITS),
                sig(iv.upper, DIGITS),
            ]
        })
        .collect();
    let mut out = io::open_output(output.map(PathBuf::as_path))?;
    io::write_rows(&mut out, "t,y,lower,upper", &rows)
}

fn cmd_experiment(
    kind: ExperimentKind,
    exp: ExperimentConfig,
    output: Option<&PathBuf>,
) -> Result<(), CliError> {
    let domain = |e: holder_im::Error| CliError::Domain(e.to_string());
    let (header, rows): (&str, Vec<Vec<String>>) = match kind {
        ExperimentKind::TwoPoint => {
            let records = harness::run_two_point(&exp).map_err(domain)?;
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.trial.to_string(),
                        sig(r.bounds[0], DIGITS),
                        sig(r.widths.marginal, DIGITS),
                        sig(r.widths.mixture, DIGITS),
                        sig(r.widths.cond_nearest, DIGITS),
                    ]
                })
                .collect();
            ("trial,B,marginal,mixture,conservative", rows)
        }
        ExperimentKind::NPoint => {
            let records = harness::run_n_point(&exp).map_err(domain)?;
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.trial.to_string(),
                        r.point_index.to_string(),
                        sig(r.bounds.iter().sum(), DIGITS),
                        sig(r.widths.marginal, DIGITS),
                        sig(r.widths.mixture, DIGITS),
                        sig(r.widths.cond_nearest, DIGITS),
                        sig(r.widths.cond_all, DIGITS),
                        u8::from(r.covered.mixture).to_string(),
                    ]
                })
                .collect();
            (
                "trial,point,B_sum,marginal,mixture,cond_1pt,cond_all,covered_mixture",
                rows,
            )
        }
    };
    let mut out = io::open_output(output.map(PathBuf::as_path))?;
    io::write_rows(&mut out, header, &rows)
}

fn cmd_coverage(
    methods: &[CoverageMethod],
    exp: ExperimentConfig,
    output: Option<&PathBuf>,
) -> Result<(), CliError> {
    let alpha = exp.cfg.alpha();
    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let est = coverage_estimate(&exp, method).map_err(|e| CliError::Domain(e.to_string()))?;
        rows.push(vec![
            method.name().to_string(),
            sig(est.rate, DIGITS),
            sig(est.se, DIGITS),
            est.trials.to_string(),
            sig(alpha, DIGITS),
        ]);
    }
    let mut out = io::open_output(output.map(PathBuf::as_path))?;
    io::write_rows(&mut out, "method,rate,se,trials,alpha", &rows)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit {
            input,
            output,
            model,
        } => {
            let cfg = model.config()?;
            cmd_fit(&input, output.as_ref(), cfg)
        }
        Command::Experiment {
            kind,
            n,
            trials,
            point,
            output,
            sim,
            model,
        } => {
            let cfg = model.config()?;
            let (n, trials) = match kind {
                ExperimentKind::TwoPoint => (2, trials.unwrap_or(100)),
                ExperimentKind::NPoint => (n, trials.unwrap_or(500)),
            };
            if point.is_some_and(|p| p >= n) {
                return Err(CliError::Usage(format!("--point must be below n={n}")));
            }
            let exp = sim.experiment(n, trials, cfg).with_target(point);
            configure_threads()?;
            cmd_experiment(kind, exp, output.as_ref())
        }
        Command::Coverage {
            method,
            n,
            trials,
            point,
            output,
            sim,
            model,
        } => {
            let cfg = model.config()?;
            if point.is_some_and(|p| p >= n) {
                return Err(CliError::Usage(format!("--point must be below n={n}")));
            }
            let exp = sim.experiment(n, trials, cfg).with_target(point);
            configure_threads()?;
            cmd_coverage(&method.methods(n), exp, output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("holder-im: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
