//! Seeded Monte Carlo experiments comparing interval widths and coverage.
//!
//! Each trial draws its own data from a ChaCha8 stream selected by
//! `(seed, trial index)`, so results are identical whether trials run
//! sequentially or in parallel.

mod curve;

pub use curve::{fit_curve, CurveFit};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gauss::phi_inv;
use crate::im_core::{one_point_region, Method, PlausibilityInterval};
use crate::model::{neighbor_view, Dataset, HolderConfig};
use crate::partial_cond::{
    baseline_from_view, interval_from_weights, optimize_weights, two_point_optimal, Baseline,
    MixingWeights, OptimizerOptions,
};

/// The true mean function used to simulate responses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    /// `ϑ(t) = √t`
    Sqrt,
    /// `ϑ(t) = 0`
    Zero,
}

impl Truth {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Truth::Sqrt => t.sqrt(),
            Truth::Zero => 0.0,
        }
    }
}

/// How design points are placed in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Design {
    /// Sorted iid uniform draws.
    UniformRandom,
    /// `t_i = i/n`, `i = 0, …, n−1`.
    EquallySpaced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_points: usize,
    pub trials: usize,
    pub seed: u64,
    pub truth: Truth,
    pub design: Design,
    pub cfg: HolderConfig,
    /// Restrict each trial to one target point (canonical index). `None`
    /// evaluates every point in `run_n_point`; `coverage_estimate` then uses
    /// the middle point `n/2`.
    pub target: Option<usize>,
    pub optimizer: OptimizerOptions,
}

impl ExperimentConfig {
    pub fn new(n_points: usize, trials: usize, seed: u64, cfg: HolderConfig) -> Self {
        Self {
            n_points,
            trials,
            seed,
            truth: Truth::Sqrt,
            design: Design::UniformRandom,
            cfg,
            target: None,
            optimizer: OptimizerOptions::default(),
        }
    }

    pub fn with_truth(mut self, truth: Truth) -> Self {
        self.truth = truth;
        self
    }

    pub fn with_design(mut self, design: Design) -> Self {
        self.design = design;
        self
    }

    pub fn with_target(mut self, target: Option<usize>) -> Self {
        self.target = target;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_points == 0 {
            return Err(Error::InvalidConfig("n_points must be >= 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if let Some(t) = self.target {
            if t >= self.n_points {
                return Err(Error::InvalidConfig(format!(
                    "target point {t} out of range for {} points",
                    self.n_points
                )));
            }
        }
        Ok(())
    }

    fn targets(&self) -> Vec<usize> {
        match self.target {
            Some(t) => vec![t],
            None => (0..self.n_points).collect(),
        }
    }
}

/// Widths (response units) of each construction at one point of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodWidths {
    pub marginal: f64,
    pub mixture: f64,
    pub cond_nearest: f64,
    pub cond_all: f64,
}

/// Whether each construction covered the true mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodCoverage {
    pub marginal: bool,
    pub mixture: bool,
    pub cond_nearest: bool,
    pub cond_all: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub point_index: usize,
    pub t: f64,
    /// Neighbor bounds `M|t_j − t_i|^γ`, nearest first (response units).
    pub bounds: Vec<f64>,
    pub widths: MethodWidths,
    pub covered: MethodCoverage,
}

/// Independent uniform in the open interval `(0, 1)`.
fn open_uniform(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.random::<u64>() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Draws the dataset of one trial.
pub fn simulate_trial(expcfg: &ExperimentConfig, trial: usize) -> Result<Dataset> {
    let mut rng = trial_rng(expcfg.seed, trial);
    let n = expcfg.n_points;
    let mut t: Vec<f64> = match expcfg.design {
        Design::UniformRandom => (0..n).map(|_| open_uniform(&mut rng)).collect(),
        Design::EquallySpaced => (0..n).map(|i| i as f64 / n as f64).collect(),
    };
    t.sort_by(f64::total_cmp);
    let sigma = expcfg.cfg.sigma();
    let y: Vec<f64> = t
        .iter()
        .map(|&ti| {
            let u = phi_inv(open_uniform(&mut rng)).expect("open uniform lies in (0, 1)");
            expcfg.truth.eval(ti) + sigma * u
        })
        .collect();
    Dataset::observed(&t, &y)
}

fn run_trials<F>(expcfg: &ExperimentConfig, per_trial: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(usize) -> Result<Vec<TrialRecord>> + Sync + Send,
{
    let wrap = |trial: usize| {
        per_trial(trial).map_err(|e| Error::Trial {
            trial,
            source: Box::new(e),
        })
    };
    #[cfg(feature = "parallel")]
    let chunks: Vec<Result<Vec<TrialRecord>>> = {
        use rayon::prelude::*;
        (0..expcfg.trials).into_par_iter().map(wrap).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Result<Vec<TrialRecord>>> = (0..expcfg.trials).map(wrap).collect();

    let mut records = Vec::new();
    for chunk in chunks {
        records.extend(chunk?);
    }
    Ok(records)
}

/// Two observations per trial; the target is the point with the larger `t`.
/// The mixture uses the closed-form optimal weight.
pub fn run_two_point(expcfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    expcfg.validate()?;
    if expcfg.n_points != 2 {
        return Err(Error::InvalidConfig(format!(
            "two-point experiment needs n_points = 2, got {}",
            expcfg.n_points
        )));
    }
    let cfg = expcfg.cfg;
    let target = expcfg.target.unwrap_or(1);
    run_trials(expcfg, |trial| {
        let data = simulate_trial(expcfg, trial)?;
        let view = neighbor_view(&data, &cfg, target)?;
        let normalized = view.normalized(cfg.sigma());
        let y = data.points()[target]
            .y
            .expect("simulated points are observed");
        let t = data.points()[target].t;
        let truth = expcfg.truth.eval(t);

        let (lambda_hat, _) = two_point_optimal(normalized.bounds[0], cfg.z());
        let mixture = interval_from_weights(
            &normalized,
            y,
            &cfg,
            &MixingWeights::new(vec![lambda_hat])?,
            Method::PartialConditioning,
        )?;
        let marginal = one_point_region(y, &cfg);
        let conservative = baseline_from_view(&normalized, y, &cfg, Baseline::ConditionalNearest)?;
        Ok(vec![TrialRecord {
            trial,
            point_index: target,
            t,
            bounds: view.bounds,
            widths: MethodWidths {
                marginal: marginal.width(),
                mixture: mixture.width(),
                cond_nearest: conservative.width(),
                cond_all: conservative.width(),
            },
            covered: MethodCoverage {
                marginal: marginal.contains(truth),
                mixture: mixture.contains(truth),
                cond_nearest: conservative.contains(truth),
                cond_all: conservative.contains(truth),
            },
        }])
    })
}

/// The four constructions at one point of a simulated dataset.
struct PointIntervals {
    marginal: PlausibilityInterval,
    mixture: PlausibilityInterval,
    cond_nearest: PlausibilityInterval,
    cond_all: PlausibilityInterval,
}

fn point_intervals(
    data: &Dataset,
    cfg: &HolderConfig,
    i: usize,
    opts: &OptimizerOptions,
) -> Result<(PointIntervals, Vec<f64>)> {
    let view = neighbor_view(data, cfg, i)?;
    let normalized = view.normalized(cfg.sigma());
    let y = data.points()[i].y.expect("simulated points are observed");
    let (weights, _) = optimize_weights(&normalized, cfg.z(), opts)?;
    let intervals = PointIntervals {
        marginal: baseline_from_view(&normalized, y, cfg, Baseline::Marginal)?,
        mixture: interval_from_weights(&normalized, y, cfg, &weights, Method::PartialConditioning)?,
        cond_nearest: baseline_from_view(&normalized, y, cfg, Baseline::ConditionalNearest)?,
        cond_all: baseline_from_view(&normalized, y, cfg, Baseline::ConditionalAll)?,
    };
    Ok((intervals, view.bounds))
}

/// `n ≥ 3` observations per trial; every target point gets the optimized
/// interval and the three baselines.
pub fn run_n_point(expcfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    expcfg.validate()?;
    if expcfg.n_points < 3 {
        return Err(Error::InvalidConfig(format!(
            "n-point experiment needs n_points >= 3, got {}",
            expcfg.n_points
        )));
    }
    let cfg = expcfg.cfg;
    let targets = expcfg.targets();
    run_trials(expcfg, |trial| {
        let data = simulate_trial(expcfg, trial)?;
        targets
            .iter()
            .map(|&i| {
                let (iv, bounds) = point_intervals(&data, &cfg, i, &expcfg.optimizer)?;
                let t = data.points()[i].t;
                let truth = expcfg.truth.eval(t);
                Ok(TrialRecord {
                    trial,
                    point_index: i,
                    t,
                    bounds,
                    widths: MethodWidths {
                        marginal: iv.marginal.width(),
                        mixture: iv.mixture.width(),
                        cond_nearest: iv.cond_nearest.width(),
                        cond_all: iv.cond_all.width(),
                    },
                    covered: MethodCoverage {
                        marginal: iv.marginal.contains(truth),
                        mixture: iv.mixture.contains(truth),
                        cond_nearest: iv.cond_nearest.contains(truth),
                        cond_all: iv.cond_all.contains(truth),
                    },
                })
            })
            .collect()
    })
}

/// Constructions whose coverage can be estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverageMethod {
    OnePoint,
    Marginal,
    PartialConditioning,
    ConditionalNearest,
    ConditionalAll,
}

impl CoverageMethod {
    pub const ALL: [CoverageMethod; 5] = [
        CoverageMethod::OnePoint,
        CoverageMethod::Marginal,
        CoverageMethod::PartialConditioning,
        CoverageMethod::ConditionalNearest,
        CoverageMethod::ConditionalAll,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoverageMethod::OnePoint => "one-point",
            CoverageMethod::Marginal => "marginal",
            CoverageMethod::PartialConditioning => "partial",
            CoverageMethod::ConditionalNearest => "cond-1pt",
            CoverageMethod::ConditionalAll => "cond-all",
        }
    }

    fn needs_neighbors(&self) -> bool {
        !matches!(self, CoverageMethod::OnePoint | CoverageMethod::Marginal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEstimate {
    pub rate: f64,
    /// `√(rate(1 − rate)/trials)`
    pub se: f64,
    pub trials: usize,
}

/// Fraction of trials whose interval at the target point contains the true
/// mean.
pub fn coverage_estimate(
    expcfg: &ExperimentConfig,
    method: CoverageMethod,
) -> Result<CoverageEstimate> {
    expcfg.validate()?;
    if method.needs_neighbors() && expcfg.n_points < 2 {
        return Err(Error::InvalidConfig(format!(
            "method {} needs n_points >= 2",
            method.name()
        )));
    }
    let cfg = expcfg.cfg;
    let target = expcfg.target.unwrap_or(expcfg.n_points / 2);

    let hit = |trial: usize| -> Result<bool> {
        let data = simulate_trial(expcfg, trial)?;
        let y = data.points()[target]
            .y
            .expect("simulated points are observed");
        let truth = expcfg.truth.eval(data.points()[target].t);
        let iv = match method {
            CoverageMethod::OnePoint => one_point_region(y, &cfg),
            CoverageMethod::Marginal => {
                crate::partial_cond::baseline_interval(&data, &cfg, target, Baseline::Marginal)?
            }
            CoverageMethod::PartialConditioning => {
                crate::partial_cond::fit_point(&data, &cfg, target, &expcfg.optimizer)?.interval
            }
            CoverageMethod::ConditionalNearest => crate::partial_cond::baseline_interval(
                &data,
                &cfg,
                target,
                Baseline::ConditionalNearest,
            )?,
            CoverageMethod::ConditionalAll => crate::partial_cond::baseline_interval(
                &data,
                &cfg,
                target,
                Baseline::ConditionalAll,
            )?,
        };
        Ok(iv.contains(truth))
    };
    let wrap = |trial: usize| {
        hit(trial).map_err(|e| Error::Trial {
            trial,
            source: Box::new(e),
        })
    };

    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<bool>> = {
        use rayon::prelude::*;
        (0..expcfg.trials).into_par_iter().map(wrap).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<bool>> = (0..expcfg.trials).map(wrap).collect();

    let mut covered = 0usize;
    for outcome in outcomes {
        covered += usize::from(outcome?);
    }
    let trials = expcfg.trials;
    let rate = covered as f64 / trials as f64;
    Ok(CoverageEstimate {
        rate,
        se: (rate * (1.0 - rate) / trials as f64).sqrt(),
        trials,
    })
}

/// Median of a slice (mean of the middle pair for even lengths).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len().is_multiple_of(2) {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    })
}
