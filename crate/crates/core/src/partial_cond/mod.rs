//! Partial-conditioning plausibility intervals.
//!
//! For a target point `i` with neighbors sorted nearest first, the unobserved
//! error `u_i` is predicted by the partial regression
//!
//! ```text
//! u_i ≈ Σ_k λ_k/(k+1) · Σ_{j≤k} v_j,     v_j = u_i − u_j,
//! ```
//!
//! whose residual is normal with standard deviation `Δ_λ`. Each `v_j` is only
//! known to lie in `[y_i − y_j ± B_j]`, so the interval is the union of the
//! predictive intervals over that box. The mixing weights `λ` live on
//! `{λ ≥ 0, Σλ ≤ 1}`; `λ = 0` recovers the marginal interval, `λ = e_1`
//! conditions on the nearest neighbor and `λ = e_m` on all of them. Weights
//! are chosen to minimize the interval width.
//!
//! Everything here works in σ-normalized units: responses and bounds divided
//! by `σ`.

mod optimizer;

pub use optimizer::{optimize_weights, project_onto_simplex, OptimizerOptions};

use crate::error::{Error, Result};
use crate::im_core::{one_point_region, Method, PlausibilityInterval};
use crate::model::{neighbor_view, Dataset, HolderConfig, NeighborView};

/// Slack allowed when checking `λ ≥ 0` and `Σλ ≤ 1`.
pub const FEASIBILITY_TOL: f64 = 1e-12;

/// Mixing weights `λ_1, …, λ_m` on the feasible simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingWeights(Vec<f64>);

impl MixingWeights {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        check_feasible(&lambda)?;
        Ok(Self(lambda))
    }

    /// The marginal choice `λ = 0`.
    pub fn zeros(m: usize) -> Self {
        Self(vec![0.0; m])
    }

    /// All weight on conditioning with the `k` nearest neighbors (1-based).
    pub fn vertex(m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m {
            return Err(Error::InfeasibleWeights(format!(
                "vertex {k} out of range 1..={m}"
            )));
        }
        let mut lambda = vec![0.0; m];
        lambda[k - 1] = 1.0;
        Ok(Self(lambda))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

fn check_feasible(lambda: &[f64]) -> Result<()> {
    if let Some((k, v)) = lambda
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < -FEASIBILITY_TOL)
    {
        return Err(Error::InfeasibleWeights(format!("lambda[{k}] = {v}")));
    }
    let total: f64 = lambda.iter().sum();
    if total > 1.0 + FEASIBILITY_TOL {
        return Err(Error::InfeasibleWeights(format!(
            "weights sum to {total} > 1"
        )));
    }
    Ok(())
}

/// Regression coefficients and residual SD induced by a set of weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveSpec {
    /// `c_j = Σ_{k≥j} λ_k/(k+1)`, the coefficient on `v_j`.
    pub center_coeff: Vec<f64>,
    /// `Δ_λ`
    pub delta: f64,
}

impl PredictiveSpec {
    pub fn new(weights: &MixingWeights) -> Self {
        let center_coeff = center_coefficients(weights.as_slice());
        let delta = variance_from_coeffs(weights.as_slice(), &center_coeff).sqrt();
        Self {
            center_coeff,
            delta,
        }
    }
}

/// Suffix sums `c_j = Σ_{k=j}^{m} λ_k/(k+1)` (1-based `j`, `k`).
pub(crate) fn center_coefficients(lambda: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; lambda.len()];
    let mut acc = 0.0;
    for idx in (0..lambda.len()).rev() {
        acc += lambda[idx] / (idx as f64 + 2.0);
        coeffs[idx] = acc;
    }
    coeffs
}

/// `1 − Σ_k λ_k k/(k+1)`, the coefficient left on `u_i` itself.
pub(crate) fn own_coefficient(lambda: &[f64]) -> f64 {
    1.0 - lambda
        .iter()
        .enumerate()
        .map(|(idx, l)| l * (idx as f64 + 1.0) / (idx as f64 + 2.0))
        .sum::<f64>()
}

fn variance_from_coeffs(lambda: &[f64], coeffs: &[f64]) -> f64 {
    let own = own_coefficient(lambda);
    own * own + coeffs.iter().map(|c| c * c).sum::<f64>()
}

/// `Δ_λ`, the standard deviation of the partial-regression residual.
pub fn delta_lambda(weights: &MixingWeights) -> f64 {
    PredictiveSpec::new(weights).delta
}

/// Full interval width `2 Σ_k λ_k/(k+1) Σ_{j≤k} B_j + 2zΔ_λ` (normalized units).
pub fn width_objective(weights: &MixingWeights, view: &NeighborView, z: f64) -> Result<f64> {
    check_dims(weights, view)?;
    let spec = PredictiveSpec::new(weights);
    let bound_term: f64 = spec
        .center_coeff
        .iter()
        .zip(&view.bounds)
        .map(|(c, b)| c * b)
        .sum();
    Ok(2.0 * bound_term + 2.0 * z * spec.delta)
}

/// Analytic gradient of [`width_objective`] with respect to `λ`.
pub fn width_gradient(weights: &MixingWeights, view: &NeighborView, z: f64) -> Result<Vec<f64>> {
    check_dims(weights, view)?;
    let lambda = weights.as_slice();
    let coeffs = center_coefficients(lambda);
    let own = own_coefficient(lambda);
    let delta = variance_from_coeffs(lambda, &coeffs).sqrt();
    assert!(delta > 0.0, "residual SD vanished on the feasible set");

    let mut grad = Vec::with_capacity(lambda.len());
    let mut bound_prefix = 0.0;
    let mut coeff_prefix = 0.0;
    for (idx, (bound, coeff)) in view.bounds.iter().zip(&coeffs).enumerate() {
        let k = idx as f64 + 1.0;
        bound_prefix += bound;
        coeff_prefix += coeff;
        let d_delta = (-(k / (k + 1.0)) * own + coeff_prefix / (k + 1.0)) / delta;
        grad.push(2.0 * (bound_prefix / (k + 1.0) + z * d_delta));
    }
    Ok(grad)
}

fn check_dims(weights: &MixingWeights, view: &NeighborView) -> Result<()> {
    if weights.len() != view.len() {
        return Err(Error::InfeasibleWeights(format!(
            "{} weights for {} neighbors",
            weights.len(),
            view.len()
        )));
    }
    Ok(())
}

/// Closed-form optimum for a single neighbor at normalized bound `bound`.
///
/// Returns `(λ̂, width)` with `λ̂ = 1 − B/√(2z² − B²)` and width
/// `B + √(2z² − B²)` when `B < z`, otherwise `(0, 2z)`.
pub fn two_point_optimal(bound: f64, z: f64) -> (f64, f64) {
    if bound < z {
        let root = (2.0 * z * z - bound * bound).sqrt();
        (1.0 - bound / root, bound + root)
    } else {
        (0.0, 2.0 * z)
    }
}

/// The union over the bound box of the predictive intervals for `λ`, mapped
/// back to response units.
///
/// `view` must already be normalized by `cfg.sigma()`.
pub fn interval_from_weights(
    normalized_view: &NeighborView,
    y_i: f64,
    cfg: &HolderConfig,
    weights: &MixingWeights,
    method: Method,
) -> Result<PlausibilityInterval> {
    check_dims(weights, normalized_view)?;
    let spec = PredictiveSpec::new(weights);
    let z = cfg.z();
    // every c_j >= 0, so the extremes sit at the box corners
    let (mut lo, mut hi) = (0.0, 0.0);
    for ((c, d), b) in spec
        .center_coeff
        .iter()
        .zip(&normalized_view.diffs)
        .zip(&normalized_view.bounds)
    {
        lo += c * (d - b);
        hi += c * (d + b);
    }
    let u_lower = lo - z * spec.delta;
    let u_upper = hi + z * spec.delta;
    let sigma = cfg.sigma();
    Ok(PlausibilityInterval {
        lower: y_i - sigma * u_upper,
        upper: y_i - sigma * u_lower,
        alpha: cfg.alpha(),
        method,
    })
}

/// An optimized interval together with the ingredients that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFit {
    pub interval: PlausibilityInterval,
    /// Empty when the point has no observed neighbor.
    pub weights: MixingWeights,
    /// Optimal width in normalized units.
    pub normalized_width: f64,
}

/// Width-minimizing partial-conditioning interval for observed point `i`.
pub fn interval_for_point(
    data: &Dataset,
    cfg: &HolderConfig,
    i: usize,
) -> Result<PlausibilityInterval> {
    fit_point(data, cfg, i, &OptimizerOptions::default()).map(|fit| fit.interval)
}

/// [`interval_for_point`] with explicit optimizer options and diagnostics.
pub fn fit_point(
    data: &Dataset,
    cfg: &HolderConfig,
    i: usize,
    opts: &OptimizerOptions,
) -> Result<PointFit> {
    let y_i = data.observed_response(i)?;
    let view = match neighbor_view(data, cfg, i) {
        Ok(view) => view.normalized(cfg.sigma()),
        Err(Error::NoNeighbors { .. }) => {
            let interval = one_point_region(y_i, cfg);
            return Ok(PointFit {
                normalized_width: interval.width() / cfg.sigma(),
                interval,
                weights: MixingWeights::zeros(0),
            });
        }
        Err(e) => return Err(e),
    };
    let (weights, normalized_width) = optimize_weights(&view, cfg.z(), opts)?;
    let interval = interval_from_weights(&view, y_i, cfg, &weights, Method::PartialConditioning)?;
    Ok(PointFit {
        interval,
        weights,
        normalized_width,
    })
}

/// Reference constructions the optimized interval is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Baseline {
    /// The point's own observation only (`λ = 0`).
    Marginal,
    /// Conservative conditioning on the nearest neighbor (`λ = e_1`).
    ConditionalNearest,
    /// Conservative conditioning on every neighbor (`λ = e_m`).
    ConditionalAll,
}

pub fn baseline_interval(
    data: &Dataset,
    cfg: &HolderConfig,
    i: usize,
    baseline: Baseline,
) -> Result<PlausibilityInterval> {
    let y_i = data.observed_response(i)?;
    if baseline == Baseline::Marginal {
        return Ok(PlausibilityInterval {
            method: Method::Marginal,
            ..one_point_region(y_i, cfg)
        });
    }
    let view = neighbor_view(data, cfg, i)?.normalized(cfg.sigma());
    baseline_from_view(&view, y_i, cfg, baseline)
}

pub(crate) fn baseline_from_view(
    normalized_view: &NeighborView,
    y_i: f64,
    cfg: &HolderConfig,
    baseline: Baseline,
) -> Result<PlausibilityInterval> {
    let m = normalized_view.len();
    let (weights, method) = match baseline {
        Baseline::Marginal => (MixingWeights::zeros(m), Method::Marginal),
        Baseline::ConditionalNearest => (
            MixingWeights::vertex(m, 1)?,
            Method::ConservativeConditional { neighbors: 1 },
        ),
        Baseline::ConditionalAll => (
            MixingWeights::vertex(m, m)?,
            Method::ConservativeConditional { neighbors: m },
        ),
    };
    interval_from_weights(normalized_view, y_i, cfg, &weights, method)
}
