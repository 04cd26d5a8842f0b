//! Projected-gradient minimization of the interval width over
//! `{λ ≥ 0, Σλ ≤ 1}`.
//!
//! The width is a linear term plus `z` times the Euclidean norm of an affine
//! map of `λ`, hence convex, and `Δ_λ ≥ 1/√n > 0` keeps it smooth on the
//! feasible set. Plain projected gradient with a backtracking line search
//! therefore converges to the global minimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{center_coefficients, own_coefficient, MixingWeights};
use crate::error::{Error, Result};
use crate::model::NeighborView;

/// Stop once the projected gradient (unit step) is this small.
const PG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Objective decrease below which iteration stops (normalized width units).
    pub tol: f64,
    pub max_iters: usize,
    /// Extra random feasible starting points beyond `λ = 0`.
    pub restarts: usize,
    /// Seeds the restart points; unused when `restarts == 0`.
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iters: 10_000,
            restarts: 0,
            seed: 0,
        }
    }
}

impl OptimizerOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidOptions(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidOptions("max_iters must be >= 1".into()));
        }
        Ok(())
    }

    /// Decrease threshold used by the stopping rule.
    fn decrease_tol(&self) -> f64 {
        self.tol * 1e-4
    }
}

/// Euclidean projection onto `{x ≥ 0, Σx ≤ 1}`.
pub fn project_onto_simplex(v: &[f64]) -> Vec<f64> {
    let clipped: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
    if clipped.iter().sum::<f64>() <= 1.0 {
        return clipped;
    }
    // The sum constraint is active: project onto {x ≥ 0, Σx = 1} by sorting.
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (idx, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (idx as f64 + 1.0);
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Width objective with precomputed bound prefix sums.
struct WidthProblem {
    /// `Σ_{j≤k} B_j / (k+1)`
    scaled_prefix: Vec<f64>,
    z: f64,
}

impl WidthProblem {
    fn new(bounds: &[f64], z: f64) -> Self {
        let mut acc = 0.0;
        let scaled_prefix = bounds
            .iter()
            .enumerate()
            .map(|(idx, b)| {
                acc += b;
                acc / (idx as f64 + 2.0)
            })
            .collect();
        Self { scaled_prefix, z }
    }

    fn delta(&self, lambda: &[f64], coeffs: &[f64]) -> f64 {
        let own = own_coefficient(lambda);
        (own * own + coeffs.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    fn value(&self, lambda: &[f64]) -> f64 {
        let coeffs = center_coefficients(lambda);
        let linear: f64 = lambda
            .iter()
            .zip(&self.scaled_prefix)
            .map(|(l, s)| l * s)
            .sum();
        2.0 * linear + 2.0 * self.z * self.delta(lambda, &coeffs)
    }

    fn value_and_gradient(&self, lambda: &[f64]) -> (f64, Vec<f64>) {
        let coeffs = center_coefficients(lambda);
        let own = own_coefficient(lambda);
        let delta = self.delta(lambda, &coeffs);
        assert!(delta > 0.0, "residual SD vanished on the feasible set");
        let linear: f64 = lambda
            .iter()
            .zip(&self.scaled_prefix)
            .map(|(l, s)| l * s)
            .sum();

        let mut grad = Vec::with_capacity(lambda.len());
        let mut coeff_prefix = 0.0;
        for (idx, s) in self.scaled_prefix.iter().enumerate() {
            let k = idx as f64 + 1.0;
            coeff_prefix += coeffs[idx];
            let d_delta = (-(k / (k + 1.0)) * own + coeff_prefix / (k + 1.0)) / delta;
            grad.push(2.0 * (s + self.z * d_delta));
        }
        (2.0 * linear + 2.0 * self.z * delta, grad)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn descend(problem: &WidthProblem, start: Vec<f64>, opts: &OptimizerOptions) -> (Vec<f64>, f64) {
    let mut x = start;
    let (mut f, mut g) = problem.value_and_gradient(&x);
    let mut step = 1.0;

    for _ in 0..opts.max_iters {
        let unit: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - gi).collect();
        let pg = project_onto_simplex(&unit);
        let pg_norm = x
            .iter()
            .zip(&pg)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        if pg_norm < PG_TOL {
            break;
        }

        let mut s = step;
        let (next, f_next, d) = loop {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - s * gi).collect();
            let next = project_onto_simplex(&trial);
            let d: Vec<f64> = next.iter().zip(&x).map(|(a, b)| a - b).collect();
            let f_next = problem.value(&next);
            if f_next <= f + dot(&g, &d) + dot(&d, &d) / (2.0 * s) || s < 1e-16 {
                break (next, f_next, d);
            }
            s *= 0.5;
        };
        if f_next > f {
            // line search stalled at machine precision
            break;
        }

        let (_, g_next) = problem.value_and_gradient(&next);
        // Barzilai-Borwein guess for the next trial step
        let dg: Vec<f64> = g_next.iter().zip(&g).map(|(a, b)| a - b).collect();
        let curvature = dot(&d, &dg);
        step = if curvature > 0.0 {
            (dot(&d, &d) / curvature).clamp(1e-8, 1e8)
        } else {
            2.0 * s
        };

        let decrease = f - f_next;
        x = next;
        f = f_next;
        g = g_next;
        if decrease < opts.decrease_tol() && pg_norm < opts.tol {
            break;
        }
    }
    (x, f)
}

fn random_feasible(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    // uniform on the simplex with a slack coordinate
    let draws: Vec<f64> = (0..=m).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws[..m].iter().map(|d| d / total).collect()
}

/// Minimizes the normalized interval width over feasible mixing weights.
///
/// `view` must be σ-normalized and have at least one neighbor. Returns the
/// weights and the attained width.
pub fn optimize_weights(
    view: &NeighborView,
    z: f64,
    opts: &OptimizerOptions,
) -> Result<(MixingWeights, f64)> {
    opts.validate()?;
    if view.is_empty() {
        return Err(Error::NoNeighbors {
            index: view.target_index,
        });
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "critical value must be > 0, got {z}"
        )));
    }
    let m = view.len();
    let problem = WidthProblem::new(&view.bounds, z);

    let (mut best, mut best_f) = descend(&problem, vec![0.0; m], opts);
    if opts.restarts > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.restarts {
            let (x, f) = descend(&problem, random_feasible(&mut rng, m), opts);
            if f < best_f {
                best = x;
                best_f = f;
            }
        }
    }
    Ok((MixingWeights::new(best)?, best_f))
}
