//! Browser bindings for the interactive demo page in `www/`.
//!
//! The computations are plain functions so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors to strings.

use holder_im::harness::{simulate_trial, CurveFit, Design, ExperimentConfig, Truth};
use holder_im::partial_cond::{optimize_weights, two_point_optimal, width_objective};
use holder_im::{HolderConfig, MixingWeights, NeighborView, OptimizerOptions};
use wasm_bindgen::prelude::*;

/// Widths of the three two-point constructions as functions of `B`.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct WidthCurve {
    bounds: Vec<f64>,
    mixture: Vec<f64>,
    marginal: Vec<f64>,
    conservative: Vec<f64>,
    lambda: Vec<f64>,
}

#[wasm_bindgen]
impl WidthCurve {
    #[wasm_bindgen(getter)]
    pub fn bounds(&self) -> Vec<f64> {
        self.bounds.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn mixture(&self) -> Vec<f64> {
        self.mixture.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn marginal(&self) -> Vec<f64> {
        self.marginal.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn conservative(&self) -> Vec<f64> {
        self.conservative.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn lambda(&self) -> Vec<f64> {
        self.lambda.clone()
    }
}

/// Optimal weights and the widths they compete against.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFit {
    weights: Vec<f64>,
    width: f64,
    marginal: f64,
    cond_nearest: f64,
    cond_all: f64,
}

#[wasm_bindgen]
impl WeightFit {
    #[wasm_bindgen(getter)]
    pub fn weights(&self) -> Vec<f64> {
        self.weights.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> f64 {
        self.width
    }
    #[wasm_bindgen(getter)]
    pub fn marginal(&self) -> f64 {
        self.marginal
    }
    #[wasm_bindgen(getter, js_name = condNearest)]
    pub fn cond_nearest(&self) -> f64 {
        self.cond_nearest
    }
    #[wasm_bindgen(getter, js_name = condAll)]
    pub fn cond_all(&self) -> f64 {
        self.cond_all
    }
}

/// A simulated dataset, its intervals, and the envelope on a dense grid.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDemo {
    t: Vec<f64>,
    y: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    grid: Vec<f64>,
    grid_lower: Vec<f64>,
    grid_upper: Vec<f64>,
    truth: Vec<f64>,
}

#[wasm_bindgen]
impl CurveDemo {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn y(&self) -> Vec<f64> {
        self.y.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn lower(&self) -> Vec<f64> {
        self.lower.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn upper(&self) -> Vec<f64> {
        self.upper.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn grid(&self) -> Vec<f64> {
        self.grid.clone()
    }
    #[wasm_bindgen(getter, js_name = gridLower)]
    pub fn grid_lower(&self) -> Vec<f64> {
        self.grid_lower.clone()
    }
    #[wasm_bindgen(getter, js_name = gridUpper)]
    pub fn grid_upper(&self) -> Vec<f64> {
        self.grid_upper.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn truth(&self) -> Vec<f64> {
        self.truth.clone()
    }
}

/// Two-point widths at `steps + 1` evenly spaced bounds in `[0, b_max]`.
pub fn width_curve(alpha: f64, b_max: f64, steps: usize) -> holder_im::Result<WidthCurve> {
    let z = HolderConfig::default().with_alpha(alpha)?.z();
    if !(b_max.is_finite() && b_max > 0.0) || steps == 0 {
        return Err(holder_im::Error::InvalidConfig(
            "need b_max > 0 and steps > 0".into(),
        ));
    }
    let mut curve = WidthCurve {
        bounds: Vec::with_capacity(steps + 1),
        mixture: Vec::with_capacity(steps + 1),
        marginal: Vec::with_capacity(steps + 1),
        conservative: Vec::with_capacity(steps + 1),
        lambda: Vec::with_capacity(steps + 1),
    };
    for k in 0..=steps {
        let b = b_max * k as f64 / steps as f64;
        let (lambda, width) = two_point_optimal(b, z);
        curve.bounds.push(b);
        curve.mixture.push(width);
        curve.marginal.push(2.0 * z);
        curve.conservative.push(b + std::f64::consts::SQRT_2 * z);
        curve.lambda.push(lambda);
    }
    Ok(curve)
}

/// Optimal mixing weights for σ-normalized bounds (sorted ascending here).
pub fn fit_weights(bounds: &[f64], alpha: f64) -> holder_im::Result<WeightFit> {
    let z = HolderConfig::default().with_alpha(alpha)?.z();
    if bounds.is_empty() {
        return Err(holder_im::Error::InvalidConfig(
            "need at least one neighbor bound".into(),
        ));
    }
    if bounds.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(holder_im::Error::InvalidConfig(
            "bounds must be finite and >= 0".into(),
        ));
    }
    let mut sorted = bounds.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    let view = NeighborView::from_bounds(sorted, vec![0.0; m])?;
    let (weights, width) = optimize_weights(&view, z, &OptimizerOptions::default())?;
    Ok(WeightFit {
        weights: weights.into_inner(),
        width,
        marginal: width_objective(&MixingWeights::zeros(m), &view, z)?,
        cond_nearest: width_objective(&MixingWeights::vertex(m, 1)?, &view, z)?,
        cond_all: width_objective(&MixingWeights::vertex(m, m)?, &view, z)?,
    })
}

/// Simulates `n` points under `√t`, fits intervals, and evaluates the
/// envelope on `grid_steps + 1` points of `[0, 1]`.
pub fn simulate_curve(
    n: usize,
    sigma: f64,
    alpha: f64,
    seed: u64,
    grid_steps: usize,
) -> holder_im::Result<CurveDemo> {
    let cfg = HolderConfig::new(1.0, 0.5, sigma, alpha)?;
    let exp = ExperimentConfig::new(n, 1, seed, cfg)
        .with_truth(Truth::Sqrt)
        .with_design(Design::UniformRandom);
    let data = simulate_trial(&exp, 0)?;
    let fit = CurveFit::new(&data, &cfg)?;
    let grid: Vec<f64> = (0..=grid_steps.max(1))
        .map(|k| k as f64 / grid_steps.max(1) as f64)
        .collect();
    let envelope: Vec<_> = grid.iter().map(|&t| fit.envelope_at(t)).collect();
    Ok(CurveDemo {
        t: data.points().iter().map(|p| p.t).collect(),
        y: data.points().iter().filter_map(|p| p.y).collect(),
        lower: fit.observed().iter().map(|(_, iv)| iv.lower).collect(),
        upper: fit.observed().iter().map(|(_, iv)| iv.upper).collect(),
        truth: grid.iter().map(|&t| Truth::Sqrt.eval(t)).collect(),
        grid_lower: envelope.iter().map(|iv| iv.lower).collect(),
        grid_upper: envelope.iter().map(|iv| iv.upper).collect(),
        grid,
    })
}

fn js_err(e: holder_im::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = widthCurve)]
pub fn width_curve_js(alpha: f64, b_max: f64, steps: usize) -> Result<WidthCurve, JsError> {
    width_curve(alpha, b_max, steps).map_err(js_err)
}

#[wasm_bindgen(js_name = fitWeights)]
pub fn fit_weights_js(bounds: Vec<f64>, alpha: f64) -> Result<WeightFit, JsError> {
    fit_weights(&bounds, alpha).map_err(js_err)
}

#[wasm_bindgen(js_name = simulateCurve)]
pub fn simulate_curve_js(
    n: usize,
    sigma: f64,
    alpha: f64,
    seed: u64,
    grid_steps: usize,
) -> Result<CurveDemo, JsError> {
    simulate_curve(n, sigma, alpha, seed, grid_steps).map_err(js_err)
}
