//! Basic and conditional inferential models for singleton assertions.

use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::phi;
use crate::model::HolderConfig;

/// The assertion `ϑ(t) = theta0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletonAssertion {
    pub t: f64,
    pub theta0: f64,
}

/// How an interval was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Single observation only.
    OnePoint,
    /// Ignores neighbors altogether; numerically identical to `OnePoint` but
    /// reported as a baseline for a point that does have neighbors.
    Marginal,
    /// Exact conditional IM of the zero-bound two-point problem.
    ConditionalFull,
    /// Conditional IM on the `neighbors` nearest points, made valid by taking
    /// the union over every difference allowed by the Hölder bounds.
    ConservativeConditional { neighbors: usize },
    /// Optimally mixed partial regression.
    PartialConditioning,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::OnePoint => f.write_str("one-point"),
            Method::Marginal => f.write_str("marginal"),
            Method::ConditionalFull => f.write_str("conditional"),
            Method::ConservativeConditional { neighbors } => write!(f, "cond-{neighbors}pt"),
            Method::PartialConditioning => f.write_str("partial"),
        }
    }
}

/// A level-`alpha` plausibility interval for `ϑ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlausibilityInterval {
    pub lower: f64,
    pub upper: f64,
    pub alpha: f64,
    pub method: Method,
}

impl PlausibilityInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// `2(1 − Φ(|θ0 − y1| / σ))`
pub fn one_point_plausibility(y1: f64, cfg: &HolderConfig, theta0: f64) -> f64 {
    two_sided_tail((theta0 - y1).abs() / cfg.sigma())
}

/// Always zero: a continuous predictive random set never fits inside a
/// singleton.
pub fn one_point_belief(_y1: f64, _cfg: &HolderConfig, _assertion: &SingletonAssertion) -> f64 {
    0.0
}

/// `{θ0 : pl(θ0) ≥ α} = [y1 − σz, y1 + σz]`.
pub fn one_point_region(y1: f64, cfg: &HolderConfig) -> PlausibilityInterval {
    let half = cfg.sigma() * cfg.z();
    PlausibilityInterval {
        lower: y1 - half,
        upper: y1 + half,
        alpha: cfg.alpha(),
        method: Method::OnePoint,
    }
}

/// Conditional plausibility of `ϑ(t2) = θ0` given the observed `y2 − y1`,
/// exact when the two means are forced equal (`B = 0`).
pub fn conditional_two_point_plausibility(
    y1: f64,
    y2: f64,
    cfg: &HolderConfig,
    bound: f64,
    theta0_at_t2: f64,
) -> Result<f64> {
    if bound != 0.0 {
        return Err(Error::NonZeroBound(bound));
    }
    let center = 0.5 * (y1 + y2);
    Ok(two_sided_tail(
        std::f64::consts::SQRT_2 * (theta0_at_t2 - center).abs() / cfg.sigma(),
    ))
}

/// Superlevel set of [`conditional_two_point_plausibility`]:
/// `(y1 + y2)/2 ± σz/√2`.
pub fn conditional_two_point_region(
    y1: f64,
    y2: f64,
    cfg: &HolderConfig,
    bound: f64,
) -> Result<PlausibilityInterval> {
    if bound != 0.0 {
        return Err(Error::NonZeroBound(bound));
    }
    let center = 0.5 * (y1 + y2);
    let half = cfg.sigma() * cfg.z() / std::f64::consts::SQRT_2;
    Ok(PlausibilityInterval {
        lower: center - half,
        upper: center + half,
        alpha: cfg.alpha(),
        method: Method::ConditionalFull,
    })
}

fn two_sided_tail(x: f64) -> f64 {
    // 2(1 − Φ(x)) == 2Φ(−x), which keeps precision deep in the tail
    (2.0 * phi(-x)).min(1.0)
}
