//! Valid, width-minimizing pointwise plausibility intervals for normal means
//! whose underlying function lies in a Hölder ball.
//!
//! The main entry points are [`partial_cond::interval_for_point`] for a single
//! observed design point and [`harness::fit_curve`] for every point of a
//! dataset, including unobserved ones. [`harness`] also hosts the seeded
//! Monte Carlo experiments used to check coverage and compare widths.

pub mod error;
pub mod gauss;
pub mod harness;
pub mod im_core;
pub mod model;
pub mod partial_cond;

pub use error::{Error, Result};
pub use im_core::{Method, PlausibilityInterval};
pub use model::{Dataset, HolderConfig, NeighborView};
pub use partial_cond::{Baseline, MixingWeights, OptimizerOptions};
