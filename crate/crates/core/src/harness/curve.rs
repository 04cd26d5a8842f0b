//! Interval envelopes over a whole design, including unobserved points.

use crate::error::{Error, Result};
use crate::im_core::PlausibilityInterval;
use crate::model::{pairwise_bound, Dataset, HolderConfig};
use crate::partial_cond::interval_for_point;

/// Optimized intervals at every observed point, extendable to any `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFit {
    cfg: HolderConfig,
    /// Sorted by `t`.
    observed: Vec<(f64, PlausibilityInterval)>,
}

impl CurveFit {
    pub fn new(data: &Dataset, cfg: &HolderConfig) -> Result<Self> {
        let observed = data
            .observed_indices()
            .into_iter()
            .map(|i| Ok((data.points()[i].t, interval_for_point(data, cfg, i)?)))
            .collect::<Result<Vec<_>>>()?;
        if observed.is_empty() {
            return Err(Error::NoObservedPoints);
        }
        Ok(Self {
            cfg: *cfg,
            observed,
        })
    }

    pub fn observed(&self) -> &[(f64, PlausibilityInterval)] {
        &self.observed
    }

    /// Interval for `ϑ(t)` from the observed neighbors flanking `t`.
    ///
    /// Each flanking interval is widened by the Hölder bound to `t` and the
    /// results intersected. If the two widened intervals are disjoint (data
    /// at odds with the constraint) their hull is returned instead.
    pub fn envelope_at(&self, t: f64) -> PlausibilityInterval {
        let right = self.observed.partition_point(|(tj, _)| *tj < t);
        let left = if right < self.observed.len() && self.observed[right].0 == t {
            right
        } else {
            right.wrapping_sub(1)
        };
        let widen = |idx: usize| {
            let (tj, iv) = self.observed[idx];
            let b = pairwise_bound(&self.cfg, t, tj);
            (iv.lower - b, iv.upper + b, iv)
        };
        match (self.observed.get(left), self.observed.get(right)) {
            (Some(_), Some(_)) => {
                let (l1, u1, iv) = widen(left);
                let (l2, u2, _) = widen(right);
                let (lower, upper) = if l1.max(l2) <= u1.min(u2) {
                    (l1.max(l2), u1.min(u2))
                } else {
                    (l1.min(l2), u1.max(u2))
                };
                PlausibilityInterval { lower, upper, ..iv }
            }
            (Some(_), None) => {
                let (lower, upper, iv) = widen(left);
                PlausibilityInterval { lower, upper, ..iv }
            }
            (None, Some(_)) => {
                let (lower, upper, iv) = widen(right);
                PlausibilityInterval { lower, upper, ..iv }
            }
            (None, None) => unreachable!("at least one observed point"),
        }
    }
}

/// Intervals at every point of `data` in canonical order: optimized
/// intervals where `y` is observed, flanking envelopes elsewhere.
pub fn fit_curve(data: &Dataset, cfg: &HolderConfig) -> Result<Vec<(f64, PlausibilityInterval)>> {
    let fit = CurveFit::new(data, cfg)?;
    let mut observed = fit.observed.iter();
    Ok(data
        .points()
        .iter()
        .map(|p| match p.y {
            Some(_) => *observed.next().expect("one fit per observed point"),
            None => (p.t, fit.envelope_at(p.t)),
        })
        .collect())
}
