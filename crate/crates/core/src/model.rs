//! Domain types for the constrained many-normal-means problem.
//!
//! Observations follow `y_i = ϑ(t_i) + σ u_i` with `u_i` iid standard normal
//! and `ϑ` in the Hölder ball `|ϑ(t) − ϑ(s)| ≤ M |t − s|^γ`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Hölder constraint, noise level, and significance level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderConfig {
    m: f64,
    gamma: f64,
    sigma: f64,
    alpha: f64,
}

impl HolderConfig {
    pub fn new(m: f64, gamma: f64, sigma: f64, alpha: f64) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "M must be finite and >= 0, got {m}"
            )));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "gamma must lie in (0, 1], got {gamma}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must be finite and > 0, got {sigma}"
            )));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(Self {
            m,
            gamma,
            sigma,
            alpha,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn with_sigma(self, sigma: f64) -> Result<Self> {
        Self::new(self.m, self.gamma, sigma, self.alpha)
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.m, self.gamma, self.sigma, alpha)
    }

    /// `z = Φ⁻¹(1 − α/2)`.
    pub fn z(&self) -> f64 {
        crate::gauss::CriticalValue::new(self.alpha)
            .expect("alpha validated at construction")
            .z()
    }
}

impl Default for HolderConfig {
    /// `M = 1`, `γ = 1/2`, `σ = 1`, `α = 0.05`.
    fn default() -> Self {
        Self {
            m: 1.0,
            gamma: 0.5,
            sigma: 1.0,
            alpha: 0.05,
        }
    }
}

/// `M |t_i − t_j|^γ`.
pub fn pairwise_bound(cfg: &HolderConfig, t_i: f64, t_j: f64) -> f64 {
    let d = (t_i - t_j).abs();
    if d == 0.0 {
        return 0.0;
    }
    cfg.m * d.powf(cfg.gamma)
}

/// A design point with an optional response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataPoint {
    pub t: f64,
    pub y: Option<f64>,
}

/// Design points sorted by ascending `t`, each with an optional response.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<DataPoint>,
    outside_unit_interval: bool,
}

impl Dataset {
    /// Builds a dataset from `(t, y)` pairs in any order.
    ///
    /// Rejects non-finite values and repeated `t`. Row numbers in errors refer
    /// to positions in `points` as given.
    pub fn new(points: impl IntoIterator<Item = (f64, Option<f64>)>) -> Result<Self> {
        let mut rows: Vec<(usize, DataPoint)> = Vec::new();
        for (row, (t, y)) in points.into_iter().enumerate() {
            if !t.is_finite() || y.is_some_and(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row });
            }
            rows.push((row, DataPoint { t, y }));
        }
        rows.sort_by(|a, b| a.1.t.total_cmp(&b.1.t).then(a.0.cmp(&b.0)));
        for pair in rows.windows(2) {
            if pair[0].1.t == pair[1].1.t {
                let (first, second) = (pair[0].0.min(pair[1].0), pair[0].0.max(pair[1].0));
                return Err(Error::DuplicateDesignPoint {
                    t: pair[0].1.t,
                    first,
                    second,
                });
            }
        }
        let outside_unit_interval = rows.iter().any(|(_, p)| !(0.0..=1.0).contains(&p.t));
        Ok(Self {
            points: rows.into_iter().map(|(_, p)| p).collect(),
            outside_unit_interval,
        })
    }

    /// Builds a fully observed dataset.
    pub fn observed(t: &[f64], y: &[f64]) -> Result<Self> {
        if t.len() != y.len() {
            return Err(Error::InvalidConfig(format!(
                "got {} design points but {} responses",
                t.len(),
                y.len()
            )));
        }
        Self::new(t.iter().copied().zip(y.iter().map(|&v| Some(v))))
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Set when some `t` falls outside `[0, 1]`. Such points are still used.
    pub fn has_points_outside_unit_interval(&self) -> bool {
        self.outside_unit_interval
    }

    /// Indices (in canonical order) of points with a response.
    pub fn observed_indices(&self) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.y.map(|_| i))
            .collect()
    }

    pub(crate) fn observed_response(&self, i: usize) -> Result<f64> {
        let p = self.points.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.points.len(),
        })?;
        p.y.ok_or(Error::MissingResponse { index: i })
    }
}

/// The other observed points seen from target point `i`, nearest first.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborView {
    pub target_index: usize,
    pub ordered_indices: Vec<usize>,
    pub distances: Vec<f64>,
    /// `M · distance^γ`
    pub bounds: Vec<f64>,
    /// `y_i − y_j`
    pub diffs: Vec<f64>,
}

impl NeighborView {
    /// Builds a view directly from bounds and differences (nearest first).
    ///
    /// Useful when only the bound geometry matters, e.g. for optimizing
    /// weights against a given bound vector.
    pub fn from_bounds(bounds: Vec<f64>, diffs: Vec<f64>) -> Result<Self> {
        if bounds.len() != diffs.len() {
            return Err(Error::InvalidConfig(
                "bounds and diffs differ in length".into(),
            ));
        }
        if bounds.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
            return Err(Error::InvalidConfig(
                "bounds must be finite and >= 0".into(),
            ));
        }
        if bounds.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidConfig("bounds must be nondecreasing".into()));
        }
        Ok(Self {
            target_index: 0,
            ordered_indices: (1..=bounds.len()).collect(),
            distances: vec![f64::NAN; bounds.len()],
            bounds,
            diffs,
        })
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Bounds and differences divided by `sigma`.
    pub fn normalized(&self, sigma: f64) -> Self {
        Self {
            bounds: self.bounds.iter().map(|b| b / sigma).collect(),
            diffs: self.diffs.iter().map(|d| d / sigma).collect(),
            ..self.clone()
        }
    }
}

/// Orders the other observed points by distance from point `i`, breaking
/// distance ties by ascending `t`.
pub fn neighbor_view(data: &Dataset, cfg: &HolderConfig, i: usize) -> Result<NeighborView> {
    let y_i = data.observed_response(i)?;
    let t_i = data.points[i].t;

    let mut others: Vec<(usize, f64)> = data
        .points
        .iter()
        .enumerate()
        .filter(|(j, p)| *j != i && p.y.is_some())
        .map(|(j, p)| (j, (p.t - t_i).abs()))
        .collect();
    if others.is_empty() {
        return Err(Error::NoNeighbors { index: i });
    }
    others.sort_by(|a, b| match a.1.total_cmp(&b.1) {
        Ordering::Equal => data.points[a.0].t.total_cmp(&data.points[b.0].t),
        o => o,
    });

    let mut view = NeighborView {
        target_index: i,
        ordered_indices: Vec::with_capacity(others.len()),
        distances: Vec::with_capacity(others.len()),
        bounds: Vec::with_capacity(others.len()),
        diffs: Vec::with_capacity(others.len()),
    };
    for (j, d) in others {
        let p = data.points[j];
        view.ordered_indices.push(j);
        view.distances.push(d);
        view.bounds.push(pairwise_bound(cfg, t_i, p.t));
        view.diffs.push(y_i - p.y.expect("filtered to observed"));
    }
    Ok(view)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(m: f64, gamma: f64) -> HolderConfig {
        HolderConfig::new(m, gamma, 1.0, 0.05).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(HolderConfig::new(0.0, 1.0, 1.0, 0.05).is_ok());
        assert!(HolderConfig::new(-1.0, 0.5, 1.0, 0.05).is_err());
        assert!(HolderConfig::new(1.0, 0.0, 1.0, 0.05).is_err());
        assert!(HolderConfig::new(1.0, 1.5, 1.0, 0.05).is_err());
        assert!(HolderConfig::new(1.0, 0.5, 0.0, 0.05).is_err());
        assert!(HolderConfig::new(1.0, 0.5, 1.0, 1.0).is_err());
        assert!(HolderConfig::new(1.0, 0.5, 1.0, 0.0).is_err());
        assert!(HolderConfig::new(f64::NAN, 0.5, 1.0, 0.05).is_err());
    }

    #[test]
    fn pairwise_bound_examples() {
        let c = cfg(1.0, 0.5);
        assert_eq!(pairwise_bound(&c, 0.3, 0.3), 0.0);
        assert!((pairwise_bound(&c, 0.25, 0.5) - 0.5).abs() < 1e-15);
        assert!((pairwise_bound(&cfg(1.0, 1.0), 0.1, 0.4) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn dataset_rejects_duplicates() {
        let err = Dataset::new([(0.5, Some(1.0)), (0.2, None), (0.5, None)]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateDesignPoint {
                t: 0.5,
                first: 0,
                second: 2
            }
        );
    }

    #[test]
    fn dataset_flags_points_outside_unit_interval() {
        let d = Dataset::observed(&[-0.5, 0.5], &[0.0, 0.0]).unwrap();
        assert!(d.has_points_outside_unit_interval());
        let d = Dataset::observed(&[0.0, 1.0], &[0.0, 0.0]).unwrap();
        assert!(!d.has_points_outside_unit_interval());
    }

    #[test]
    fn dataset_sorted_and_non_finite_rejected() {
        let d = Dataset::observed(&[0.9, 0.1, 0.5], &[3.0, 1.0, 2.0]).unwrap();
        let ts: Vec<f64> = d.points().iter().map(|p| p.t).collect();
        assert_eq!(ts, vec![0.1, 0.5, 0.9]);
        assert_eq!(d.points()[0].y, Some(1.0));
        assert_eq!(
            Dataset::new([(0.1, Some(f64::NAN))]).unwrap_err(),
            Error::NonFinite { row: 0 }
        );
    }

    #[test]
    fn two_point_view() {
        let c = cfg(1.0, 0.5);
        let d = Dataset::observed(&[0.2, 0.45], &[1.0, 2.0]).unwrap();
        let v = neighbor_view(&d, &c, 1).unwrap();
        assert_eq!(v.ordered_indices, vec![0]);
        assert!((v.bounds[0] - 0.5).abs() < 1e-15);
        assert_eq!(v.diffs, vec![1.0]);
    }

    #[test]
    fn three_point_views() {
        let c = cfg(1.0, 0.5);
        let d = Dataset::observed(&[0.1, 0.2, 0.9], &[0.0; 3]).unwrap();
        let v = neighbor_view(&d, &c, 1).unwrap();
        assert_eq!(v.ordered_indices, vec![0, 2]);
        assert!((v.distances[0] - 0.1).abs() < 1e-15);
        assert!((v.distances[1] - 0.7).abs() < 1e-15);

        let d = Dataset::observed(&[0.1, 0.5, 0.9], &[0.0; 3]).unwrap();
        let v = neighbor_view(&d, &c, 1).unwrap();
        assert_eq!(v.ordered_indices, vec![0, 2]);
        assert!((v.distances[0] - 0.4).abs() < 1e-15);
        assert!((v.distances[1] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn exact_tie_breaks_by_ascending_t() {
        // dyadic values make the distances bit-identical
        let c = cfg(1.0, 0.5);
        let d = Dataset::observed(&[0.75, 0.5, 0.25], &[0.0; 3]).unwrap();
        let v = neighbor_view(&d, &c, 1).unwrap();
        assert_eq!(v.distances, vec![0.25, 0.25]);
        assert_eq!(v.ordered_indices, vec![0, 2]);
    }

    #[test]
    fn view_skips_missing_and_errors() {
        let c = cfg(1.0, 0.5);
        let d = Dataset::new([(0.1, Some(0.0)), (0.2, None), (0.3, Some(1.0))]).unwrap();
        let v = neighbor_view(&d, &c, 0).unwrap();
        assert_eq!(v.ordered_indices, vec![2]);
        assert_eq!(
            neighbor_view(&d, &c, 1).unwrap_err(),
            Error::MissingResponse { index: 1 }
        );
        assert!(matches!(
            neighbor_view(&d, &c, 7),
            Err(Error::IndexOutOfRange { .. })
        ));
        let lone = Dataset::new([(0.1, Some(0.0)), (0.2, None)]).unwrap();
        assert_eq!(
            neighbor_view(&lone, &c, 0).unwrap_err(),
            Error::NoNeighbors { index: 0 }
        );
    }

    proptest! {
        #[test]
        fn bound_symmetric_and_monotone(
            a in 0.0f64..1.0, b in 0.0f64..1.0, m in 0.0f64..5.0,
            gamma in 0.05f64..=1.0, extra in 0.0f64..0.5, dm in 0.0f64..2.0,
        ) {
            let c = HolderConfig::new(m, gamma, 1.0, 0.05).unwrap();
            prop_assert_eq!(pairwise_bound(&c, a, b), pairwise_bound(&c, b, a));
            let farther = pairwise_bound(&c, a, a + (b - a).abs() + extra);
            prop_assert!(farther >= pairwise_bound(&c, a, b));
            let bigger_m = HolderConfig::new(m + dm, gamma, 1.0, 0.05).unwrap();
            prop_assert!(pairwise_bound(&bigger_m, a, b) >= pairwise_bound(&c, a, b));
        }

        #[test]
        fn views_sorted_and_invariant_to_input_order(
            pts in prop::collection::btree_map(0u32..10_000, -3.0f64..3.0, 2..12),
            gamma in 0.1f64..=1.0,
            seed in any::<u64>(),
        ) {
            let c = HolderConfig::new(1.3, gamma, 1.0, 0.05).unwrap();
            let rows: Vec<(f64, Option<f64>)> =
                pts.iter().map(|(&k, &y)| (k as f64 / 10_000.0, Some(y))).collect();
            let mut shuffled = rows.clone();
            // deterministic Fisher-Yates driven by the proptest seed
            let mut s = seed;
            for i in (1..shuffled.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let a = Dataset::new(rows).unwrap();
            let b = Dataset::new(shuffled).unwrap();
            for i in 0..a.len() {
                let va = neighbor_view(&a, &c, i).unwrap();
                let vb = neighbor_view(&b, &c, i).unwrap();
                prop_assert!(va.distances.windows(2).all(|w| w[0] <= w[1]));
                prop_assert!(va.bounds.windows(2).all(|w| w[0] <= w[1]));
                for (d, b) in va.distances.iter().zip(&va.bounds) {
                    prop_assert_eq!(*b, if *d == 0.0 { 0.0 } else { 1.3 * d.powf(gamma) });
                }
                prop_assert_eq!(va, vb);
            }
        }
    }
}
