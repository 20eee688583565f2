//! Log-spaced evaluation lattices for (x, y, t) triples.

use crate::error::{Error, Result};

/// Default per-axis range and size: 16 log-spaced points in [0.1, 10].
pub const DEFAULT_MIN: f64 = 0.1;
pub const DEFAULT_MAX: f64 = 10.0;
pub const DEFAULT_COUNT: usize = 16;

/// `n` log-spaced points spanning [min, max].
pub fn log_space(min: f64, max: f64, n: usize) -> Vec<f64> {
    debug_assert!(min > 0.0 && max > min && n >= 2);
    let (lo, hi) = (min.ln(), max.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                min
            } else if i == n - 1 {
                max
            } else {
                (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` linearly spaced points spanning [min, max].
pub fn linear_space(min: f64, max: f64, n: usize) -> Vec<f64> {
    debug_assert!(max > min && n >= 2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                max
            } else {
                min + (max - min) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Evaluation lattice: the x and y axes feed beta-type arguments, the t axis
/// feeds dilation factors.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ts: Vec<f64>,
}

impl AnalysisGrid {
    /// Validates positivity, at least three distinct values per axis, and
    /// at least one dilation factor t ≠ 1.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, ts: Vec<f64>) -> Result<Self> {
        for (axis, values) in [("x", &xs), ("y", &ys), ("t", &ts)] {
            if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis} contains non-positive or non-finite entries"
                )));
            }
            let mut sorted: Vec<f64> = values.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            if sorted.len() < 3 {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis} needs at least 3 distinct values, got {}",
                    sorted.len()
                )));
            }
        }
        if ts.iter().all(|&t| t == 1.0) {
            return Err(Error::InvalidGrid("t axis needs a value != 1".to_string()));
        }
        Ok(AnalysisGrid { xs, ys, ts })
    }

    /// The same log-spaced axis on x, y and t.
    pub fn log_spaced(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min > 0.0 && min.is_finite() && max > min && max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < min < max, got [{min}, {max}]"
            )));
        }
        if count < 3 {
            return Err(Error::InvalidGrid(format!("need count >= 3, got {count}")));
        }
        let axis = log_space(min, max, count);
        AnalysisGrid::new(axis.clone(), axis.clone(), axis)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    /// All (x, y) pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs
            .iter()
            .flat_map(move |&x| self.ys.iter().map(move |&y| (x, y)))
    }

    /// All (x, y, t) triples, t varying fastest.
    pub fn triples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.pairs()
            .flat_map(move |(x, y)| self.ts.iter().map(move |&t| (x, y, t)))
    }
}

impl Default for AnalysisGrid {
    fn default() -> Self {
        AnalysisGrid::log_spaced(DEFAULT_MIN, DEFAULT_MAX, DEFAULT_COUNT)
            .expect("default grid parameters are valid")
    }
}
