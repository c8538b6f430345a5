//! Ranking points, sample summaries and the Mann-Whitney U test.

mod mann_whitney;
mod ranking;

use serde::{Deserialize, Serialize};

pub use mann_whitney::{mann_whitney, mann_whitney_exact, mann_whitney_normal, MannWhitneyResult, Method};
pub use ranking::{f1_points, rank_positions, F1Table, GameRanking, Performance, RankEntry, F1_POINTS};

/// Significance threshold used throughout the harness.
pub const ALPHA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator) over sqrt(n); 0 for n = 1.
    pub std_error: f64,
}

/// Mean and standard error of `values`. Panics on an empty sample.
pub fn summarize(values: &[f64]) -> SampleSummary {
    assert!(!values.is_empty(), "cannot summarize an empty sample");
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std_error = if n > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    SampleSummary { n, mean, std_error }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample() {
        let s = summarize(&[1.0; 4]);
        assert_eq!((s.n, s.mean, s.std_error), (4, 1.0, 0.0));
    }

    #[test]
    fn two_points() {
        // sd = 1/sqrt(2), se = sd / sqrt(2) = 0.5
        let s = summarize(&[0.0, 1.0]);
        assert_eq!(s.mean, 0.5);
        assert!((s.std_error - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_scale() {
        // 47.5% wins over 100 runs: se ~ 0.05, i.e. ~5 percentage points at
        // n = 100 and ~2.3 over the larger pooled samples of a table cell.
        let mut v = vec![1.0; 48];
        v.extend(vec![0.0; 52]);
        let s = summarize(&v);
        assert!((s.std_error - 0.0502).abs() < 1e-3, "{}", s.std_error);
    }

    #[test]
    fn single_value() {
        assert_eq!(summarize(&[3.0]).std_error, 0.0);
    }
}
