use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Exact,
    NormalApprox,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MannWhitneyResult {
    /// U statistic of the first sample: pairs where it is larger, ties count 1/2.
    pub u: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub method: Method,
    /// Every pooled value is identical; `p_value` is 1.
    pub degenerate: bool,
}

/// Largest `n * m` for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 64;

/// Two-sided Mann-Whitney U test. Exact for tie-free samples with
/// `n * m <= 64`, otherwise the normal approximation with tie and continuity
/// corrections.
pub fn mann_whitney(a: &[f64], b: &[f64]) -> MannWhitneyResult {
    if a.len() * b.len() <= EXACT_LIMIT {
        if let Some(r) = mann_whitney_exact(a, b) {
            return r;
        }
    }
    mann_whitney_normal(a, b)
}

/// Exact test; `None` when the pooled sample has ties.
pub fn mann_whitney_exact(a: &[f64], b: &[f64]) -> Option<MannWhitneyResult> {
    let pooled = ranked(a, b);
    if pooled.tie_term > 0.0 {
        return None;
    }
    let (n, m) = (a.len(), b.len());
    let u = u_statistic(&pooled, n);
    let counts = u_distribution(n, m);
    let total: f64 = counts.iter().sum();
    let k = u.round() as usize;
    let lower: f64 = counts[..=k].iter().sum::<f64>() / total;
    let upper: f64 = counts[k..].iter().sum::<f64>() / total;
    Some(MannWhitneyResult {
        u,
        p_value: (2.0 * lower.min(upper)).min(1.0),
        method: Method::Exact,
        degenerate: false,
    })
}

/// Normal approximation with tie correction of the variance and a 0.5
/// continuity correction.
pub fn mann_whitney_normal(a: &[f64], b: &[f64]) -> MannWhitneyResult {
    let pooled = ranked(a, b);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let u = u_statistic(&pooled, a.len());
    let total = n + m;
    let var = n * m / 12.0 * ((total + 1.0) - pooled.tie_term / (total * (total - 1.0)));
    if var <= 0.0 {
        return MannWhitneyResult {
            u,
            p_value: 1.0,
            method: Method::NormalApprox,
            degenerate: true,
        };
    }
    let z = ((u - n * m / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
    MannWhitneyResult {
        u,
        p_value: erfc(z / std::f64::consts::SQRT_2).min(1.0),
        method: Method::NormalApprox,
        degenerate: false,
    }
}

struct Pooled {
    /// Average ranks (1-based) in input order: `a` first, then `b`.
    ranks: Vec<f64>,
    /// Sum of `t^3 - t` over tie groups.
    tie_term: f64,
}

fn ranked(a: &[f64], b: &[f64]) -> Pooled {
    assert!(!a.is_empty() && !b.is_empty(), "both samples need at least one value");
    let values: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let avg = (start + end + 1) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = avg;
        }
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        start = end;
    }
    Pooled { ranks, tie_term }
}

fn u_statistic(pooled: &Pooled, n: usize) -> f64 {
    let rank_sum: f64 = pooled.ranks[..n].iter().sum();
    rank_sum - (n * (n + 1)) as f64 / 2.0
}

/// Number of rank arrangements giving each U value `0..=n*m`, by the
/// recurrence on whether the largest pooled value belongs to the first
/// sample: `c(n, m, u) = c(n - 1, m, u - m) + c(n, m - 1, u)`.
fn u_distribution(n: usize, m: usize) -> Vec<f64> {
    let size = n * m + 1;
    // table[i][j] holds the distribution for sample sizes (i, j).
    let mut table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); m + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=m {
            let mut dist = vec![0.0; i * j + 1];
            if i == 0 || j == 0 {
                dist[0] = 1.0;
            } else {
                for (u, slot) in dist.iter_mut().enumerate() {
                    let with_a = if u >= j { table[i - 1][j].get(u - j).copied().unwrap_or(0.0) } else { 0.0 };
                    let with_b = table[i][j - 1].get(u).copied().unwrap_or(0.0);
                    *slot = with_a + with_b;
                }
            }
            table[i][j] = dist;
        }
    }
    let dist = std::mem::take(&mut table[n][m]);
    debug_assert_eq!(dist.len(), size);
    dist
}
