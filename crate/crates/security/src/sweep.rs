//! Parameter sweeps over the failure-probability calculators, used by the
//! CLI to emit CSV grids and the built-in figure presets.

use crate::{
    class_attack_prob_max, hypergeom_failure, min_flexible_threshold, ShardPopulation,
    SecurityError,
};

/// One CSV row of a sweep: `(n, t, m, s, T, prob)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub t: u64,
    pub m: u64,
    pub s: u64,
    pub threshold: u64,
    pub prob: f64,
}

pub const CSV_HEADER: &str = "n,t,m,s,T,prob";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:e}",
            self.n, self.t, self.m, self.s, self.threshold, self.prob
        )
    }
}

/// Explicit grid over population parameters, evaluated with the
/// hypergeometric committee-sampling model.
#[derive(Clone, Debug, Default)]
pub struct SweepGrid {
    pub n: Vec<u64>,
    pub t: Vec<u64>,
    pub m: Vec<u64>,
    pub s: Vec<u64>,
    pub threshold: Vec<u64>,
}

pub fn run_grid(grid: &SweepGrid) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &n in &grid.n {
        for &t in &grid.t {
            for &m in &grid.m {
                for &s in &grid.s {
                    for &threshold in &grid.threshold {
                        let pop = ShardPopulation { n, t, m, s, threshold };
                        if let Ok(prob) = hypergeom_failure(&pop) {
                            rows.push(SweepRow { n, t, m, s, threshold, prob });
                        }
                    }
                }
            }
        }
    }
    rows
}

/// Committee-sampling failure versus shard count: `n = 2000`,
/// `m = n / s`, adversary at a third and at half of the nodes.
pub fn preset_fig2() -> Vec<SweepRow> {
    let n = 2000u64;
    let mut rows = Vec::new();
    for t in [n / 3, n / 2] {
        for s in 2..=40u64 {
            let m = n / s;
            let threshold = m / 2 + 1;
            let pop = ShardPopulation { n, t, m, s, threshold };
            if let Ok(prob) = hypergeom_failure(&pop) {
                rows.push(SweepRow { n, t, m, s, threshold, prob });
            }
        }
    }
    rows
}

/// Class-based maximum failure versus shard count at half adversary:
/// `n = 2000`, `t = 1000`, `m = n / s`, `T = 0.7 m`. Rows where the
/// threshold would not be a majority (`T <= m/2`) are skipped.
pub fn preset_fig4() -> Vec<SweepRow> {
    let n = 2000u64;
    let t = 1000u64;
    let mut rows = Vec::new();
    for s in 2..=600u64 {
        let m = n / s;
        if m == 0 {
            continue;
        }
        let threshold = (0.7 * m as f64).floor() as u64;
        if threshold * 2 <= m || threshold == 0 {
            continue;
        }
        if let Ok(prob) = class_attack_prob_max(t, threshold as usize, s) {
            rows.push(SweepRow { n, t, m, s, threshold, prob });
        }
    }
    rows
}

/// Probability for a single preset-fig4 shard count.
pub fn fig4_point(s: u64) -> Result<f64, SecurityError> {
    let n = 2000u64;
    let m = n / s;
    let threshold = (0.7 * m as f64).floor() as u64;
    class_attack_prob_max(1000, threshold as usize, s)
}

/// Minimal `T/m` maintaining a 1e-6 failure chance in the flexible model,
/// for a range of category counts. `T` is reported in the threshold
/// column; `n`, `t` and `s` do not apply and are zero.
pub fn preset_fig6() -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let mut m = 10u64;
    while m <= 1000 {
        if let Some(threshold) = min_flexible_threshold(m, crate::DEFAULT_THRESHOLD) {
            let prob = crate::flexible_attack_prob(m, threshold).unwrap();
            rows.push(SweepRow { n: 0, t: 0, m, s: 0, threshold, prob });
        }
        m += 10;
    }
    rows
}
