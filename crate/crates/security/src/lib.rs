//! Failure-probability calculators for weighted blockchain sharding.
//!
//! Three adversary models are covered:
//!
//! * random committee sampling without replacement (cumulative
//!   hypergeometric failure),
//! * class-based node assignment, where the adversary spreads `t` nodes
//!   over `T` decision classes across `s` shards,
//! * group-weighted voting, where nodes carry strengths, groups have lower
//!   strength boundaries and the adversary's budget is a strength total.
//!
//! All calculators are pure functions computing exact integer ratios, so
//! values below 1e-20 come out with full double precision. The same code
//! serves offline sweeps and the online block-acceptance and merge checks
//! of the multichain engine.

mod binomial;
mod group;
mod margin;
pub mod sweep;

pub use binomial::{binom, ratio_to_f64};
pub use group::{block_control_prob, GroupProfile, VoteProfile};
pub use margin::{support_margin_prob, support_margin_prob_with_cap, MarginProb, Voter, EXHAUSTIVE_VOTER_CAP};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Default security threshold for block acceptance and merge decisions.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum SecurityError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no group voted (tt = 0)")]
    NoVotes,
}

/// Population parameters for committee-sampling failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardPopulation {
    /// Total node count.
    pub n: u64,
    /// Adversary node count.
    pub t: u64,
    /// Shard size, nodes per shard.
    pub m: u64,
    /// Shard count.
    pub s: u64,
    /// Consensus threshold: nodes needed to pass a statement.
    pub threshold: u64,
}

impl ShardPopulation {
    pub fn validate(&self) -> Result<(), SecurityError> {
        if self.t > self.n {
            return Err(SecurityError::Domain(format!("t={} > n={}", self.t, self.n)));
        }
        if self.m < 1 || self.m > self.n {
            return Err(SecurityError::Domain(format!("m={} outside [1, n={}]", self.m, self.n)));
        }
        if self.s < 1 {
            return Err(SecurityError::Domain("s must be >= 1".into()));
        }
        if self.threshold * 2 <= self.m || self.threshold > self.m {
            return Err(SecurityError::Domain(format!(
                "threshold T={} outside (m/2, m] for m={}",
                self.threshold, self.m
            )));
        }
        Ok(())
    }
}

/// Probability that a randomly drawn shard of `m` of the `n` nodes holds
/// strictly more than `floor(m/2)` of the `t` adversary nodes:
/// the tail of the hypergeometric distribution without replacement.
pub fn hypergeom_failure(pop: &ShardPopulation) -> Result<f64, SecurityError> {
    pop.validate()?;
    let ShardPopulation { n, t, m, .. } = *pop;
    let lo = m / 2 + 1;
    if lo > t {
        return Ok(0.0);
    }
    // Incremental products: C(t, X) and C(n-t, m-X) step exactly with X.
    // The honest-side coefficient is zero while m-X exceeds n-t and the
    // downward recurrence does not cross that boundary, so recompute it
    // fresh until it turns positive.
    let mut sum = BigUint::zero();
    let mut c_adv = binom(t, lo);
    let mut c_hon = binom(n - t, m - lo);
    let mut x = lo;
    loop {
        sum += &c_adv * &c_hon;
        if x == m.min(t) {
            break;
        }
        // C(t, x+1) = C(t, x) * (t - x) / (x + 1)
        c_adv = c_adv * (t - x) / (x + 1);
        let j = m - x; // next honest draw count is j - 1
        if c_hon.is_zero() {
            c_hon = binom(n - t, j - 1);
        } else {
            // C(n-t, j-1) = C(n-t, j) * j / (n - t - j + 1)
            c_hon = c_hon * j / (n - t - j + 1);
        }
        x += 1;
    }
    Ok(ratio_to_f64(&sum, &binom(n, m)))
}

/// Probability that an adversary holding `allocation[i]` nodes of class `i`
/// controls all `T` classes of one of `s` shards: the product of the
/// per-class fractions `A_i / s`.
pub fn class_attack_prob(allocation: &[u64], s: u64) -> Result<f64, SecurityError> {
    if s < 1 {
        return Err(SecurityError::Domain("s must be >= 1".into()));
    }
    let mut num = BigUint::one();
    for &a in allocation {
        if a > s {
            return Err(SecurityError::Domain(format!("allocation {a} exceeds shard count {s}")));
        }
        if a == 0 {
            return Ok(0.0);
        }
        num *= a;
    }
    let mut den = BigUint::one();
    for _ in 0..allocation.len() {
        den *= s;
    }
    Ok(ratio_to_f64(&num, &den))
}

/// The adversary's best split of `t` nodes over `T` classes: as equal as
/// possible, with the remainder going one-per-class from the front.
pub fn optimal_allocation(t: u64, classes: usize) -> Vec<u64> {
    assert!(classes >= 1, "need at least one class");
    let t_per = t / classes as u64;
    let rem = (t % classes as u64) as usize;
    (0..classes)
        .map(|i| if i < rem { t_per + 1 } else { t_per })
        .collect()
}

/// Maximum class-attack probability over all allocations of `t` nodes.
pub fn class_attack_prob_max(t: u64, classes: usize, s: u64) -> Result<f64, SecurityError> {
    class_attack_prob(&optimal_allocation(t, classes), s)
}

/// Closed-form approximation `(t / (T s))^T` of the class-attack maximum.
pub fn class_attack_prob_approx(t: u64, classes: usize, s: u64) -> f64 {
    (t as f64 / (classes as f64 * s as f64)).powi(classes as i32)
}

/// Flexible-sharding control probability `(m / 2T)^T` for a shard of `m`
/// strength categories and decision threshold `T`, clamped to 1.
pub fn flexible_attack_prob(m: u64, threshold: u64) -> Result<f64, SecurityError> {
    if threshold > m {
        return Err(SecurityError::Domain(format!("T={threshold} > m={m}")));
    }
    if threshold == 0 {
        return Err(SecurityError::Domain("T must be >= 1".into()));
    }
    let v = (m as f64 / (2.0 * threshold as f64)).powi(threshold as i32);
    Ok(v.min(1.0))
}

/// Smallest `T` in `(m/2, m]` keeping the flexible control probability at
/// or below `th`, or None when even `T = m` is not enough.
pub fn min_flexible_threshold(m: u64, th: f64) -> Option<u64> {
    for t in (m / 2 + 1)..=m {
        if flexible_attack_prob(m, t).ok()? <= th {
            return Some(t);
        }
    }
    None
}
