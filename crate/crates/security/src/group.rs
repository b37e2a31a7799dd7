//! Group-weighted block control probability.
//!
//! Nodes are partitioned into `Sg` equal-count groups by ascending
//! strength; `bl(i)` is the lower strength boundary of group `i`. A block's
//! voters are counted per group. Valuing every group-i voter at `bl(i)`
//! (an overestimate in the adversary's favour), an adversary of total
//! strength `AP` can field at most `floor(AP / tt)` nodes per voting
//! group, where `tt` sums the boundaries of the groups that voted. The
//! chance that every voter is adversary-controlled is then a product of
//! per-group hypergeometric draws.

use crate::binomial::{binom, ratio_to_f64};
use crate::SecurityError;
use num_bigint::BigUint;
use num_traits::One;

/// Strength-group structure of the node population.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile {
    /// Group count Sg.
    pub sg: usize,
    /// Ascending lower strength boundary per group, length Sg.
    pub bl: Vec<u64>,
    /// Total adversary strength budget.
    pub ap: u64,
    /// Total strength of all nodes.
    pub total_strength: u64,
    /// Nodes per group: n / Sg.
    pub per_group_count: u64,
}

impl GroupProfile {
    pub fn new(n: u64, bl: Vec<u64>, ap: u64, total_strength: u64) -> Result<Self, SecurityError> {
        if bl.is_empty() {
            return Err(SecurityError::Domain("at least one group required".into()));
        }
        if bl.windows(2).any(|w| w[0] > w[1]) {
            return Err(SecurityError::Domain("group boundaries must ascend".into()));
        }
        if ap > total_strength {
            return Err(SecurityError::Domain(format!(
                "adversary strength {ap} exceeds total {total_strength}"
            )));
        }
        let sg = bl.len();
        if n < sg as u64 {
            return Err(SecurityError::Domain(format!("n={n} smaller than Sg={sg}")));
        }
        Ok(GroupProfile { sg, bl, ap, total_strength, per_group_count: n / sg as u64 })
    }

    /// Adversary strength set to exactly half the total, the p/2 bound.
    pub fn with_half_adversary(n: u64, bl: Vec<u64>, total_strength: u64) -> Result<Self, SecurityError> {
        Self::new(n, bl, total_strength / 2, total_strength)
    }
}

/// Votes cast for one block, counted per group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoteProfile {
    /// Voter count per group, length Sg.
    pub voters_per_group: Vec<u64>,
}

impl VoteProfile {
    pub fn new(voters_per_group: Vec<u64>) -> Self {
        VoteProfile { voters_per_group }
    }

    /// Group-voted flags: 1 where the group has at least one voter.
    pub fn voted(&self) -> impl Iterator<Item = bool> + '_ {
        self.voters_per_group.iter().map(|&k| k > 0)
    }
}

/// Probability that the voter set backing a block is entirely
/// adversary-controlled.
///
/// `tt` sums `bl(i)` over voting groups; the adversary fields
/// `floor(AP / tt)` nodes per group (fractional nodes are impossible), and
/// each voting group contributes `C(AP/tt, k) / C(n/Sg, k)`. A group whose
/// voter count exceeds the adversary's per-group capacity makes the
/// product zero. Errors when no group voted.
pub fn block_control_prob(groups: &GroupProfile, votes: &VoteProfile) -> Result<f64, SecurityError> {
    if votes.voters_per_group.len() != groups.sg {
        return Err(SecurityError::Domain(format!(
            "vote profile has {} groups, expected {}",
            votes.voters_per_group.len(),
            groups.sg
        )));
    }
    let g = groups.per_group_count;
    let mut tt: u64 = 0;
    for (i, &k) in votes.voters_per_group.iter().enumerate() {
        if k > g {
            return Err(SecurityError::Domain(format!(
                "group {i} has {k} voters but only {g} members"
            )));
        }
        if k > 0 {
            tt += groups.bl[i];
        }
    }
    if tt == 0 {
        return Err(SecurityError::NoVotes);
    }
    let adv_per_group = groups.ap / tt;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for &k in &votes.voters_per_group {
        if k == 0 {
            continue;
        }
        if k > adv_per_group {
            return Ok(0.0);
        }
        num *= binom(adv_per_group, k);
        den *= binom(g, k);
    }
    Ok(ratio_to_f64(&num, &den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_groups(n: u64, sg: usize, ap: u64, total: u64) -> GroupProfile {
        GroupProfile::new(n, vec![1; sg], ap, total).unwrap()
    }

    #[test]
    fn two_group_toy_case() {
        // Sg=2, n=4 (2 per group), bl=[1,1], AP/tt = 1: one voter in each
        // group gives (C(1,1)/C(2,1))^2 = 1/4.
        let g = uniform_groups(4, 2, 2, 8);
        let p = block_control_prob(&g, &VoteProfile::new(vec![1, 1])).unwrap();
        assert!((p - 0.25).abs() < 1e-15);
    }

    #[test]
    fn overfull_group_is_impossible_for_adversary() {
        let g = uniform_groups(4, 2, 2, 8);
        // AP/tt = 1 per group; two voters in a group cannot all be adversary.
        let p = block_control_prob(&g, &VoteProfile::new(vec![2, 1])).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn adversary_owning_everyone_gives_one() {
        // AP = total strength, every group full: every draw is adversary.
        let g = GroupProfile::new(4, vec![1, 1], 4, 4).unwrap();
        let p = block_control_prob(&g, &VoteProfile::new(vec![2, 2])).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn no_votes_is_an_error() {
        let g = uniform_groups(4, 2, 2, 8);
        assert_eq!(
            block_control_prob(&g, &VoteProfile::new(vec![0, 0])),
            Err(SecurityError::NoVotes)
        );
    }

    #[test]
    fn fewer_voting_groups_raise_the_probability() {
        // Dropping a group from the voter set shrinks tt, growing the
        // adversary's per-group capacity: the block gets easier to forge.
        let g = GroupProfile::new(40, vec![5, 5, 5, 5], 100, 200).unwrap();
        let full = block_control_prob(&g, &VoteProfile::new(vec![2, 2, 2, 2])).unwrap();
        let partial = block_control_prob(&g, &VoteProfile::new(vec![2, 2, 2, 0])).unwrap();
        assert!(partial > full, "partial={partial} full={full}");
    }

    #[test]
    fn truncation_of_fractional_capacity() {
        // AP=10, tt=4 -> capacity floor(10/4) = 2 per group.
        let g = GroupProfile::new(8, vec![2, 2], 10, 20).unwrap();
        let p = block_control_prob(&g, &VoteProfile::new(vec![2, 1])).unwrap();
        // C(2,2)/C(4,2) * C(2,1)/C(4,1) = (1/6)(1/2).
        assert!((p - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn probabilities_stay_in_unit_interval() {
        for ap in 0..=30u64 {
            let g = GroupProfile::new(30, vec![1, 2, 3], ap, 30).unwrap();
            for k in 0..=7u64 {
                let p = block_control_prob(&g, &VoteProfile::new(vec![k, 7 - k, 1])).unwrap();
                assert!((0.0..=1.0).contains(&p), "ap={ap} k={k}: {p}");
            }
        }
    }
}
