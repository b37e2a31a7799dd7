//! Strength-group boundaries and the per-chain restrictions.

use security::{block_control_prob, GroupProfile, VoteProfile};

/// Boundary candidates a chain reports in its block header: the claims at
/// the Sg quantile positions of its ascending claim list,
/// `RCP[floor(i * NPC / Sg)]`.
pub fn bl_candidate(claims_ascending: &[u64], sg: usize) -> Vec<u64> {
    assert!(!claims_ascending.is_empty(), "chain without participants");
    let npc = claims_ascending.len();
    (0..sg)
        .map(|i| claims_ascending[i * npc / sg])
        .collect()
}

/// System-wide group boundaries: the element-wise minimum of every live
/// chain's boundary candidates.
pub fn group_boundaries(per_chain: &[Vec<u64>]) -> Vec<u64> {
    assert!(!per_chain.is_empty(), "no chains");
    let sg = per_chain[0].len();
    (0..sg)
        .map(|i| per_chain.iter().map(|c| c[i]).min().unwrap())
        .collect()
}

/// Threshold Chainpower: the summed claims of the weakest two thirds,
/// `RCP[0 ..= floor(2(NPC-1)/3)]` of the ascending list.
pub fn threshold_chainpower(claims_ascending: &[u64]) -> u64 {
    if claims_ascending.is_empty() {
        return 0;
    }
    let top = 2 * (claims_ascending.len() as u64 - 1) / 3;
    claims_ascending.iter().take(top as usize + 1).sum()
}

/// Group of a claim under boundaries `bl`: the highest group whose lower
/// boundary the claim reaches. Claims below every boundary fall into
/// group 0.
pub fn group_of(claim: u64, bl: &[u64]) -> usize {
    let mut g = 0;
    for (i, &b) in bl.iter().enumerate() {
        if claim >= b {
            g = i;
        }
    }
    g
}

/// Member count per group for a chain's claims.
pub fn group_counts(claims: &[u64], bl: &[u64]) -> Vec<u64> {
    let mut counts = vec![0u64; bl.len()];
    for &c in claims {
        counts[group_of(c, bl)] += 1;
    }
    counts
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RestrictionVerdict {
    Ok,
    /// `2 * Threshold Chainpower < Chainpower`.
    PowerImbalance,
    /// Some group has no member in the chain.
    MissingGroup(usize),
    /// Even full participation cannot push the control probability under
    /// the security threshold.
    SecurityThreshold(f64),
}

impl RestrictionVerdict {
    pub fn must_merge(&self) -> bool {
        !matches!(self, RestrictionVerdict::Ok)
    }
}

/// The three chain restrictions, checked whenever group boundaries are
/// refreshed. `claims_ascending` are the chain's claims; `groups` is the
/// system-wide profile under the current boundaries.
pub fn check_chain_restrictions(
    claims_ascending: &[u64],
    bl: &[u64],
    groups: &GroupProfile,
    threshold: f64,
) -> RestrictionVerdict {
    let chainpower: u64 = claims_ascending.iter().sum();
    let threshold_cp = threshold_chainpower(claims_ascending);
    if 2 * threshold_cp < chainpower {
        return RestrictionVerdict::PowerImbalance;
    }
    let counts = group_counts(claims_ascending, bl);
    if let Some(missing) = counts.iter().position(|&c| c == 0) {
        return RestrictionVerdict::MissingGroup(missing);
    }
    // Full participation: every member of every group votes. Voter counts
    // are clamped to the per-group population the profile assumes.
    let votes: Vec<u64> = counts.iter().map(|&c| c.min(groups.per_group_count)).collect();
    match block_control_prob(groups, &VoteProfile::new(votes)) {
        Ok(p) if p > threshold => RestrictionVerdict::SecurityThreshold(p),
        _ => RestrictionVerdict::Ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bl_candidate_octile_example() {
        // Claims 1..=8 with four groups: boundaries at ranks 0,2,4,6.
        let claims: Vec<u64> = (1..=8).collect();
        assert_eq!(bl_candidate(&claims, 4), vec![1, 3, 5, 7]);
    }

    #[test]
    fn bl_candidate_short_chain_repeats() {
        let claims = vec![5, 9];
        assert_eq!(bl_candidate(&claims, 4), vec![5, 5, 9, 9]);
    }

    #[test]
    fn group_boundaries_take_minima() {
        let a = vec![1, 3, 5, 7];
        let b = vec![2, 2, 6, 6];
        assert_eq!(group_boundaries(&[a.clone(), b]), vec![1, 2, 5, 6]);
        assert_eq!(group_boundaries(&[a.clone(), a.clone()]), a);
        let weaker = vec![0, 1, 2, 3];
        assert_eq!(group_boundaries(&[a, weaker.clone()]), weaker);
    }

    #[test]
    fn threshold_chainpower_examples() {
        // floor(2*3/3) = 2: the three weakest of four.
        assert_eq!(threshold_chainpower(&[1, 1, 1, 97]), 3);
        assert_eq!(threshold_chainpower(&[1, 1, 1, 1]), 3);
        assert_eq!(threshold_chainpower(&[10]), 10);
    }

    #[test]
    fn power_imbalance_restriction() {
        let groups = GroupProfile::new(8, vec![1, 1], 50, 100).unwrap();
        // 2 * 3 < 100: a whale breaks the balance.
        assert_eq!(
            check_chain_restrictions(&[1, 1, 1, 97], &[1, 1], &groups, 1e-6),
            RestrictionVerdict::PowerImbalance
        );
        // 2 * 3 >= 4: balanced claims pass the power test.
        assert_ne!(
            check_chain_restrictions(&[1, 1, 1, 1], &[1, 1], &groups, 1e-6),
            RestrictionVerdict::PowerImbalance
        );
    }

    #[test]
    fn missing_group_restriction() {
        let groups = GroupProfile::new(8, vec![1, 10], 20, 40).unwrap();
        let v = check_chain_restrictions(&[1, 2, 3], &[1, 10], &groups, 1e-6);
        assert_eq!(v, RestrictionVerdict::MissingGroup(1));
    }

    #[test]
    fn security_threshold_restriction() {
        // Two groups of 20 nodes each, adversary fields AP/tt = 30/3 = 10
        // per group; a balanced four-member chain with two voters per
        // group gives (C(10,2)/C(20,2))^2, far above 1e-6.
        let groups = GroupProfile::new(40, vec![1, 2], 30, 60).unwrap();
        let v = check_chain_restrictions(&[1, 1, 2, 2], &[1, 2], &groups, 1e-6);
        let expect = (45.0f64 / 190.0).powi(2);
        match v {
            RestrictionVerdict::SecurityThreshold(p) => assert!((p - expect).abs() < 1e-12),
            other => panic!("expected security verdict, got {other:?}"),
        }
    }

    #[test]
    fn group_of_boundaries() {
        let bl = vec![1, 3, 5, 7];
        assert_eq!(group_of(1, &bl), 0);
        assert_eq!(group_of(2, &bl), 0);
        assert_eq!(group_of(3, &bl), 1);
        assert_eq!(group_of(8, &bl), 3);
        assert_eq!(group_of(0, &bl), 0);
    }
}
