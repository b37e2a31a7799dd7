//! Fuel-up power adjustment.

use crate::boundaries::{group_of, threshold_chainpower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAdjustOutcome {
    /// Adjusted claims, index-parallel to the newcomer slice.
    pub adjusted_claims: Vec<u64>,
    /// True when clipping was applied to top-group newcomers.
    pub clipped: bool,
    /// True when the chain still violates the power balance after
    /// clipping and must merge.
    pub must_merge: bool,
}

/// Adjust newly added claims to preserve the power balance.
///
/// After adding the newcomers, if `2 * Threshold Chainpower < Chainpower`
/// the intended difficulty of newcomers in the top group is lowered to
/// `bl(Sg-1)`; a chain still violating the balance is flagged for merge.
/// Adjusted claims become the reference for the next try ranges.
pub fn adjust_new_power(
    existing_claims: &[u64],
    newcomer_claims: &[u64],
    bl: &[u64],
) -> PowerAdjustOutcome {
    let balanced = |newcomers: &[u64]| {
        let mut all: Vec<u64> = existing_claims.iter().chain(newcomers).copied().collect();
        all.sort_unstable();
        let power: u64 = all.iter().sum();
        2 * threshold_chainpower(&all) >= power
    };
    if balanced(newcomer_claims) {
        return PowerAdjustOutcome {
            adjusted_claims: newcomer_claims.to_vec(),
            clipped: false,
            must_merge: false,
        };
    }
    let top_group = bl.len() - 1;
    let cap = bl[top_group];
    let adjusted: Vec<u64> = newcomer_claims
        .iter()
        .map(|&c| if group_of(c, bl) == top_group { c.min(cap) } else { c })
        .collect();
    let ok = balanced(&adjusted);
    PowerAdjustOutcome { adjusted_claims: adjusted, clipped: true, must_merge: !ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whale_claim_is_clipped_to_top_boundary() {
        // Ten members of 10 each; a 500-claim newcomer breaks the
        // balance and is clipped to bl(Sg-1) = 12, restoring it.
        let existing = [10u64; 10];
        let bl = [1u64, 5, 9, 12];
        let out = adjust_new_power(&existing, &[500], &bl);
        assert!(out.clipped);
        assert_eq!(out.adjusted_claims, vec![12]);
        assert!(!out.must_merge);
    }

    #[test]
    fn balanced_claims_pass_untouched() {
        let existing = [10u64; 10];
        let bl = [1u64, 5, 9, 12];
        let out = adjust_new_power(&existing, &[9, 11], &bl);
        assert!(!out.clipped);
        assert_eq!(out.adjusted_claims, vec![9, 11]);
        assert!(!out.must_merge);
    }

    #[test]
    fn insufficient_clipping_flags_merge() {
        // Tiny chain: even clipped to the top boundary the newcomer
        // dominates, so the chain must merge.
        let existing = [1u64, 1];
        let bl = [1u64, 50];
        let out = adjust_new_power(&existing, &[400], &bl);
        assert!(out.clipped);
        assert_eq!(out.adjusted_claims, vec![50]);
        assert!(out.must_merge);
    }
}
