//! Reward distribution for an announced block.

use chain_data::hash::HashDigest;

/// Split `reward_micro` (micro-coins) over contributors in proportion to
/// their countable share difficulty: `R_i = (SD_i / SD_total) * R`.
/// Amounts round down to micro-coins and the remainder goes to the
/// largest contributor, so the payouts always sum to the reward exactly.
pub fn distribute_rewards(
    contributions: &[(HashDigest, f64)],
    total_sd: f64,
    reward_micro: u64,
) -> Vec<(HashDigest, u64)> {
    if total_sd <= 0.0 || contributions.is_empty() {
        return Vec::new();
    }
    let mut payouts: Vec<(HashDigest, u64)> = contributions
        .iter()
        .map(|(wallet, sd)| {
            (*wallet, (reward_micro as f64 * sd / total_sd).floor() as u64)
        })
        .collect();
    let paid: u64 = payouts.iter().map(|(_, a)| a).sum();
    let remainder = reward_micro.saturating_sub(paid);
    if remainder > 0 {
        let largest = contributions
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        payouts[largest].1 += remainder;
    }
    payouts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MICRO_PER_COIN;

    #[test]
    fn two_miner_example() {
        // SD 212 and 49 of 1000 total with a 100-coin reward
        // pay exactly 21.2 and 4.9 coins.
        let a = HashDigest::from_u64(1);
        let b = HashDigest::from_u64(2);
        let others = HashDigest::from_u64(3);
        let payouts = distribute_rewards(
            &[(a, 212.0), (b, 49.0), (others, 739.0)],
            1000.0,
            100 * MICRO_PER_COIN,
        );
        assert_eq!(payouts[0], (a, 21_200_000));
        assert_eq!(payouts[1], (b, 4_900_000));
        assert_eq!(payouts[2], (others, 73_900_000));
    }

    #[test]
    fn single_contributor_takes_all() {
        let a = HashDigest::from_u64(1);
        let payouts = distribute_rewards(&[(a, 10.0)], 10.0, 7 * MICRO_PER_COIN);
        assert_eq!(payouts, vec![(a, 7 * MICRO_PER_COIN)]);
    }

    #[test]
    fn conservation_with_awkward_ratios() {
        let wallets: Vec<(HashDigest, f64)> =
            (0..7).map(|i| (HashDigest::from_u64(i), 1.0 + i as f64 * 0.37)).collect();
        let total: f64 = wallets.iter().map(|(_, s)| s).sum();
        let payouts = distribute_rewards(&wallets, total, 99 * MICRO_PER_COIN + 1);
        let sum: u64 = payouts.iter().map(|(_, a)| a).sum();
        assert_eq!(sum, 99 * MICRO_PER_COIN + 1);
    }

    #[test]
    fn empty_or_zero_total_pays_nothing() {
        assert!(distribute_rewards(&[], 0.0, 100).is_empty());
        let a = HashDigest::from_u64(1);
        assert!(distribute_rewards(&[(a, 0.0)], 0.0, 100).is_empty());
    }
}
