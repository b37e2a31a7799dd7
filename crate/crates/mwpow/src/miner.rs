//! Registered miners and their nonce try ranges.

use chain_data::hash::{dec, HashDigest};
use num_bigint::BigUint;

/// Inclusive nonce interval over the 2^256 space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TryRange {
    pub lo: HashDigest,
    pub hi: HashDigest,
}

impl TryRange {
    pub fn contains(&self, nonce: &HashDigest) -> bool {
        self.lo <= *nonce && *nonce <= self.hi
    }
}

/// A registered participant of one chain's mining game.
#[derive(Clone, Debug)]
pub struct MinerRecord {
    pub identity_key: HashDigest,
    pub wallet: HashDigest,
    /// Calculation power claim, difficulty units per game iteration.
    pub cp_claim: u64,
    pub try_range: Option<TryRange>,
    /// Height at which the miner entered this chain; genesis members may
    /// carry negative pseudo-heights to stagger reassignment.
    pub join_height: i64,
    /// Remaining iterations of the lifelength before reassignment.
    pub life_counter: u32,
    /// Shares accepted this round: target block and achieved difficulty.
    pub shares_this_round: Vec<(HashDigest, f64)>,
    /// Set once the miner has sent two shares for one block this round.
    pub committed_block: Option<HashDigest>,
    /// True when the miner attempted a branch switch this round; such
    /// miners do not count toward the statement rate.
    pub branch_violation: bool,
}

impl MinerRecord {
    pub fn new(identity_key: HashDigest, wallet: HashDigest, cp_claim: u64) -> Self {
        MinerRecord {
            identity_key,
            wallet,
            cp_claim,
            try_range: None,
            join_height: 0,
            life_counter: 0,
            shares_this_round: Vec::new(),
            committed_block: None,
            branch_violation: false,
        }
    }

    pub fn shares_for(&self, block: &HashDigest) -> usize {
        self.shares_this_round.iter().filter(|(b, _)| b == block).count()
    }

    pub fn reset_round(&mut self) {
        self.shares_this_round.clear();
        self.committed_block = None;
        self.branch_violation = false;
    }
}

/// Canonical participant-list order: ascending claim, ties by identity key.
pub fn canonical_sort(miners: &mut [MinerRecord]) {
    miners.sort_by(|a, b| {
        a.cp_claim
            .cmp(&b.cp_claim)
            .then_with(|| a.identity_key.cmp(&b.identity_key))
    });
}

/// Partition the nonce space into try ranges proportional to claims.
///
/// Boundary `i` is `floor(2^256 * cum_i / total)` over the canonical
/// order, so the ranges tile `[0, 2^256)` exactly for any positive claim
/// vector. Miners are sorted canonically in place.
pub fn assign_try_ranges(miners: &mut [MinerRecord]) {
    canonical_sort(miners);
    let total: u64 = miners.iter().map(|m| m.cp_claim).sum();
    if total == 0 {
        for m in miners.iter_mut() {
            m.try_range = None;
        }
        return;
    }
    let space = BigUint::from(1u8) << 256u32;
    let total_big = BigUint::from(total);
    let mut cum = 0u64;
    let mut lo = HashDigest::ZERO;
    let n = miners.len();
    for (i, m) in miners.iter_mut().enumerate() {
        cum += m.cp_claim;
        let hi = if i + 1 == n {
            HashDigest::MAX
        } else {
            let bound = &space * BigUint::from(cum) / &total_big;
            dec(&digest_from_biguint(&bound))
        };
        m.try_range = Some(TryRange { lo, hi });
        lo = chain_data::hash::inc(&hi);
    }
}

fn digest_from_biguint(v: &BigUint) -> HashDigest {
    let bytes = v.to_bytes_be();
    assert!(bytes.len() <= 32, "value exceeds 256 bits");
    let mut out = [0u8; 32];
    out[32 - bytes.len()..].copy_from_slice(&bytes);
    HashDigest(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn miners(claims: &[u64]) -> Vec<MinerRecord> {
        claims
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                MinerRecord::new(HashDigest::from_u64(i as u64), HashDigest::from_u64(100 + i as u64), c)
            })
            .collect()
    }

    fn half_point() -> HashDigest {
        let mut b = [0xFFu8; 32];
        b[0] = 0x7F;
        HashDigest(b)
    }

    #[test]
    fn two_equal_miners_split_at_half() {
        let mut ms = miners(&[1, 1]);
        assign_try_ranges(&mut ms);
        let r0 = ms[0].try_range.unwrap();
        let r1 = ms[1].try_range.unwrap();
        assert_eq!(r0.lo, HashDigest::ZERO);
        assert_eq!(r0.hi, half_point());
        assert_eq!(r1.lo, chain_data::hash::inc(&half_point()));
        assert_eq!(r1.hi, HashDigest::MAX);
    }

    #[test]
    fn quarter_boundary_for_100_300() {
        let mut ms = miners(&[100, 300]);
        assign_try_ranges(&mut ms);
        // Boundary at 2^256 / 4: first range ends at 2^254 - 1.
        let r0 = ms[0].try_range.unwrap();
        let mut quarter_top = [0xFFu8; 32];
        quarter_top[0] = 0x3F;
        assert_eq!(r0.hi, HashDigest(quarter_top));
    }

    #[test]
    fn single_miner_owns_everything() {
        let mut ms = miners(&[42]);
        assign_try_ranges(&mut ms);
        let r = ms[0].try_range.unwrap();
        assert_eq!(r.lo, HashDigest::ZERO);
        assert_eq!(r.hi, HashDigest::MAX);
    }

    #[test]
    fn ranges_partition_without_gaps() {
        let mut ms = miners(&[7, 13, 1, 1000, 999, 3]);
        assign_try_ranges(&mut ms);
        assert_eq!(ms[0].try_range.unwrap().lo, HashDigest::ZERO);
        for w in ms.windows(2) {
            let a = w[0].try_range.unwrap();
            let b = w[1].try_range.unwrap();
            assert_eq!(chain_data::hash::inc(&a.hi), b.lo);
        }
        assert_eq!(ms.last().unwrap().try_range.unwrap().hi, HashDigest::MAX);
    }

    #[test]
    fn canonical_order_is_claim_then_key() {
        let mut ms = miners(&[5, 5, 1]);
        assign_try_ranges(&mut ms);
        assert_eq!(ms[0].cp_claim, 1);
        assert!(ms[1].identity_key < ms[2].identity_key);
        assert_eq!(ms[1].cp_claim, 5);
    }
}
