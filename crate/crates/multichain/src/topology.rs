//! Split and merge decisions.

use crate::boundaries::RestrictionVerdict;
use chain_data::chain_id::ChainId;
use mwpow::MinerRecord;

/// Pending load beyond twice the chain limit triggers a split, provided
/// both offspring would satisfy the chain restrictions.
pub fn split_decision(trans_onhold: u64, k: u64, offspring_ok: bool) -> bool {
    trans_onhold > 2 * k && offspring_ok
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MergeTrigger {
    /// Pending load below K/2 for three consecutive blocks.
    Underfill,
    /// Five block intervals without a finally accepted block.
    LocalHalt,
    /// A chain restriction failed.
    Restriction(RestrictionVerdict),
}

/// Consecutive underfilled blocks required before the lower chain limit
/// triggers a merge.
pub const UNDERFILL_STREAK: u32 = 3;

/// Block intervals without final acceptance that declare a local halt.
pub const HALT_INTERVALS: u32 = 5;

pub fn merge_triggers(
    underfill_streak: u32,
    heights_without_final: u32,
    restrictions: RestrictionVerdict,
) -> Option<MergeTrigger> {
    if restrictions.must_merge() {
        return Some(MergeTrigger::Restriction(restrictions));
    }
    if heights_without_final >= HALT_INTERVALS {
        return Some(MergeTrigger::LocalHalt);
    }
    if underfill_streak >= UNDERFILL_STREAK {
        return Some(MergeTrigger::Underfill);
    }
    None
}

/// The chain a merging chain joins: the live chain closest in id,
/// preferring the smaller id on ties.
pub fn merge_target(of: ChainId, live: &[ChainId]) -> Option<ChainId> {
    live.iter()
        .filter(|&&c| c != of)
        .min_by_key(|&&c| (of.distance(&c), c))
        .copied()
}

/// Id of the chain formed by a simultaneous merge of a whole component.
/// Sibling pairs reunite to their parent first, then unrelated chains
/// merge smallest-first, so whole subtrees collapse to their old names.
pub fn merge_component_id(mut ids: Vec<ChainId>) -> ChainId {
    assert!(!ids.is_empty());
    ids.sort();
    ids.dedup();
    while ids.len() > 1 {
        let sibling_pair = ids
            .iter()
            .enumerate()
            .find_map(|(i, a)| {
                ids[i + 1..]
                    .iter()
                    .position(|b| a.is_sibling_of(b))
                    .map(|j| (i, i + 1 + j))
            });
        let (i, j) = sibling_pair.unwrap_or((0, 1));
        let merged = ChainId::merge(ids[i], ids[j]);
        ids.remove(j);
        ids.remove(i);
        ids.push(merged);
        ids.sort();
        ids.dedup();
    }
    ids[0]
}

/// Split the participants of a chain: ranked ascending by claim, even
/// ranks go to the even child, odd ranks to the odd child.
pub fn split_participants(mut miners: Vec<MinerRecord>) -> (Vec<MinerRecord>, Vec<MinerRecord>) {
    mwpow::canonical_sort(&mut miners);
    let mut even = Vec::with_capacity(miners.len() / 2 + 1);
    let mut odd = Vec::with_capacity(miners.len() / 2 + 1);
    for (i, m) in miners.into_iter().enumerate() {
        if i % 2 == 0 {
            even.push(m);
        } else {
            odd.push(m);
        }
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain_data::hash::HashDigest;

    #[test]
    fn split_requires_load_and_valid_offspring() {
        assert!(split_decision(201, 100, true));
        assert!(!split_decision(201, 100, false));
        assert!(!split_decision(200, 100, true)); // exactly 2K is not over
        assert!(!split_decision(100, 100, true));
    }

    #[test]
    fn merge_trigger_priorities() {
        assert_eq!(merge_triggers(0, 0, RestrictionVerdict::Ok), None);
        assert_eq!(
            merge_triggers(3, 0, RestrictionVerdict::Ok),
            Some(MergeTrigger::Underfill)
        );
        assert_eq!(
            merge_triggers(0, 5, RestrictionVerdict::Ok),
            Some(MergeTrigger::LocalHalt)
        );
        assert_eq!(
            merge_triggers(0, 0, RestrictionVerdict::PowerImbalance),
            Some(MergeTrigger::Restriction(RestrictionVerdict::PowerImbalance))
        );
    }

    #[test]
    fn merge_target_prefers_closest_then_smaller() {
        // C5 with candidates C4 (distance 1) and C3 (distance 2): C4.
        let live = [ChainId::new(3), ChainId::new(4), ChainId::new(5)];
        assert_eq!(merge_target(ChainId::new(5), &live), Some(ChainId::new(4)));
        // Equidistant C4 and C6 from C5: smaller id wins.
        let live = [ChainId::new(4), ChainId::new(5), ChainId::new(6)];
        assert_eq!(merge_target(ChainId::new(5), &live), Some(ChainId::new(4)));
        assert_eq!(merge_target(ChainId::new(5), &[ChainId::new(5)]), None);
    }

    #[test]
    fn component_ids() {
        assert_eq!(
            merge_component_id(vec![ChainId::new(4), ChainId::new(5)]),
            ChainId::new(2)
        );
        assert_eq!(
            merge_component_id(vec![ChainId::new(3), ChainId::new(5), ChainId::new(6)]),
            ChainId::new(3)
        );
        assert_eq!(
            merge_component_id(vec![ChainId::new(4), ChainId::new(5), ChainId::new(3)]),
            ChainId::new(1)
        );
    }

    #[test]
    fn participants_alternate_by_rank() {
        let miners: Vec<MinerRecord> = [1u64, 2, 3, 4]
            .iter()
            .map(|&c| MinerRecord::new(HashDigest::from_u64(c), HashDigest::from_u64(c), c))
            .collect();
        let (even, odd) = split_participants(miners);
        let claims = |v: &[MinerRecord]| v.iter().map(|m| m.cp_claim).collect::<Vec<_>>();
        assert_eq!(claims(&even), vec![1, 3]);
        assert_eq!(claims(&odd), vec![2, 4]);
    }
}
