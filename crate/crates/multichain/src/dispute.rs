//! Global-header dispute resolution.
//!
//! When two blocks both claim final acceptance for one chain at one
//! height, an outside observer synchronises the participant list from the
//! last block before the conflict, revalidates each branch's shares
//! (signatures by registered identity keys, nonces inside registered try
//! ranges) and sides with the block backed by registered power. A branch
//! whose shares cannot be tied to registered participants is a forgery.

use chain_data::hash::{HashDigest, Hasher256};
use chain_data::structures::Share;
use mwpow::MinerRecord;

/// One claimed finally-accepted block with the shares backing it.
#[derive(Clone, Debug)]
pub struct ClaimedBranch {
    pub block_hash: HashDigest,
    /// Claimed sender identity and the share itself.
    pub shares: Vec<(HashDigest, Share)>,
    /// True when the block's global-header entries match the observer's
    /// view of other chains; a wrong entry disqualifies the block.
    pub global_header_consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DisputeOutcome {
    /// The genuine block and its validly backed power.
    Genuine { block_hash: HashDigest, backed_power: f64 },
    /// Neither candidate has a validly signed majority; the chain takes
    /// the local-halt path.
    Unresolved,
}

/// Power validly backing a branch: for every share, the claimed sender
/// must be registered, the signature must verify and the nonce must lie
/// in the sender's try range. Each valid sender's claim counts once.
fn backed_power(
    branch: &ClaimedBranch,
    participants: &[MinerRecord],
    hasher: &dyn Hasher256,
) -> f64 {
    let mut backers: Vec<HashDigest> = Vec::new();
    for (identity, share) in &branch.shares {
        let Some(miner) = participants.iter().find(|m| m.identity_key == *identity) else {
            continue; // unregistered sender
        };
        if !share.verify_signature(hasher, identity) || !share.matches_block(&branch.block_hash) {
            continue;
        }
        let Some(range) = &miner.try_range else { continue };
        if !range.contains(&share.nonce) {
            continue;
        }
        if !backers.contains(identity) {
            backers.push(*identity);
        }
    }
    backers
        .iter()
        .map(|id| {
            participants
                .iter()
                .find(|m| m.identity_key == *id)
                .map(|m| m.cp_claim as f64)
                .unwrap_or(0.0)
        })
        .sum()
}

/// Resolve a conflict between two claimed finally-accepted blocks.
///
/// `participants` is the registered list from the last pre-conflict
/// block. The branch backed by a majority of the registered power wins;
/// blocks carrying a wrong global-header entry are rejected outright.
pub fn resolve_dispute(
    a: &ClaimedBranch,
    b: &ClaimedBranch,
    participants: &[MinerRecord],
    hasher: &dyn Hasher256,
) -> DisputeOutcome {
    let registered: f64 = participants.iter().map(|m| m.cp_claim as f64).sum();
    let mut candidates = Vec::new();
    for branch in [a, b] {
        if !branch.global_header_consistent {
            continue;
        }
        let power = backed_power(branch, participants, hasher);
        if power > registered / 2.0 {
            candidates.push((branch.block_hash, power));
        }
    }
    match candidates.len() {
        1 => DisputeOutcome::Genuine {
            block_hash: candidates[0].0,
            backed_power: candidates[0].1,
        },
        _ => DisputeOutcome::Unresolved,
    }
}
