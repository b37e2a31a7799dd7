//! Share validation and countable-share accounting.

use crate::miner::MinerRecord;
use crate::SHARE_CLAIM_FRACTION;
use chain_data::hash::{HashDigest, Hasher256};
use chain_data::structures::Share;
use thiserror::Error;

/// A miner may send at most this many shares per round of the game.
pub const MAX_SHARES_PER_ROUND: usize = 4;

/// Countable shares require at least two shares for the same block.
pub const COUNTABLE_MIN_SHARES: usize = 2;

#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum ShareRejection {
    #[error("nonce outside the sender's try range")]
    OutOfRangeNonce,
    #[error("share difficulty below 25% of the sender's claim")]
    InsufficientDifficulty,
    #[error("signature does not verify against the sender's identity key")]
    BadSignature,
    #[error("share quota for this round exhausted")]
    QuotaExceeded,
    #[error("sender already committed to another block at this height")]
    BranchSwitch,
}

/// Validate a share against the sender's registration and round state.
///
/// `achieved_difficulty` is the difficulty the share's nonce gives the
/// block hash; concrete mining computes it from the hash, simulated
/// mining passes the modelled value.
pub fn validate_share(
    miner: &MinerRecord,
    share: &Share,
    block_hash: &HashDigest,
    achieved_difficulty: f64,
    hasher: &dyn Hasher256,
) -> Result<(), ShareRejection> {
    let range = miner.try_range.as_ref().ok_or(ShareRejection::OutOfRangeNonce)?;
    if !range.contains(&share.nonce) {
        return Err(ShareRejection::OutOfRangeNonce);
    }
    if achieved_difficulty < SHARE_CLAIM_FRACTION * miner.cp_claim as f64 {
        return Err(ShareRejection::InsufficientDifficulty);
    }
    if !share.matches_block(block_hash) || !share.verify_signature(hasher, &miner.identity_key) {
        return Err(ShareRejection::BadSignature);
    }
    if miner.shares_this_round.len() >= MAX_SHARES_PER_ROUND {
        return Err(ShareRejection::QuotaExceeded);
    }
    if let Some(committed) = &miner.committed_block {
        if committed != block_hash {
            return Err(ShareRejection::BranchSwitch);
        }
    }
    Ok(())
}

/// Record an accepted share, fixing the miner's branch commitment once it
/// has two shares for one block.
pub fn record_share(miner: &mut MinerRecord, block_hash: HashDigest, difficulty: f64) {
    miner.shares_this_round.push((block_hash, difficulty));
    if miner.committed_block.is_none() && miner.shares_for(&block_hash) >= COUNTABLE_MIN_SHARES {
        miner.committed_block = Some(block_hash);
    }
}

/// Countable share difficulty of one miner for one block: zero below two
/// shares, otherwise the sum capped at the miner's claim.
pub fn countable_share_difficulty(miner: &MinerRecord, block_hash: &HashDigest) -> f64 {
    let shares: Vec<f64> = miner
        .shares_this_round
        .iter()
        .filter(|(b, _)| b == block_hash)
        .map(|(_, d)| *d)
        .collect();
    if shares.len() < COUNTABLE_MIN_SHARES {
        return 0.0;
    }
    let sum: f64 = shares.iter().sum();
    sum.min(miner.cp_claim as f64)
}
