//! Whole-block validation against a node's local view.

use crate::KNOWN_CONTENT_FRACTION;
use chain_data::hash::{HashDigest, Hasher256};
use chain_data::structures::Block;
use std::collections::HashSet;
use thiserror::Error;

/// The validator's local state: mempool content, spent-input set and the
/// governance test from the chain's duty range.
pub struct LocalView<'a> {
    /// Hashes of shares previously seen in the mempool.
    pub seen_shares: &'a HashSet<HashDigest>,
    /// Hashes of new joins previously seen.
    pub seen_new_joins: &'a HashSet<HashDigest>,
    /// Transaction ids already accepted on this chain or its history.
    pub known_txs: &'a HashSet<HashDigest>,
    /// Inputs already consumed.
    pub spent_inputs: &'a HashSet<HashDigest>,
    /// Duty-range governance test for a transaction id.
    pub governs: &'a dyn Fn(&HashDigest) -> bool,
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BlockRejection {
    #[error("input {0} already spent")]
    DoubleSpend(HashDigest),
    #[error("input {0} unknown to this chain")]
    MissingInput(HashDigest),
    #[error("transaction {0} outside the duty range")]
    OutsideDutyRange(HashDigest),
    #[error("only {seen} of {total} shares and joins previously seen")]
    UnknownContent { seen: usize, total: usize },
    #[error("malformed block: {0}")]
    Malformed(String),
}

/// Accept a block only when its transactions are governed, inputs exist
/// and are unspent, and at least 90% of its shares and new joins were
/// already in the validator's mempool.
pub fn validate_block(
    block: &Block,
    view: &LocalView<'_>,
    k: usize,
    hasher: &dyn Hasher256,
) -> Result<(), BlockRejection> {
    block
        .validate_shape(k)
        .map_err(|e| BlockRejection::Malformed(e.to_string()))?;
    let mut spent_here: HashSet<HashDigest> = HashSet::new();
    for tx in &block.transactions {
        if !(view.governs)(&tx.id) {
            return Err(BlockRejection::OutsideDutyRange(tx.id));
        }
        for input in &tx.inputs {
            if view.spent_inputs.contains(input) || spent_here.contains(input) {
                return Err(BlockRejection::DoubleSpend(*input));
            }
            if !view.known_txs.contains(input) {
                return Err(BlockRejection::MissingInput(*input));
            }
            spent_here.insert(*input);
        }
    }
    let total = block.shares.len() + block.new_joins.len();
    if total > 0 {
        let mut seen = 0usize;
        for (_, share) in &block.shares {
            if view.seen_shares.contains(&hasher.digest(&share.encode())) {
                seen += 1;
            }
        }
        for nj in &block.new_joins {
            if view.seen_new_joins.contains(&hasher.digest(&nj.encode())) {
                seen += 1;
            }
        }
        if (seen as f64) < KNOWN_CONTENT_FRACTION * total as f64 {
            return Err(BlockRejection::UnknownContent { seen, total });
        }
    }
    Ok(())
}
