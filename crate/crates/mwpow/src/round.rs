//! Round lifecycle: statement rates, final acceptance and expulsion.

use crate::ledger::BranchLedger;
use crate::miner::MinerRecord;
use crate::shares::COUNTABLE_MIN_SHARES;
use crate::ACCEPT_MARGIN_FRACTION;
use chain_data::hash::HashDigest;
use std::collections::{BTreeMap, BTreeSet};

/// Difficulty state of one round of the mining game.
#[derive(Clone, Debug)]
pub struct RoundState {
    pub height: u64,
    pub entrance_difficulty: f64,
    pub acceptance_difficulty: f64,
    /// Registered power Rp at this height.
    pub registered_power: f64,
    /// Blocks that reached the entrance difficulty.
    pub candidates: Vec<HashDigest>,
    /// Blocks that reached the acceptance difficulty.
    pub announced: Vec<HashDigest>,
}

impl RoundState {
    pub fn new(height: u64, ed: f64, ad: f64, registered_power: f64) -> Self {
        debug_assert!(ad >= 2.0 * ed, "acceptance difficulty below twice the entrance difficulty");
        RoundState {
            height,
            entrance_difficulty: ed,
            acceptance_difficulty: ad,
            registered_power,
            candidates: Vec::new(),
            announced: Vec::new(),
        }
    }

    pub fn note_candidate(&mut self, block: HashDigest) {
        if !self.candidates.contains(&block) {
            self.candidates.push(block);
        }
    }

    pub fn note_announced(&mut self, block: HashDigest) {
        self.note_candidate(block);
        if !self.announced.contains(&block) {
            self.announced.push(block);
        }
    }
}

/// Statement rate: the fraction of registered power whose owners sent two
/// valid shares for one block at this height without switching branches.
pub fn statement_rate(miners: &[MinerRecord], registered_power: f64) -> f64 {
    if registered_power <= 0.0 {
        return 0.0;
    }
    let conforming: f64 = miners
        .iter()
        .filter(|m| {
            !m.branch_violation
                && m.committed_block
                    .as_ref()
                    .map(|b| m.shares_for(b) >= COUNTABLE_MIN_SHARES)
                    .unwrap_or(false)
        })
        .map(|m| m.cp_claim as f64)
        .sum();
    conforming / registered_power
}

/// Security verdict computed by the multichain layer from the group
/// calculus, an input to final acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SecurityVerdict {
    /// Control probability at or below the threshold.
    Pass,
    /// Control probability above the threshold.
    AboveThreshold,
    /// Two sub-threshold announced blocks whose support-rate gap an
    /// adversary could have forged.
    TieUnresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PendingReason {
    NotAnnounced,
    NotOnHighestBranch,
    LowStatementRate,
    LowSupport,
    InsufficientMargin,
    SecurityThreshold,
    UnresolvedTie,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinalizeOutcome {
    FinallyAccepted,
    Pending(PendingReason),
}

/// Decide final acceptance of one announced block.
///
/// Accepted when (a) it is announced and its branch reaches the highest
/// block height, (b) the statement rate of the latest height is above
/// one half, (c) its branch support exceeds one half of all support at
/// its height and the strongest competing branch plus a quarter of the
/// registered power, and (d) the security verdict passes.
pub fn finalize_block(
    ledger: &BranchLedger,
    block: &HashDigest,
    statement_rate_latest: f64,
    registered_power: f64,
    verdict: SecurityVerdict,
) -> FinalizeOutcome {
    use FinalizeOutcome::*;
    use PendingReason::*;

    let node = match ledger.get(block) {
        Some(n) if n.announced => n,
        _ => return Pending(NotAnnounced),
    };
    if ledger.branch_tip_height(block) < ledger.max_height() {
        return Pending(NotOnHighestBranch);
    }
    if statement_rate_latest <= 0.5 {
        return Pending(LowStatementRate);
    }
    let sr = ledger.support_rate(block).unwrap_or(0.0);
    if sr <= 0.5 {
        return Pending(LowSupport);
    }
    let own = ledger.branch_sd(block);
    let second = ledger
        .blocks_at_height(node.height)
        .iter()
        .filter(|n| n.hash != *block)
        .map(|n| ledger.branch_sd(&n.hash))
        .fold(0.0, f64::max);
    if own <= second + ACCEPT_MARGIN_FRACTION * registered_power {
        return Pending(InsufficientMargin);
    }
    match verdict {
        SecurityVerdict::Pass => FinallyAccepted,
        SecurityVerdict::AboveThreshold => Pending(SecurityThreshold),
        SecurityVerdict::TieUnresolved => Pending(UnresolvedTie),
    }
}

/// Evaluate every announced block and close over ancestors: accepting a
/// block accepts the branch below it. Returns the accepted set.
pub fn finalized_with_ancestors(
    ledger: &BranchLedger,
    announced: &[HashDigest],
    statement_rate_latest: f64,
    registered_power: f64,
    verdict_for: &dyn Fn(&HashDigest) -> SecurityVerdict,
    root: &HashDigest,
) -> BTreeSet<HashDigest> {
    let mut accepted = BTreeSet::new();
    for block in announced {
        if finalize_block(
            ledger,
            block,
            statement_rate_latest,
            registered_power,
            verdict_for(block),
        ) == FinalizeOutcome::FinallyAccepted
        {
            accepted.insert(*block);
            for anc in ledger.ancestors(block) {
                if anc != *root {
                    accepted.insert(anc);
                }
            }
        }
    }
    accepted
}

/// Miners to expel after a round, judged by the shares embedded in the
/// next block: fewer than three embedded shares, or embedded difficulty
/// not above half the claim, and the miner is out.
pub fn end_of_round_expulsion(
    miners: &[MinerRecord],
    embedded_shares: &BTreeMap<HashDigest, Vec<f64>>,
) -> BTreeSet<HashDigest> {
    let mut expelled = BTreeSet::new();
    for m in miners {
        let shares = embedded_shares.get(&m.identity_key);
        let count = shares.map(|s| s.len()).unwrap_or(0);
        let sum: f64 = shares.map(|s| s.iter().sum()).unwrap_or(0.0);
        if count < 3 || sum <= 0.5 * m.cp_claim as f64 {
            expelled.insert(m.identity_key);
        }
    }
    expelled
}
