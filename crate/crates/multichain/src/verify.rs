//! Exact-assignment verification of a New Join against the Pab that made
//! the assignment.

use crate::pab::assigned_chain_for_rank;
use chain_data::chain_id::ChainId;
use chain_data::hash::{HashDigest, Hasher256};
use chain_data::merkle::merkle_verify;
use chain_data::structures::{AssignmentBox, NewJoin};
use std::collections::HashSet;
use thiserror::Error;

/// What a verifying chain knows about the assigning Pab: the header hash,
/// the global root it carried, the box commitment and the section layout.
#[derive(Clone, Debug)]
pub struct PabSummary {
    pub pab_hash: HashDigest,
    pub mgbh: HashDigest,
    pub box_root: HashDigest,
    pub new_count: u32,
    /// New-participant subsection count, min(NC, K) at creation.
    pub subsections: u32,
    /// Re-assignment subsections: destination and entry count, in order.
    pub reassignment: Vec<(ChainId, u32)>,
    /// Live chains ranked alphabetically at Pab creation.
    pub ranked_chains: Vec<ChainId>,
}

impl PabSummary {
    pub fn from_box(
        pab_hash: HashDigest,
        mgbh: HashDigest,
        boxed: &AssignmentBox,
        ranked_chains: Vec<ChainId>,
        hasher: &dyn Hasher256,
    ) -> Self {
        PabSummary {
            pab_hash,
            mgbh,
            box_root: boxed.root(hasher),
            new_count: boxed.new_count() as u32,
            subsections: boxed.new_participant.len().max(1) as u32,
            reassignment: boxed
                .reassignment
                .iter()
                .map(|(id, s)| (*id, s.len() as u32))
                .collect(),
            ranked_chains,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum AssignmentInvalid {
    #[error("merkle branch does not reconstruct the assignment-box root")]
    BadProof,
    #[error("the entry is assigned to a different chain")]
    WrongDestination,
    #[error("the assigning Pab is not the chain's latest finally accepted Pab")]
    StalePab,
    #[error("this New Join was already used")]
    Replay,
}

/// Verify that `new_join` proves an assignment to `verifying_chain`.
///
/// Checks, in order: the Merkle branch against the box root; the
/// deterministic destination of the entry's subsection; that the Pab is
/// the assigner's latest finally accepted Pab; and that the join was not
/// used before.
pub fn verify_assignment(
    new_join: &NewJoin,
    pab: &PabSummary,
    verifying_chain: ChainId,
    latest_final_pab_of_assigner: &HashDigest,
    used: &HashSet<HashDigest>,
    hasher: &dyn Hasher256,
) -> Result<(), AssignmentInvalid> {
    if new_join.block_header_hash != pab.pab_hash {
        return Err(AssignmentInvalid::BadProof);
    }
    let leaf = AssignmentBox::leaf_for(hasher, &new_join.naj_hash, new_join.intended_difficulty);
    if !merkle_verify(
        hasher,
        &leaf,
        new_join.ll as usize,
        &new_join.merkle_branch,
        &pab.box_root,
    ) {
        return Err(AssignmentInvalid::BadProof);
    }
    let dest = if new_join.ll < pab.new_count {
        assigned_chain_for_rank(
            hasher,
            &pab.pab_hash,
            &pab.mgbh,
            new_join.ll,
            pab.subsections,
            &pab.ranked_chains,
        )
    } else {
        // Walk the reassignment subsections to the one holding this leaf.
        let mut idx = new_join.ll - pab.new_count;
        let mut found = None;
        for (chain, count) in &pab.reassignment {
            if idx < *count {
                found = Some(*chain);
                break;
            }
            idx -= count;
        }
        found.ok_or(AssignmentInvalid::BadProof)?
    };
    if dest != verifying_chain {
        return Err(AssignmentInvalid::WrongDestination);
    }
    if pab.pab_hash != *latest_final_pab_of_assigner {
        return Err(AssignmentInvalid::StalePab);
    }
    if used.contains(&new_join.naj_hash) {
        return Err(AssignmentInvalid::Replay);
    }
    Ok(())
}

/// Build the New Join for the entry at flat leaf index `ll` of a box.
pub fn new_join_for_entry(
    boxed: &AssignmentBox,
    ll: u32,
    assignment_chain_id: ChainId,
    pab_hash: HashDigest,
    hasher: &dyn Hasher256,
) -> Option<NewJoin> {
    let new_count = boxed.new_count() as u32;
    let entry = if ll < new_count {
        *boxed.new_entry_at_rank(ll as usize)?
    } else {
        let mut idx = (ll - new_count) as usize;
        let mut found = None;
        for (_, sub) in &boxed.reassignment {
            if idx < sub.len() {
                found = Some(sub[idx]);
                break;
            }
            idx -= sub.len();
        }
        found?
    };
    let branch = boxed.branch_for(hasher, ll as usize).ok()?;
    Some(NewJoin {
        ll,
        intended_difficulty: entry.1,
        assignment_chain_id,
        block_header_hash: pab_hash,
        merkle_branch: branch,
        naj_hash: entry.0,
    })
}
