//! The sharding coordinator.
//!
//! Chains are sharded committees running the MWPoW game. This crate holds
//! the rules above single-chain consensus: strength-group boundaries and
//! chain restrictions, split and merge of chains, the power-assignment
//! pipeline (Pab boxes, hash-shuffled destinations, New Join proofs, Fub
//! power adjustment), crosschain transfers and global-header dispute
//! resolution. Everything here is deterministic given the inputs; the
//! protocol's randomness comes from the global-block-header Merkle root.

pub mod boundaries;
pub mod crosschain;
pub mod dispute;
pub mod fub;
pub mod pab;
pub mod state;
pub mod topology;
pub mod verify;

pub use boundaries::{
    bl_candidate, check_chain_restrictions, group_boundaries, group_counts, group_of,
    threshold_chainpower, RestrictionVerdict,
};
pub use crosschain::{CrosschainTracker, TransferOutcome, TransferState, CROSSCHAIN_WINDOW};
pub use dispute::{resolve_dispute, DisputeOutcome, ClaimedBranch};
pub use fub::{adjust_new_power, PowerAdjustOutcome};
pub use pab::{
    assigned_chain_for_rank, form_pab_box, new_participant_section, reassignment_section,
    PabContext,
};
pub use state::{ChainState, Params, SystemState};
pub use topology::{merge_component_id, merge_target, merge_triggers, split_decision, MergeTrigger};
pub use verify::{verify_assignment, AssignmentInvalid, PabSummary};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MultichainError {
    #[error("no live chains")]
    NoChains,
    #[error("{0}")]
    Security(#[from] security::SecurityError),
    #[error("invalid configuration: {0}")]
    Config(String),
}
