//! Protocol data model for Multichain MWPoW.
//!
//! Everything in this crate is an immutable value type: chain identifiers,
//! hash digests, difficulties, block structures, Merkle commitments, duty
//! ranges and the bit-exact size ledger used by the network simulator.
//! Construction and verification are pure, so values can be shared freely
//! across threads.

pub mod chain_id;
pub mod difficulty;
pub mod duty_range;
pub mod hash;
pub mod merkle;
pub mod sizes;
pub mod structures;

pub use chain_id::ChainId;
pub use difficulty::{difficulty_of_hash, Difficulty, DIFFICULTY_TARGET_EXP};
pub use duty_range::{DutyRange, Interval};
pub use hash::{FastHasher, HashDigest, Hasher256, Sha256Hasher};
pub use merkle::{merkle_branch, merkle_root, merkle_verify};
pub use sizes::{structure_size, StructureKind};
pub use structures::{
    AssignmentBox, Block, BlockHeader, BlockKind, CrosschainEntry, GlobalBlockHeader,
    NewAssignJoin, NewJoin, Share, Transaction, TX_SIZE_BYTES,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainDataError {
    #[error("invalid encoding: {0}")]
    Encoding(String),
    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty item list where at least one item is required")]
    EmptyList,
    #[error("structure invariant violated: {0}")]
    Invariant(String),
}
