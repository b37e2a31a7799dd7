//! Consensus rules of the MWPoW mining game.
//!
//! A chain runs rounds of a decentralised-mining-pool game: registered
//! miners hold exclusive nonce try ranges sized by their claimed power,
//! contribute low-difficulty shares as proof of work and as votes, and
//! collectively announce the block that first reaches the acceptance
//! difficulty. Support and statement rates derived from shares replace
//! longest-chain confirmation. This crate holds the pure rule functions;
//! the multichain coordinator owns the per-chain state that applies them.

pub mod difficulty_rules;
pub mod ledger;
pub mod miner;
pub mod rewards;
pub mod round;
pub mod shares;
pub mod validate;

pub use difficulty_rules::{update_acceptance_difficulty, update_entrance_difficulty, DifficultyUpdate};
pub use ledger::{BlockNode, BranchLedger};
pub use miner::{assign_try_ranges, canonical_sort, MinerRecord, TryRange};
pub use rewards::distribute_rewards;
pub use round::{
    end_of_round_expulsion, finalize_block, finalized_with_ancestors, statement_rate,
    FinalizeOutcome, PendingReason, RoundState, SecurityVerdict,
};
pub use shares::{countable_share_difficulty, validate_share, ShareRejection, MAX_SHARES_PER_ROUND};
pub use validate::{validate_block, BlockRejection, LocalView};

/// Micro-coin resolution for reward payouts: 1e-6 coins.
pub const MICRO_PER_COIN: u64 = 1_000_000;

/// Shares must carry at least this fraction of the sender's claim.
pub const SHARE_CLAIM_FRACTION: f64 = 0.25;

/// A block needs strictly more support than the runner-up plus this
/// fraction of the registered power to be finally accepted.
pub const ACCEPT_MARGIN_FRACTION: f64 = 0.25;

/// Fraction of a block's shares and new joins a validator must have seen
/// before accepting the block.
pub const KNOWN_CONTENT_FRACTION: f64 = 0.9;
