//! Bit-exact minimum structure sizes, the contract for bandwidth accounting.

/// Structures with a pinned minimum wire size.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureKind {
    /// Three 256-bit hashes, seven 32-bit integers, Sg 32-bit boundary values.
    BlockHeader,
    /// 4-bit block tag, 256-bit nonce, 256-bit signature.
    Share,
    /// 256-bit hash, 32-bit difficulty, three further 256-bit fields.
    NewAssignJoin,
    /// Three 32-bit integers, a 256-bit hash, ceil(log2 K) branch hashes.
    NewJoin,
    /// Fixed transaction size.
    Transaction,
    /// One global-header entry: chain id plus latest accepted hash.
    GlobalHeaderEntry,
}

pub const SHARE_BITS: u64 = 516;
pub const NEW_ASSIGN_JOIN_BYTES: u64 = 132;

fn ceil_log2(k: u64) -> u64 {
    assert!(k >= 2, "chain limit K must be at least 2");
    64 - (k - 1).leading_zeros() as u64
}

/// Minimum size in bits of a structure, given the group count `sg` and the
/// chain limit `k` where applicable.
pub fn structure_size(kind: StructureKind, sg: u64, k: u64) -> u64 {
    match kind {
        StructureKind::BlockHeader => (124 + sg * 4) * 8,
        StructureKind::Share => SHARE_BITS,
        StructureKind::NewAssignJoin => NEW_ASSIGN_JOIN_BYTES * 8,
        StructureKind::NewJoin => (12 + 32 + ceil_log2(k) * 32) * 8,
        StructureKind::Transaction => crate::structures::TX_SIZE_BYTES as u64 * 8,
        StructureKind::GlobalHeaderEntry => (4 + 32) * 8,
    }
}
