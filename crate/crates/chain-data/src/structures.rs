//! Block, header, share, join and assignment structures with their
//! canonical fixed-width little-endian encodings.
//!
//! Encoded lengths of the header, Share, New-Assign-Join and New Join match
//! `sizes::structure_size` exactly; the Share's 4-bit tag is padded to a
//! byte on the byte wire, and `encoded_bits` reports the 516-bit ledger
//! size. Every structure also derives a JSON debug encoding for harness
//! dumps.

use crate::chain_id::ChainId;
use crate::hash::{HashDigest, Hasher256};
use crate::merkle::{merkle_branch, merkle_root};
use crate::ChainDataError;
use serde::{Deserialize, Serialize};

/// Fixed transaction size on the bandwidth ledger.
pub const TX_SIZE_BYTES: usize = 500;

fn take<'a>(buf: &'a [u8], at: &mut usize, n: usize) -> Result<&'a [u8], ChainDataError> {
    if *at + n > buf.len() {
        return Err(ChainDataError::Encoding(format!(
            "buffer too short: need {} bytes at offset {}, have {}",
            n,
            at,
            buf.len()
        )));
    }
    let s = &buf[*at..*at + n];
    *at += n;
    Ok(s)
}

fn take_u32(buf: &[u8], at: &mut usize) -> Result<u32, ChainDataError> {
    let s = take(buf, at, 4)?;
    Ok(u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
}

fn take_digest(buf: &[u8], at: &mut usize) -> Result<HashDigest, ChainDataError> {
    let s = take(buf, at, 32)?;
    let mut b = [0u8; 32];
    b.copy_from_slice(s);
    Ok(HashDigest(b))
}

/// Per-chain consensus metadata carried by every block.
///
/// Wire layout: prev hash, global-header root, transaction Merkle root
/// (3 x 32 bytes), then seven 32-bit integers, then `Sg` 32-bit boundary
/// candidates: 124 + Sg*4 bytes. Nonces are not part of the header; they
/// travel in Shares, and the block hash is the hash of these bytes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockHeader {
    pub prev_hash: HashDigest,
    /// Merkle root of the global block header (MGBH).
    pub mgbh: HashDigest,
    pub tx_merkle_root: HashDigest,
    pub chainpower: u32,
    pub trans_onhold: u32,
    pub threshold_chainpower: u32,
    pub num_participants: u32,
    /// Seconds.
    pub timestamp: u32,
    pub entrance_difficulty: u32,
    pub acceptance_difficulty: u32,
    /// Ascending per-group strength boundary candidates, length `Sg`.
    pub bl_candidate: Vec<u32>,
}

impl BlockHeader {
    pub fn validate(&self) -> Result<(), ChainDataError> {
        if self.threshold_chainpower > self.chainpower {
            return Err(ChainDataError::Invariant(
                "threshold chainpower exceeds chainpower".into(),
            ));
        }
        if self.bl_candidate.windows(2).any(|w| w[0] > w[1]) {
            return Err(ChainDataError::Invariant("bl_candidate not ascending".into()));
        }
        Ok(())
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(124 + self.bl_candidate.len() * 4);
        out.extend_from_slice(self.prev_hash.as_bytes());
        out.extend_from_slice(self.mgbh.as_bytes());
        out.extend_from_slice(self.tx_merkle_root.as_bytes());
        for v in [
            self.chainpower,
            self.trans_onhold,
            self.threshold_chainpower,
            self.num_participants,
            self.timestamp,
            self.entrance_difficulty,
            self.acceptance_difficulty,
        ] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for v in &self.bl_candidate {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Decode a header of a chain configured with `sg` groups.
    pub fn decode(buf: &[u8], sg: usize) -> Result<Self, ChainDataError> {
        let expect = 124 + sg * 4;
        if buf.len() != expect {
            return Err(ChainDataError::Encoding(format!(
                "header length {} != {}",
                buf.len(),
                expect
            )));
        }
        let mut at = 0;
        let prev_hash = take_digest(buf, &mut at)?;
        let mgbh = take_digest(buf, &mut at)?;
        let tx_merkle_root = take_digest(buf, &mut at)?;
        let chainpower = take_u32(buf, &mut at)?;
        let trans_onhold = take_u32(buf, &mut at)?;
        let threshold_chainpower = take_u32(buf, &mut at)?;
        let num_participants = take_u32(buf, &mut at)?;
        let timestamp = take_u32(buf, &mut at)?;
        let entrance_difficulty = take_u32(buf, &mut at)?;
        let acceptance_difficulty = take_u32(buf, &mut at)?;
        let mut bl_candidate = Vec::with_capacity(sg);
        for _ in 0..sg {
            bl_candidate.push(take_u32(buf, &mut at)?);
        }
        Ok(BlockHeader {
            prev_hash,
            mgbh,
            tx_merkle_root,
            chainpower,
            trans_onhold,
            threshold_chainpower,
            num_participants,
            timestamp,
            entrance_difficulty,
            acceptance_difficulty,
            bl_candidate,
        })
    }

    /// Block identity: hash of the encoded header.
    pub fn block_hash(&self, hasher: &dyn Hasher256) -> HashDigest {
        hasher.digest(&self.encode())
    }
}

/// A low-difficulty proof of contribution and vote for a block.
///
/// 516 bits: a 4-bit tag (low nibble of the target block hash), a 256-bit
/// nonce and a 256-bit signature over (tag, nonce) by the sender's identity
/// key. The byte wire pads the tag to a full byte.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Share {
    pub block_tag: u8,
    pub nonce: HashDigest,
    pub signature: HashDigest,
}

impl Share {
    /// Keyed-hash stand-in for a signature: H(identity_key || tag || nonce).
    pub fn sign(
        hasher: &dyn Hasher256,
        identity_key: &HashDigest,
        block_hash: &HashDigest,
        nonce: HashDigest,
    ) -> Share {
        let tag = block_hash.low_nibble();
        let signature =
            hasher.digest_parts(&[identity_key.as_bytes(), &[tag], nonce.as_bytes()]);
        Share { block_tag: tag, nonce, signature }
    }

    pub fn verify_signature(&self, hasher: &dyn Hasher256, identity_key: &HashDigest) -> bool {
        let expect = hasher.digest_parts(&[
            identity_key.as_bytes(),
            &[self.block_tag],
            self.nonce.as_bytes(),
        ]);
        expect == self.signature
    }

    pub fn matches_block(&self, block_hash: &HashDigest) -> bool {
        self.block_tag == block_hash.low_nibble()
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(65);
        out.push(self.block_tag & 0x0F);
        out.extend_from_slice(self.nonce.as_bytes());
        out.extend_from_slice(self.signature.as_bytes());
        out
    }

    pub fn decode(buf: &[u8]) -> Result<Self, ChainDataError> {
        if buf.len() != 65 {
            return Err(ChainDataError::Encoding(format!("share length {} != 65", buf.len())));
        }
        let mut at = 1;
        Ok(Share {
            block_tag: buf[0] & 0x0F,
            nonce: take_digest(buf, &mut at)?,
            signature: take_digest(buf, &mut at)?,
        })
    }

    /// Ledger size in bits; the 4 padding bits of the byte wire do not count.
    pub fn encoded_bits(&self) -> u64 {
        crate::sizes::SHARE_BITS
    }
}

/// Power-registration record with which a participant enters (or re-enters)
/// the assignment lottery. 132 bytes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewAssignJoin {
    pub hash_prev_block: HashDigest,
    /// Calculation power claim, in difficulty units.
    pub intended_difficulty: u32,
    pub wallet_address: HashDigest,
    pub identity_key: HashDigest,
    pub nonce: HashDigest,
}

impl NewAssignJoin {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(132);
        out.extend_from_slice(self.hash_prev_block.as_bytes());
        out.extend_from_slice(&self.intended_difficulty.to_le_bytes());
        out.extend_from_slice(self.wallet_address.as_bytes());
        out.extend_from_slice(self.identity_key.as_bytes());
        out.extend_from_slice(self.nonce.as_bytes());
        out
    }

    pub fn decode(buf: &[u8]) -> Result<Self, ChainDataError> {
        if buf.len() != 132 {
            return Err(ChainDataError::Encoding(format!("naj length {} != 132", buf.len())));
        }
        let mut at = 0;
        Ok(NewAssignJoin {
            hash_prev_block: take_digest(buf, &mut at)?,
            intended_difficulty: take_u32(buf, &mut at)?,
            wallet_address: take_digest(buf, &mut at)?,
            identity_key: take_digest(buf, &mut at)?,
            nonce: take_digest(buf, &mut at)?,
        })
    }

    pub fn hash(&self, hasher: &dyn Hasher256) -> HashDigest {
        hasher.digest(&self.encode())
    }
}

/// Proof that a Pab assigned a New-Assign-Join to a specific chain.
///
/// Wire: three 32-bit integers (leaf index `ll`, intended difficulty,
/// assignment chain id), the assigning block header hash, and the Merkle
/// branch. The New-Assign-Join itself travels as its own structure; its
/// hash is carried out of band and not re-serialized here.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NewJoin {
    /// Leaf index in the assignment-box commitment.
    pub ll: u32,
    pub intended_difficulty: u32,
    pub assignment_chain_id: ChainId,
    pub block_header_hash: HashDigest,
    pub merkle_branch: Vec<HashDigest>,
    /// Reference to the registered New-Assign-Join (not on the wire).
    pub naj_hash: HashDigest,
}

impl NewJoin {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(44 + self.merkle_branch.len() * 32);
        out.extend_from_slice(&self.ll.to_le_bytes());
        out.extend_from_slice(&self.intended_difficulty.to_le_bytes());
        out.extend_from_slice(&self.assignment_chain_id.to_u32().to_le_bytes());
        out.extend_from_slice(self.block_header_hash.as_bytes());
        for h in &self.merkle_branch {
            out.extend_from_slice(h.as_bytes());
        }
        out
    }

    pub fn decode(buf: &[u8], naj_hash: HashDigest) -> Result<Self, ChainDataError> {
        if buf.len() < 44 || (buf.len() - 44) % 32 != 0 {
            return Err(ChainDataError::Encoding(format!("new join length {}", buf.len())));
        }
        let mut at = 0;
        let ll = take_u32(buf, &mut at)?;
        let intended_difficulty = take_u32(buf, &mut at)?;
        let chain_raw = take_u32(buf, &mut at)?;
        if chain_raw == 0 {
            return Err(ChainDataError::Encoding("chain id 0".into()));
        }
        let block_header_hash = take_digest(buf, &mut at)?;
        let mut merkle_branch = Vec::with_capacity((buf.len() - 44) / 32);
        while at < buf.len() {
            merkle_branch.push(take_digest(buf, &mut at)?);
        }
        Ok(NewJoin {
            ll,
            intended_difficulty,
            assignment_chain_id: ChainId::new(chain_raw as u64),
            block_header_hash,
            merkle_branch,
            naj_hash,
        })
    }
}

/// One assignment-box entry: a registered join and its claimed difficulty.
pub type BoxEntry = (HashDigest, u32);

/// The Pab section holding new-participant and reassignment subsections.
///
/// New-participant entries are stored in shuffled-rank order distributed
/// round-robin over the subsections, so subsection `i` holds ranks
/// `i, i+S, i+2S, ...`. The Merkle commitment is over the flat rank order
/// with reassignment entries appended, which makes a New Join's `ll` the
/// leaf index.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct AssignmentBox {
    pub new_participant: Vec<Vec<BoxEntry>>,
    /// Subsections keyed by destination chain id.
    pub reassignment: Vec<(ChainId, Vec<BoxEntry>)>,
}

impl AssignmentBox {
    pub fn new_count(&self) -> usize {
        self.new_participant.iter().map(|s| s.len()).sum()
    }

    pub fn reassign_count(&self) -> usize {
        self.reassignment.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.new_count() == 0 && self.reassign_count() == 0
    }

    /// New-participant entry at flat rank `r` (round-robin layout).
    pub fn new_entry_at_rank(&self, r: usize) -> Option<&BoxEntry> {
        let s = self.new_participant.len();
        if s == 0 {
            return None;
        }
        self.new_participant[r % s].get(r / s)
    }

    fn leaf(hasher: &dyn Hasher256, entry: &BoxEntry) -> HashDigest {
        hasher.digest_parts(&[entry.0.as_bytes(), &entry.1.to_le_bytes()])
    }

    /// Flat leaf list: new-participant entries in rank order, then
    /// reassignment entries in subsection order.
    pub fn leaves(&self, hasher: &dyn Hasher256) -> Vec<HashDigest> {
        let total = self.new_count();
        let mut out = Vec::with_capacity(total + self.reassign_count());
        for r in 0..total {
            out.push(Self::leaf(hasher, self.new_entry_at_rank(r).unwrap()));
        }
        for (_, sub) in &self.reassignment {
            for e in sub {
                out.push(Self::leaf(hasher, e));
            }
        }
        out
    }

    /// Merkle root of the box; an empty box commits to the zero digest.
    pub fn root(&self, hasher: &dyn Hasher256) -> HashDigest {
        let leaves = self.leaves(hasher);
        if leaves.is_empty() {
            HashDigest::ZERO
        } else {
            merkle_root(hasher, &leaves).unwrap()
        }
    }

    pub fn branch_for(
        &self,
        hasher: &dyn Hasher256,
        index: usize,
    ) -> Result<Vec<HashDigest>, ChainDataError> {
        merkle_branch(hasher, &self.leaves(hasher), index)
    }

    /// Leaf value for external verification of an entry.
    pub fn leaf_for(hasher: &dyn Hasher256, naj_hash: &HashDigest, intended_difficulty: u32) -> HashDigest {
        Self::leaf(hasher, &(*naj_hash, intended_difficulty))
    }
}

/// The shared randomness beacon and cross-chain view: one entry per live
/// chain holding the latest finally accepted block hash.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct GlobalBlockHeader {
    /// Sorted by chain id.
    pub entries: Vec<(ChainId, HashDigest)>,
}

impl GlobalBlockHeader {
    pub fn new(mut entries: Vec<(ChainId, HashDigest)>) -> Self {
        entries.sort_by_key(|(id, _)| *id);
        GlobalBlockHeader { entries }
    }

    pub fn get(&self, id: ChainId) -> Option<&HashDigest> {
        self.entries
            .binary_search_by_key(&id, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn set(&mut self, id: ChainId, hash: HashDigest) {
        match self.entries.binary_search_by_key(&id, |(c, _)| *c) {
            Ok(i) => self.entries[i].1 = hash,
            Err(i) => self.entries.insert(i, (id, hash)),
        }
    }

    pub fn remove(&mut self, id: ChainId) {
        if let Ok(i) = self.entries.binary_search_by_key(&id, |(c, _)| *c) {
            self.entries.remove(i);
        }
    }

    /// MGBH: the Merkle root over the entries.
    pub fn merkle_root(&self, hasher: &dyn Hasher256) -> HashDigest {
        if self.entries.is_empty() {
            return HashDigest::ZERO;
        }
        let leaves: Vec<HashDigest> = self
            .entries
            .iter()
            .map(|(id, h)| hasher.digest_parts(&[&id.to_u32().to_le_bytes(), h.as_bytes()]))
            .collect();
        merkle_root(hasher, &leaves).unwrap()
    }

    /// Gossip size in bytes: entries plus the root digest.
    pub fn wire_bytes(&self) -> usize {
        self.entries.len() * 36 + 32
    }
}

/// A transaction: an id, input references, and a fixed 500-byte wire size.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Transaction {
    pub id: HashDigest,
    pub inputs: Vec<HashDigest>,
}

impl Transaction {
    pub const MAX_INPUTS: usize = (TX_SIZE_BYTES - 34) / 32;

    pub fn encode(&self) -> Result<Vec<u8>, ChainDataError> {
        if self.inputs.len() > Self::MAX_INPUTS {
            return Err(ChainDataError::Invariant(format!(
                "transaction with {} inputs exceeds the 500-byte frame",
                self.inputs.len()
            )));
        }
        let mut out = Vec::with_capacity(TX_SIZE_BYTES);
        out.extend_from_slice(self.id.as_bytes());
        out.extend_from_slice(&(self.inputs.len() as u16).to_le_bytes());
        for h in &self.inputs {
            out.extend_from_slice(h.as_bytes());
        }
        out.resize(TX_SIZE_BYTES, 0);
        Ok(out)
    }

    pub fn decode(buf: &[u8]) -> Result<Self, ChainDataError> {
        if buf.len() != TX_SIZE_BYTES {
            return Err(ChainDataError::Encoding(format!(
                "transaction length {} != {}",
                buf.len(),
                TX_SIZE_BYTES
            )));
        }
        let mut at = 0;
        let id = take_digest(buf, &mut at)?;
        let n = u16::from_le_bytes([buf[32], buf[33]]) as usize;
        at = 34;
        if n > Self::MAX_INPUTS {
            return Err(ChainDataError::Encoding(format!("{n} inputs in 500-byte frame")));
        }
        let mut inputs = Vec::with_capacity(n);
        for _ in 0..n {
            inputs.push(take_digest(buf, &mut at)?);
        }
        Ok(Transaction { id, inputs })
    }
}

/// Cross-chain transfer records written into a block's crosschain section.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CrosschainEntry {
    /// Ask to move a governed transaction to another chain.
    Request { tx: HashDigest, dest: ChainId },
    /// Merkle proof that the request was embedded in a finally accepted
    /// block of the origin chain.
    Confirm {
        request: HashDigest,
        origin: ChainId,
        origin_height: u32,
        branch: Vec<HashDigest>,
        index: u32,
    },
}

impl CrosschainEntry {
    pub fn hash(&self, hasher: &dyn Hasher256) -> HashDigest {
        match self {
            CrosschainEntry::Request { tx, dest } => hasher.digest_parts(&[
                b"xreq",
                tx.as_bytes(),
                &dest.to_u32().to_le_bytes(),
            ]),
            CrosschainEntry::Confirm { request, origin, origin_height, .. } => hasher
                .digest_parts(&[
                    b"xcnf",
                    request.as_bytes(),
                    &origin.to_u32().to_le_bytes(),
                    &origin_height.to_le_bytes(),
                ]),
        }
    }
}

/// Block kinds written in the repeating cadence Ob, Pab, Ob, Fub.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BlockKind {
    Ordinary,
    PowerAssignment,
    FuelUp,
}

impl BlockKind {
    /// Kind for a block height, counting the first block after genesis,
    /// a split or a merge as height 1 of the cadence.
    pub fn for_height(height: u64) -> BlockKind {
        match height % 4 {
            1 | 3 => BlockKind::Ordinary,
            2 => BlockKind::PowerAssignment,
            _ => BlockKind::FuelUp,
        }
    }
}

/// A full block. Wire transport of whole blocks is handled by the
/// simulator's compressed-size model; identity is the header hash.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Block {
    pub header: BlockHeader,
    pub kind: BlockKind,
    pub transactions: Vec<Transaction>,
    /// Shares for the preceding block, paired with their sender identity.
    pub shares: Vec<(HashDigest, Share)>,
    pub crosschain: Vec<CrosschainEntry>,
    /// Identity keys of the valid registered miners of this chain.
    pub participant_list: Vec<HashDigest>,
    /// Present on Pab blocks only.
    pub assignment_box: Option<AssignmentBox>,
    /// Present on Fub blocks only.
    pub new_joins: Vec<NewJoin>,
    /// Reward payouts: wallet, amount in micro-coins.
    pub coinbase: Vec<(HashDigest, u64)>,
}

impl Block {
    pub fn validate_shape(&self, k: usize) -> Result<(), ChainDataError> {
        self.header.validate()?;
        if self.transactions.len() > k {
            return Err(ChainDataError::Invariant(format!(
                "{} transactions exceed chain limit {k}",
                self.transactions.len()
            )));
        }
        match self.kind {
            BlockKind::PowerAssignment => {
                if let Some(b) = &self.assignment_box {
                    if b.new_count() > k {
                        return Err(ChainDataError::Invariant(format!(
                            "{} new-participant entries exceed chain limit {k}",
                            b.new_count()
                        )));
                    }
                }
            }
            _ => {
                if self.assignment_box.is_some() {
                    return Err(ChainDataError::Invariant(
                        "assignment box outside a Pab".into(),
                    ));
                }
                if self.kind != BlockKind::FuelUp && !self.new_joins.is_empty() {
                    return Err(ChainDataError::Invariant("new joins outside a Fub".into()));
                }
            }
        }
        Ok(())
    }

    pub fn hash(&self, hasher: &dyn Hasher256) -> HashDigest {
        self.header.block_hash(hasher)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::Sha256Hasher;
    use crate::sizes::{structure_size, StructureKind};

    fn sample_header(sg: usize) -> BlockHeader {
        BlockHeader {
            prev_hash: HashDigest::from_u64(1),
            mgbh: HashDigest::from_u64(2),
            tx_merkle_root: HashDigest::from_u64(3),
            chainpower: 1000,
            trans_onhold: 42,
            threshold_chainpower: 600,
            num_participants: 20,
            timestamp: 12345,
            entrance_difficulty: 50,
            acceptance_difficulty: 100,
            bl_candidate: (0..sg).map(|i| i as u32 * 10).collect(),
        }
    }

    #[test]
    fn header_encoding_is_bit_exact() {
        for sg in [1usize, 4, 20] {
            let h = sample_header(sg);
            let bytes = h.encode();
            assert_eq!(
                bytes.len() as u64 * 8,
                structure_size(StructureKind::BlockHeader, sg as u64, 2000)
            );
            assert_eq!(BlockHeader::decode(&bytes, sg).unwrap(), h);
        }
    }

    #[test]
    fn share_sign_verify_and_size() {
        let hasher = Sha256Hasher;
        let key = HashDigest::from_u64(9);
        let block = HashDigest::from_u64(0xAB);
        let share = Share::sign(&hasher, &key, &block, HashDigest::from_u64(7));
        assert!(share.verify_signature(&hasher, &key));
        assert!(!share.verify_signature(&hasher, &HashDigest::from_u64(10)));
        assert!(share.matches_block(&block));
        assert_eq!(share.encoded_bits(), 516);
        let bytes = share.encode();
        assert_eq!(bytes.len(), 65);
        assert_eq!(Share::decode(&bytes).unwrap(), share);
    }

    #[test]
    fn naj_roundtrip_and_size() {
        let naj = NewAssignJoin {
            hash_prev_block: HashDigest::from_u64(1),
            intended_difficulty: 77,
            wallet_address: HashDigest::from_u64(2),
            identity_key: HashDigest::from_u64(3),
            nonce: HashDigest::from_u64(4),
        };
        let bytes = naj.encode();
        assert_eq!(bytes.len() as u64 * 8, structure_size(StructureKind::NewAssignJoin, 1, 2));
        assert_eq!(NewAssignJoin::decode(&bytes).unwrap(), naj);
    }

    #[test]
    fn new_join_size_matches_ledger_at_capacity() {
        // A box with K leaves yields a ceil(log2 K) branch.
        let hasher = Sha256Hasher;
        let k = 2000usize;
        let entries: Vec<BoxEntry> =
            (0..k).map(|i| (HashDigest::from_u64(i as u64), i as u32)).collect();
        let boxed = AssignmentBox { new_participant: vec![entries], reassignment: vec![] };
        let branch = boxed.branch_for(&hasher, 123).unwrap();
        let nj = NewJoin {
            ll: 123,
            intended_difficulty: 5,
            assignment_chain_id: ChainId::new(3),
            block_header_hash: HashDigest::from_u64(99),
            merkle_branch: branch,
            naj_hash: HashDigest::from_u64(123),
        };
        let bytes = nj.encode();
        assert_eq!(
            bytes.len() as u64 * 8,
            structure_size(StructureKind::NewJoin, 1, k as u64)
        );
        assert_eq!(NewJoin::decode(&bytes, nj.naj_hash).unwrap(), nj);
    }

    #[test]
    fn box_rank_layout_round_robin() {
        let b = AssignmentBox {
            new_participant: vec![
                vec![(HashDigest::from_u64(0), 0), (HashDigest::from_u64(3), 3)],
                vec![(HashDigest::from_u64(1), 1), (HashDigest::from_u64(4), 4)],
                vec![(HashDigest::from_u64(2), 2)],
            ],
            reassignment: vec![],
        };
        for r in 0..5u64 {
            assert_eq!(b.new_entry_at_rank(r as usize).unwrap().0, HashDigest::from_u64(r));
        }
        assert!(b.new_entry_at_rank(5).is_none());
    }

    #[test]
    fn global_header_root_changes_on_any_bit() {
        let hasher = Sha256Hasher;
        let gh = GlobalBlockHeader::new(vec![
            (ChainId::new(2), HashDigest::from_u64(10)),
            (ChainId::new(6), HashDigest::from_u64(11)),
            (ChainId::new(7), HashDigest::from_u64(12)),
        ]);
        let root = gh.merkle_root(&hasher);
        for i in 0..gh.entries.len() {
            let mut changed = gh.clone();
            let mut h = changed.entries[i].1;
            h.0[31] ^= 1;
            changed.entries[i].1 = h;
            assert_ne!(changed.merkle_root(&hasher), root, "entry {i}");
        }
    }

    #[test]
    fn transaction_fixed_frame() {
        let tx = Transaction {
            id: HashDigest::from_u64(5),
            inputs: vec![HashDigest::from_u64(6), HashDigest::from_u64(7)],
        };
        let bytes = tx.encode().unwrap();
        assert_eq!(bytes.len(), TX_SIZE_BYTES);
        assert_eq!(Transaction::decode(&bytes).unwrap(), tx);
    }

    #[test]
    fn cadence_kinds() {
        use BlockKind::*;
        let kinds: Vec<BlockKind> = (1..=8).map(BlockKind::for_height).collect();
        assert_eq!(
            kinds,
            vec![Ordinary, PowerAssignment, Ordinary, FuelUp, Ordinary, PowerAssignment, Ordinary, FuelUp]
        );
    }
}
