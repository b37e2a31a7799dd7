//! The block tree and its support accounting.
//!
//! The ledger roots at the last finally accepted block (or genesis) and
//! tracks every branch from there, with the countable share difficulty
//! accumulated per block. Support rates compare whole branches: shares for
//! a descendant back every ancestor up to the fork point.

use chain_data::hash::HashDigest;
use chain_data::structures::BlockKind;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct BlockNode {
    pub hash: HashDigest,
    pub parent: Option<HashDigest>,
    pub height: u64,
    pub kind: BlockKind,
    /// Countable share difficulty per supporting miner identity.
    pub sd_by_miner: BTreeMap<HashDigest, f64>,
    pub announced: bool,
    /// Local verdict on the block's content.
    pub content_valid: bool,
}

impl BlockNode {
    pub fn total_sd(&self) -> f64 {
        self.sd_by_miner.values().sum()
    }
}

#[derive(Clone, Debug, Default)]
pub struct BranchLedger {
    nodes: BTreeMap<HashDigest, BlockNode>,
    children: BTreeMap<HashDigest, Vec<HashDigest>>,
}

impl BranchLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, node: BlockNode) {
        if let Some(parent) = node.parent {
            self.children.entry(parent).or_default().push(node.hash);
        }
        self.nodes.insert(node.hash, node);
    }

    pub fn get(&self, hash: &HashDigest) -> Option<&BlockNode> {
        self.nodes.get(hash)
    }

    pub fn get_mut(&mut self, hash: &HashDigest) -> Option<&mut BlockNode> {
        self.nodes.get_mut(hash)
    }

    pub fn contains(&self, hash: &HashDigest) -> bool {
        self.nodes.contains_key(hash)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children_of(&self, hash: &HashDigest) -> &[HashDigest] {
        self.children.get(hash).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn blocks_at_height(&self, height: u64) -> Vec<&BlockNode> {
        self.nodes.values().filter(|n| n.height == height).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BlockNode> {
        self.nodes.values()
    }

    /// Add countable share difficulty for a block.
    pub fn add_support(&mut self, block: &HashDigest, miner: HashDigest, sd: f64) {
        if let Some(node) = self.nodes.get_mut(block) {
            *node.sd_by_miner.entry(miner).or_insert(0.0) += sd;
        }
    }

    /// Total countable SD on the branch stemming from `hash` (the block
    /// itself and every descendant).
    pub fn branch_sd(&self, hash: &HashDigest) -> f64 {
        let mut sum = 0.0;
        let mut stack = vec![*hash];
        while let Some(h) = stack.pop() {
            if let Some(node) = self.nodes.get(&h) {
                sum += node.total_sd();
                stack.extend_from_slice(self.children_of(&h));
            }
        }
        sum
    }

    /// Greatest height reachable on the branch stemming from `hash`.
    pub fn branch_tip_height(&self, hash: &HashDigest) -> u64 {
        let mut best = self.nodes.get(hash).map(|n| n.height).unwrap_or(0);
        let mut stack = vec![*hash];
        while let Some(h) = stack.pop() {
            if let Some(node) = self.nodes.get(&h) {
                best = best.max(node.height);
                stack.extend_from_slice(self.children_of(&h));
            }
        }
        best
    }

    /// Greatest height anywhere in the ledger.
    pub fn max_height(&self) -> u64 {
        self.nodes.values().map(|n| n.height).max().unwrap_or(0)
    }

    /// Support rate of a block: branch SD over the SD of all branches
    /// from its height. None while no shares are counted at that height.
    pub fn support_rate(&self, hash: &HashDigest) -> Option<f64> {
        let node = self.nodes.get(hash)?;
        let denom: f64 = self
            .blocks_at_height(node.height)
            .iter()
            .map(|n| self.branch_sd(&n.hash))
            .sum();
        if denom <= 0.0 {
            return None;
        }
        Some(self.branch_sd(hash) / denom)
    }

    /// Ancestors from the block's parent up to the ledger root.
    pub fn ancestors(&self, hash: &HashDigest) -> Vec<HashDigest> {
        let mut out = Vec::new();
        let mut cur = self.nodes.get(hash).and_then(|n| n.parent);
        while let Some(h) = cur {
            if let Some(node) = self.nodes.get(&h) {
                out.push(h);
                cur = node.parent;
            } else {
                break;
            }
        }
        out
    }
}
