//! Binary Merkle commitments used for assignment boxes, crosschain
//! sections and the global block header.
//!
//! Odd levels duplicate the last node. A single leaf is its own root with
//! an empty branch.

use crate::hash::{HashDigest, Hasher256};
use crate::ChainDataError;

fn parent(hasher: &dyn Hasher256, left: &HashDigest, right: &HashDigest) -> HashDigest {
    hasher.digest_parts(&[left.as_bytes(), right.as_bytes()])
}

/// Merkle root of a non-empty leaf list.
pub fn merkle_root(hasher: &dyn Hasher256, leaves: &[HashDigest]) -> Result<HashDigest, ChainDataError> {
    if leaves.is_empty() {
        return Err(ChainDataError::EmptyList);
    }
    let mut level = leaves.to_vec();
    while level.len() > 1 {
        if level.len() % 2 == 1 {
            level.push(*level.last().unwrap());
        }
        level = level
            .chunks(2)
            .map(|pair| parent(hasher, &pair[0], &pair[1]))
            .collect();
    }
    Ok(level[0])
}

/// Sibling path from leaf `index` up to the root.
pub fn merkle_branch(
    hasher: &dyn Hasher256,
    leaves: &[HashDigest],
    index: usize,
) -> Result<Vec<HashDigest>, ChainDataError> {
    if leaves.is_empty() {
        return Err(ChainDataError::EmptyList);
    }
    if index >= leaves.len() {
        return Err(ChainDataError::IndexOutOfRange { index, len: leaves.len() });
    }
    let mut level = leaves.to_vec();
    let mut idx = index;
    let mut branch = Vec::new();
    while level.len() > 1 {
        if level.len() % 2 == 1 {
            level.push(*level.last().unwrap());
        }
        branch.push(level[idx ^ 1]);
        level = level
            .chunks(2)
            .map(|pair| parent(hasher, &pair[0], &pair[1]))
            .collect();
        idx /= 2;
    }
    Ok(branch)
}

/// Recompute the root from a leaf and its branch; true when it matches.
pub fn merkle_verify(
    hasher: &dyn Hasher256,
    leaf: &HashDigest,
    index: usize,
    branch: &[HashDigest],
    root: &HashDigest,
) -> bool {
    let mut acc = *leaf;
    let mut idx = index;
    for sibling in branch {
        acc = if idx % 2 == 0 {
            parent(hasher, &acc, sibling)
        } else {
            parent(hasher, sibling, &acc)
        };
        idx /= 2;
    }
    acc == *root
}
