//! Chain identifiers.
//!
//! Ids follow the binary-heap naming of the split/merge history: the root
//! chain is `C1`, and a split of `Cv` produces `C(2v)` and `C(2v+1)`.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChainId(u64);

impl ChainId {
    pub const ROOT: ChainId = ChainId(1);

    pub fn new(value: u64) -> Self {
        assert!(value >= 1, "chain id must be >= 1");
        ChainId(value)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    /// The two offspring ids produced by a split.
    pub fn split(&self) -> (ChainId, ChainId) {
        (ChainId(self.0 * 2), ChainId(self.0 * 2 + 1))
    }

    pub fn parent(&self) -> Option<ChainId> {
        if self.0 > 1 {
            Some(ChainId(self.0 / 2))
        } else {
            None
        }
    }

    pub fn is_sibling_of(&self, other: &ChainId) -> bool {
        self.0 != other.0 && self.0 / 2 == other.0 / 2 && self.0 > 1
    }

    /// Id of the chain formed by merging `a` and `b`: the old parent name
    /// when the two stem from the same branch, otherwise the smaller id.
    pub fn merge(a: ChainId, b: ChainId) -> ChainId {
        assert_ne!(a, b, "cannot merge a chain with itself");
        if a.is_sibling_of(&b) {
            ChainId(a.0 / 2)
        } else {
            ChainId(a.0.min(b.0))
        }
    }

    /// Integer distance between ids, the merge-candidate metric.
    pub fn distance(&self, other: &ChainId) -> u64 {
        self.0.abs_diff(other.0)
    }

    /// The even child receives the lower duty half on a split.
    pub fn is_even_child(&self) -> bool {
        self.0 % 2 == 0
    }

    /// Wire form: a 32-bit integer.
    pub fn to_u32(&self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl fmt::Debug for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(ChainId::new(1).split(), (ChainId::new(2), ChainId::new(3)));
        assert_eq!(ChainId::new(2).split(), (ChainId::new(4), ChainId::new(5)));
        assert_eq!(ChainId::new(3).split(), (ChainId::new(6), ChainId::new(7)));
    }

    #[test]
    fn merge_examples() {
        // Sibling reunion restores the parent name.
        assert_eq!(
            ChainId::merge(ChainId::new(2), ChainId::new(3)),
            ChainId::new(1)
        );
        assert_eq!(
            ChainId::merge(ChainId::new(4), ChainId::new(5)),
            ChainId::new(2)
        );
        // Unrelated chains take the smaller id.
        assert_eq!(
            ChainId::merge(ChainId::new(5), ChainId::new(3)),
            ChainId::new(3)
        );
    }

    #[test]
    fn split_merge_roundtrip() {
        for v in 1..200u64 {
            let id = ChainId::new(v);
            let (a, b) = id.split();
            assert_eq!(ChainId::merge(a, b), id);
            assert_eq!(ChainId::merge(b, a), id);
        }
    }

    #[test]
    fn distance_metric() {
        assert_eq!(ChainId::new(5).distance(&ChainId::new(4)), 1);
        assert_eq!(ChainId::new(5).distance(&ChainId::new(3)), 2);
    }
}
