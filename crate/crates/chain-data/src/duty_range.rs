//! Duty ranges: the hash-interval partition that decides which chain
//! governs which transactions and joins.
//!
//! A chain's duty range maps each source chain id (itself or one of its
//! history chains) to a set of inclusive intervals over the full 2^256 hash
//! space. Splits halve every inherited interval at its midpoint, the lower
//! half going to the even child; merges union the maps back together.

use crate::chain_id::ChainId;
use crate::hash::{floor_avg, inc, HashDigest};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An inclusive interval `[lo, hi]` over 256-bit hash values.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub lo: HashDigest,
    pub hi: HashDigest,
}

impl Interval {
    pub fn full() -> Self {
        Interval { lo: HashDigest::ZERO, hi: HashDigest::MAX }
    }

    pub fn contains(&self, h: &HashDigest) -> bool {
        self.lo <= *h && *h <= self.hi
    }

    /// Split at the midpoint: `[lo, mid]` and `[mid+1, hi]`.
    /// Both halves are non-empty for any interval of at least two points.
    pub fn halve(&self) -> (Interval, Interval) {
        let mid = floor_avg(&self.lo, &self.hi);
        (
            Interval { lo: self.lo, hi: mid },
            Interval { lo: inc(&mid), hi: self.hi },
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DutyRange {
    /// Source chain id -> disjoint sorted intervals governed for it.
    pub segments: BTreeMap<ChainId, Vec<Interval>>,
}

impl DutyRange {
    /// The full space for a single chain, the genesis duty range.
    pub fn full_for(id: ChainId) -> Self {
        let mut segments = BTreeMap::new();
        segments.insert(id, vec![Interval::full()]);
        DutyRange { segments }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.values().all(|v| v.is_empty())
    }

    /// Whether hash `h` of an item sourced from chain `source` is governed here.
    pub fn governs(&self, source: ChainId, h: &HashDigest) -> bool {
        self.segments
            .get(&source)
            .map(|ivs| ivs.iter().any(|iv| iv.contains(h)))
            .unwrap_or(false)
    }

    /// Duty ranges of the two offspring when the owning chain splits.
    ///
    /// Inherited segments are halved, lower halves to the even child. A
    /// segment already keyed by an offspring id passes to that offspring
    /// whole, so that a merge followed by a split restores the partition.
    /// Each child additionally owns the full range under its own new id.
    pub fn split(&self, self_id: ChainId) -> (DutyRange, DutyRange) {
        let (even_id, odd_id) = self_id.split();
        let mut even = DutyRange::default();
        let mut odd = DutyRange::default();
        for (&src, ivs) in &self.segments {
            if src == even_id {
                even.segments.entry(src).or_default().extend(ivs.iter().copied());
                continue;
            }
            if src == odd_id {
                odd.segments.entry(src).or_default().extend(ivs.iter().copied());
                continue;
            }
            for iv in ivs {
                let (lo_half, hi_half) = iv.halve();
                even.segments.entry(src).or_default().push(lo_half);
                odd.segments.entry(src).or_default().push(hi_half);
            }
        }
        even.segments.insert(even_id, vec![Interval::full()]);
        odd.segments.insert(odd_id, vec![Interval::full()]);
        even.normalize();
        odd.normalize();
        (even, odd)
    }

    /// Union of two duty ranges, for chain merges.
    pub fn union(&self, other: &DutyRange) -> DutyRange {
        let mut out = self.clone();
        for (&src, ivs) in &other.segments {
            out.segments.entry(src).or_default().extend(ivs.iter().copied());
        }
        out.normalize();
        out
    }

    /// Sort intervals and coalesce adjacent or overlapping ones.
    fn normalize(&mut self) {
        for ivs in self.segments.values_mut() {
            ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
            let mut merged: Vec<Interval> = Vec::with_capacity(ivs.len());
            for iv in ivs.drain(..) {
                match merged.last_mut() {
                    Some(last) if iv.lo <= inc(&last.hi) && last.hi != HashDigest::MAX => {
                        if iv.hi > last.hi {
                            last.hi = iv.hi;
                        }
                    }
                    Some(last) if last.hi == HashDigest::MAX => {
                        // Previous interval reaches the top; anything after
                        // is contained.
                    }
                    _ => merged.push(iv),
                }
            }
            *ivs = merged;
        }
        self.segments.retain(|_, v| !v.is_empty());
    }
}

/// Check that a set of duty ranges exactly partitions the duty space:
/// for every source chain id appearing anywhere, the union of intervals
/// across all ranges is the full space with no overlap.
pub fn is_exact_partition(ranges: &[&DutyRange]) -> bool {
    let mut by_source: BTreeMap<ChainId, Vec<Interval>> = BTreeMap::new();
    for r in ranges {
        for (&src, ivs) in &r.segments {
            by_source.entry(src).or_default().extend(ivs.iter().copied());
        }
    }
    for ivs in by_source.values_mut() {
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo));
        if ivs[0].lo != HashDigest::ZERO {
            return false;
        }
        for w in ivs.windows(2) {
            if w[0].hi == HashDigest::MAX || inc(&w[0].hi) != w[1].lo {
                return false;
            }
        }
        if ivs.last().unwrap().hi != HashDigest::MAX {
            return false;
        }
    }
    true
}
