//! Proof-of-work difficulty as a target ratio.
//!
//! Difficulty is the ratio `difficulty_target / current_target` where the
//! target constant is fixed at 2^224 and a hash used as `current_target`.
//! A hash meets difficulty `d` when `difficulty_target / hash >= d`; only
//! ratios matter, so any fixed constant would do.

use crate::hash::HashDigest;
use serde::{Deserialize, Serialize};

/// Exponent of the fixed difficulty target: `difficulty_target = 2^224`.
pub const DIFFICULTY_TARGET_EXP: i32 = 224;

/// A positive difficulty ratio.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Serialize, Deserialize)]
pub struct Difficulty(f64);

impl Difficulty {
    pub fn new(ratio: f64) -> Self {
        assert!(ratio > 0.0 && ratio.is_finite(), "difficulty must be positive");
        Difficulty(ratio)
    }

    pub fn ratio(&self) -> f64 {
        self.0
    }

    /// Wire form: difficulty units as a 32-bit integer, rounded.
    pub fn to_u32(&self) -> u32 {
        self.0.round().clamp(0.0, u32::MAX as f64) as u32
    }

    pub fn from_u32(units: u32) -> Self {
        Difficulty::new(units.max(1) as f64)
    }
}

/// Difficulty achieved by a hash: `2^224 / H` with `H` the hash read as a
/// big-endian 256-bit integer. An all-zero hash has infinite difficulty.
pub fn difficulty_of_hash(hash: &HashDigest) -> f64 {
    if hash.is_zero() {
        return f64::INFINITY;
    }
    let lz = hash.leading_zeros() as i32;
    // Take the 64 most significant bits starting at the first set bit.
    let mut mantissa: u64 = 0;
    let mut bits = 0;
    let mut idx = (lz / 8) as usize;
    let mut bit_off = lz % 8;
    while bits < 64 && idx < 32 {
        let avail = 8 - bit_off;
        let take = avail.min(64 - bits);
        let chunk = (hash.0[idx] as u64 >> (avail - take)) & ((1u64 << take) - 1);
        mantissa = (mantissa << take) | chunk;
        bits += take;
        bit_off += take;
        if bit_off == 8 {
            bit_off = 0;
            idx += 1;
        }
    }
    mantissa <<= 64 - bits;
    // H ~= mantissa * 2^(256 - lz - 64), so 2^224 / H = 2^(lz + 32) / mantissa.
    let exp = lz + DIFFICULTY_TARGET_EXP - 256 + 64;
    2f64.powi(exp) / mantissa as f64
}

/// Whether `hash` meets difficulty `d`.
pub fn hash_meets(hash: &HashDigest, d: f64) -> bool {
    difficulty_of_hash(hash) >= d
}
