//! 256-bit digests and the pluggable hash function.
//!
//! Digests are interpreted as big-endian 256-bit integers when ordered or
//! used as interval endpoints. The protocol defaults to SHA-256; simulation
//! runs may select a fast non-cryptographic mix instead.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use std::fmt;

/// A 256-bit value: hash output, nonce, key or interval endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HashDigest(pub [u8; 32]);

impl HashDigest {
    pub const ZERO: HashDigest = HashDigest([0u8; 32]);
    pub const MAX: HashDigest = HashDigest([0xFF; 32]);

    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        HashDigest(bytes)
    }

    /// Deterministic digest from a u64 label, for tests and synthetic ids.
    pub fn from_u64(v: u64) -> Self {
        let mut b = [0u8; 32];
        b[24..].copy_from_slice(&v.to_be_bytes());
        HashDigest(b)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        let v = hex::decode(s)?;
        let mut b = [0u8; 32];
        if v.len() != 32 {
            return Err(hex::FromHexError::InvalidStringLength);
        }
        b.copy_from_slice(&v);
        Ok(HashDigest(b))
    }

    pub fn xor(&self, other: &HashDigest) -> HashDigest {
        let mut out = [0u8; 32];
        for i in 0..32 {
            out[i] = self.0[i] ^ other.0[i];
        }
        HashDigest(out)
    }

    /// Low 4 bits of the digest, used as the Share block tag.
    pub fn low_nibble(&self) -> u8 {
        self.0[31] & 0x0F
    }

    /// The digest value reduced modulo a small divisor.
    pub fn mod_u64(&self, divisor: u64) -> u64 {
        debug_assert!(divisor > 0);
        let mut rem: u128 = 0;
        for &byte in self.0.iter() {
            rem = ((rem << 8) | byte as u128) % divisor as u128;
        }
        rem as u64
    }

    /// Number of leading zero bits when read as a big-endian integer.
    pub fn leading_zeros(&self) -> u32 {
        let mut total = 0;
        for &byte in self.0.iter() {
            if byte == 0 {
                total += 8;
            } else {
                total += byte.leading_zeros();
                break;
            }
        }
        total
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl fmt::Debug for HashDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..", &self.to_hex()[..12])
    }
}

impl fmt::Display for HashDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for HashDigest {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for HashDigest {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        HashDigest::from_hex(&s).map_err(D::Error::custom)
    }
}

// --- 256-bit integer arithmetic on digests (big-endian), for interval
// --- midpoints and try-range boundaries.

/// `a + 1`, wrapping at 2^256.
pub fn inc(a: &HashDigest) -> HashDigest {
    let mut out = a.0;
    for i in (0..32).rev() {
        let (v, carry) = out[i].overflowing_add(1);
        out[i] = v;
        if !carry {
            break;
        }
    }
    HashDigest(out)
}

/// `a - 1`, wrapping at 0.
pub fn dec(a: &HashDigest) -> HashDigest {
    let mut out = a.0;
    for i in (0..32).rev() {
        let (v, borrow) = out[i].overflowing_sub(1);
        out[i] = v;
        if !borrow {
            break;
        }
    }
    HashDigest(out)
}

/// Floor of `(a + b) / 2` without overflow.
pub fn floor_avg(a: &HashDigest, b: &HashDigest) -> HashDigest {
    let mut sum = [0u16; 32];
    let mut carry = 0u16;
    for i in (0..32).rev() {
        let s = a.0[i] as u16 + b.0[i] as u16 + carry;
        sum[i] = s & 0xFF;
        carry = s >> 8;
    }
    // Shift the 257-bit value (carry, sum) right by one.
    let mut out = [0u8; 32];
    let mut prev = carry as u8; // top bit carried in
    for i in 0..32 {
        out[i] = ((prev << 7) | (sum[i] as u8 >> 1)) & 0xFF;
        prev = sum[i] as u8 & 1;
    }
    HashDigest(out)
}

/// Hash function abstraction so simulations can swap SHA-256 for a fast mix.
pub trait Hasher256: Send + Sync {
    fn digest(&self, bytes: &[u8]) -> HashDigest;

    /// Convenience for hashing several fragments as one message.
    fn digest_parts(&self, parts: &[&[u8]]) -> HashDigest {
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let mut buf = Vec::with_capacity(total);
        for p in parts {
            buf.extend_from_slice(p);
        }
        self.digest(&buf)
    }
}

/// SHA-256, the protocol default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sha256Hasher;

impl Hasher256 for Sha256Hasher {
    fn digest(&self, bytes: &[u8]) -> HashDigest {
        let out = Sha256::digest(bytes);
        let mut b = [0u8; 32];
        b.copy_from_slice(&out);
        HashDigest(b)
    }
}

/// Non-cryptographic 256-bit mix for fast simulation runs. Four lanes of
/// splitmix64 over a length-salted seed per lane.
#[derive(Debug, Clone, Copy, Default)]
pub struct FastHasher;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

impl Hasher256 for FastHasher {
    fn digest(&self, bytes: &[u8]) -> HashDigest {
        let mut lanes = [
            0x6A09E667F3BCC908u64 ^ bytes.len() as u64,
            0xBB67AE8584CAA73B,
            0x3C6EF372FE94F82B,
            0xA54FF53A5F1D36F1,
        ];
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            let w = u64::from_le_bytes(word);
            let lane = i & 3;
            lanes[lane] = splitmix64(lanes[lane] ^ w.wrapping_add(i as u64));
        }
        // Cross-mix so every input bit affects every lane.
        for round in 0..2 {
            for i in 0..4 {
                lanes[i] = splitmix64(lanes[i] ^ lanes[(i + 1) & 3].rotate_left(17 + round));
            }
        }
        let mut out = [0u8; 32];
        for i in 0..4 {
            out[i * 8..(i + 1) * 8].copy_from_slice(&lanes[i].to_be_bytes());
        }
        HashDigest(out)
    }
}
