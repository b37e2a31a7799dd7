//! Exact big-integer binomial coefficients and precise fraction-to-float
//! conversion.
//!
//! Failure probabilities reach far below 1e-20, where naive double
//! arithmetic underflows or loses the leading digits. All sums and
//! products here stay in exact integers; a single division at the end
//! converts to f64 with the quotient aligned to the float's precision.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `n choose k` as an exact big integer; 0 when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * (n - i) / (i + 1);
    }
    res
}

/// `num / den` as f64, valid for arbitrarily large operands.
///
/// The quotient is computed to ~64 significant bits and scaled back, so
/// results keep full double precision down to the subnormal range.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Shift the numerator so the integer quotient carries ~64 bits.
    let shift = db + 64 - nb;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        (num >> (-shift) as u64) / den
    };
    let q = q.to_f64().unwrap_or(f64::INFINITY);
    q * 2f64.powi(-shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn small_binomials() {
        assert_eq!(binom(5, 2), BigUint::from_u64(10).unwrap());
        assert_eq!(binom(10, 5), BigUint::from_u64(252).unwrap());
        assert_eq!(binom(0, 0), BigUint::one());
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(2000, 1), BigUint::from_u64(2000).unwrap());
    }

    #[test]
    fn pascal_identity_holds() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn ratio_handles_tiny_values() {
        // 1 / 2^100 is far below what a direct float division of big
        // integers could produce without care.
        let num = BigUint::one();
        let den = BigUint::one() << 100u32;
        let v = ratio_to_f64(&num, &den);
        assert!((v - 2f64.powi(-100)).abs() / 2f64.powi(-100) < 1e-12);
    }

    #[test]
    fn ratio_handles_huge_operands() {
        // C(2000, 1000) / C(2000, 1000) = 1.
        let c = binom(2000, 1000);
        assert!((ratio_to_f64(&c, &c) - 1.0).abs() < 1e-15);
        // C(2000, 999) / C(2000, 1000) = 1000 / 1001.
        let v = ratio_to_f64(&binom(2000, 999), &c);
        assert!((v - 1000.0 / 1001.0).abs() < 1e-12);
    }

    #[test]
    fn ratio_of_exact_halves() {
        let num = BigUint::one();
        let den = BigUint::from_u64(32).unwrap();
        assert_eq!(ratio_to_f64(&num, &den), 0.03125);
    }
}
