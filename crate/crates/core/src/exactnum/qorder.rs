//! The fixed ordering of the rationals used everywhere a construction needs
//! "the first rational": `q_0 = 0`, then the Calkin-Wilf sequence interleaved
//! with its negatives (`q_1 = 1, q_2 = -1, q_3 = 1/2, q_4 = -1/2, ...`).

use num_bigint::BigInt;
use num_traits::One;

use super::rational::Rational;

/// Positive rational at 1-based position `k` of the Calkin-Wilf sequence.
fn calkin_wilf(k: u64) -> Rational {
    debug_assert!(k >= 1);
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let bits = 64 - k.leading_zeros();
    // Walk the tree path spelled by the bits of k below the leading one.
    for i in (0..bits.saturating_sub(1)).rev() {
        if (k >> i) & 1 == 0 {
            b += &a;
        } else {
            a += &b;
        }
    }
    Rational::new(a, b)
}

/// Position of a positive rational in the Calkin-Wilf sequence (1-based).
fn calkin_wilf_index(q: &Rational) -> u64 {
    debug_assert!(q.is_positive());
    let mut a = q.numer().clone();
    let mut b = q.denom().clone();
    let mut bits = alloc::vec::Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a > b {
            bits.push(1u8);
            a -= &b;
        } else {
            bits.push(0u8);
            b -= &a;
        }
    }
    let mut k: u64 = 1;
    for bit in bits.iter().rev() {
        k = (k << 1) | u64::from(*bit);
    }
    k
}

/// `q_i` in the fixed ordering of the rationals.
pub fn rational_by_index(i: u64) -> Rational {
    if i == 0 {
        return Rational::zero();
    }
    let k = (i + 1) / 2;
    let q = calkin_wilf(k);
    if i % 2 == 1 {
        q
    } else {
        -q
    }
}

/// Index of `q` in the fixed ordering; inverse of [`rational_by_index`].
pub fn rational_index(q: &Rational) -> u64 {
    if q.is_zero() {
        return 0;
    }
    let k = calkin_wilf_index(&q.abs());
    if q.is_positive() {
        2 * k - 1
    } else {
        2 * k
    }
}

/// First rational (in the fixed ordering) satisfying `pred`, scanning at most
/// `limit` candidates.
pub fn first_rational<F: FnMut(&Rational) -> bool>(limit: u64, mut pred: F) -> Option<Rational> {
    (0..limit).map(rational_by_index).find(|q| pred(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn first_few() {
        let want = [
            rat(0, 1),
            rat(1, 1),
            rat(-1, 1),
            rat(1, 2),
            rat(-1, 2),
            rat(2, 1),
            rat(-2, 1),
            rat(1, 3),
            rat(-1, 3),
            rat(3, 2),
        ];
        for (i, q) in want.iter().enumerate() {
            assert_eq!(&rational_by_index(i as u64), q, "index {}", i);
        }
    }

    #[test]
    fn round_trip() {
        for i in 0..2000u64 {
            let q = rational_by_index(i);
            assert_eq!(rational_index(&q), i, "at {}", i);
        }
    }
}
