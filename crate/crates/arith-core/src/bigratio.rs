//! Exact rational accumulation without reduction.
//!
//! Sums like Σ 1/n over tens of thousands of terms are kept as unreduced
//! big-integer fractions: a balanced tree of pairwise merges keeps the operand
//! sizes roughly equal so the schoolbook/Karatsuba multiplies stay cheap, and
//! no gcd is ever taken (reducing a multi-megabit fraction once costs more
//! than the whole sum). Directed conversion to an [`Enclosure`] goes through
//! one big division with an explicit remainder bracket.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::Enclosure;

/// Sum of num/den terms as one unreduced fraction (0/1 for no terms).
pub fn tree_sum(mut terms: Vec<(BigUint, BigUint)>) -> (BigUint, BigUint) {
    if terms.is_empty() {
        return (BigUint::zero(), BigUint::one());
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some((an, ad)) = it.next() {
            match it.next() {
                Some((bn, bd)) => next.push((&an * &bd + &bn * &ad, ad * bd)),
                None => next.push((an, ad)),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// Tight two-sided f64 bracket of num/den (both positive, num may be 0).
pub fn ratio_to_enclosure(num: &BigUint, den: &BigUint) -> Enclosure {
    assert!(!den.is_zero());
    if num.is_zero() {
        return Enclosure::ZERO;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so the integer quotient q has 64-65 bits; then num/den lies in
    // [q, q+1] * 2^-s and the top 53 bits of q give exact f64 endpoints.
    let s = db - nb + 64;
    let q: BigUint = if s >= 0 { (num << s as u64) / den } else { num / (den << (-s) as u64) };
    let qb = q.bits() as i64;
    let k = qb - 53;
    debug_assert!(k > 0);
    let m: u64 = (&q >> k as u64).try_into().expect("53-bit mantissa");
    let e = (k - s) as i32;
    assert!((-1000..=1000).contains(&e), "ratio outside f64 range");
    let scale = 2f64.powi(e);
    Enclosure::new((m as f64) * scale, ((m + 1) as f64) * scale)
}

/// Signed variant for BigInt numerator/denominator.
pub fn signed_ratio_to_enclosure(num: &BigInt, den: &BigInt) -> Enclosure {
    let negative = (num.sign() == num_bigint::Sign::Minus) != (den.sign() == num_bigint::Sign::Minus);
    let e = ratio_to_enclosure(num.magnitude(), den.magnitude());
    if negative {
        -e
    } else {
        e
    }
}
