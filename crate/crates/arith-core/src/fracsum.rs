//! Exact fractional-part sums over primes: sum_{p <= x} {x/p} with x an
//! integer equals sum (x mod p)/p, which we accumulate as one unreduced big
//! fraction. The denominators are distinct primes, so nothing would reduce
//! anyway until terms are merged.

use num_bigint::BigUint;

use crate::bigratio::tree_sum;
use crate::{ArithError, Result, SieveCache};

/// Sum of the fractional parts {x/p} over primes p <= x, as an exact
/// (numerator, denominator) pair, unreduced.
pub fn frac_sum_over_primes(cache: &SieveCache, x: u64) -> Result<(BigUint, BigUint)> {
    if x < 2 || x > cache.limit() {
        return Err(ArithError::InvalidArgument(format!(
            "frac_sum_over_primes needs 2 <= x <= sieve limit, got {x}"
        )));
    }
    let mut terms = Vec::new();
    for &p in cache.primes() {
        let p = p as u64;
        if p > x {
            break;
        }
        let r = x % p;
        if r != 0 {
            terms.push((BigUint::from(r), BigUint::from(p)));
        }
    }
    Ok(tree_sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn ten_is_sixteen_twentyfirsts() {
        let s = SieveCache::build(100).unwrap();
        let (num, den) = frac_sum_over_primes(&s, 10).unwrap();
        // 0/2 + 1/3 + 0/5 + 3/7 = 16/21
        assert_eq!(&num * BigUint::from(21u32), &den * BigUint::from(16u32));
    }

    #[test]
    fn twelve() {
        let s = SieveCache::build(100).unwrap();
        let (num, den) = frac_sum_over_primes(&s, 12).unwrap();
        // 0/2 + 0/3 + 2/5 + 5/7 + 1/11 = (154 + 275 + 35)/385 = 464/385
        assert_eq!(&num * BigUint::from(385u32), &den * BigUint::from(464u32));
    }
}
