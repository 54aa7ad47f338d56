//! Counts of cutoff-rough integers: Phi(x, z) = #{n <= x : every prime factor
//! of n survives the cutoff z} (n = 1 always counts), plus the density gap
//! between two cutoffs and the number of primes caught between them.

use std::collections::HashMap;

use crate::{ArithError, Enclosure, PrimeCutoff, Result, SieveCache};

/// Node budget for the Legendre-style recursion; past this we refuse rather
/// than thrash.
const PHI_NODE_BUDGET: u64 = 50_000_000;

/// Phi(x, cut) for rational x = num/den >= 0, by the inclusion-exclusion
/// recursion phi(x, k) = phi(x, k-1) - phi(x/p_k, k-1) with memoization on
/// the accumulated divisor. When the cutoff square exceeds x only 1 and the
/// surviving primes remain, which collapses to a prime count.
pub fn phi_count(cache: &SieveCache, num: u64, den: u64, cut: &PrimeCutoff) -> Result<u64> {
    if den == 0 {
        return Err(ArithError::InvalidArgument("phi_count denominator 0".into()));
    }
    let x = num / den;
    if x > cache.limit() {
        return Err(ArithError::InvalidArgument(format!(
            "phi_count needs x <= sieve limit, got {x} > {}",
            cache.limit()
        )));
    }
    if x == 0 {
        return Ok(0);
    }
    let floor_excl = cut.floor_excluded();
    let k = cache.prime_count_le(floor_excl);
    // Every surviving n <= x other than 1 is prime once floor_excl^2 >= x.
    if floor_excl.checked_mul(floor_excl).map_or(true, |sq| sq >= x) {
        let surviving_primes = cache.prime_count_le(x).saturating_sub(k);
        return Ok(1 + surviving_primes as u64);
    }
    let mut memo = HashMap::new();
    let mut nodes = 0u64;
    let v = phi_rec(cache, x, k, &mut memo, &mut nodes)?;
    Ok(v as u64)
}

fn phi_rec(
    cache: &SieveCache,
    x: u64,
    k: usize,
    memo: &mut HashMap<(u64, u32), i64>,
    nodes: &mut u64,
) -> Result<i64> {
    *nodes += 1;
    if *nodes > PHI_NODE_BUDGET {
        return Err(ArithError::ResourceLimit(
            "phi_count recursion exceeded its node budget; reduce x or the cutoff".into(),
        ));
    }
    if k == 0 {
        return Ok(x as i64);
    }
    if x == 0 {
        return Ok(0);
    }
    let p = cache.primes()[k - 1] as u64;
    if p > x {
        // All excluded primes above x: only the excluded ones <= x matter.
        return phi_rec(cache, x, cache.prime_count_le(x), memo, nodes);
    }
    if let Some(&v) = memo.get(&(x, k as u32)) {
        return Ok(v);
    }
    let a = phi_rec(cache, x, k - 1, memo, nodes)?;
    let b = phi_rec(cache, x / p, k - 1, memo, nodes)?;
    let v = a - b;
    memo.insert((x, k as u32), v);
    Ok(v)
}

/// Direct scan oracle for Phi, O(x) on the spf table.
pub fn phi_count_scan(cache: &SieveCache, x: u64, cut: &PrimeCutoff) -> u64 {
    assert!(x <= cache.spf_limit(), "scan oracle needs x within the spf table");
    let mut count = 1; // n = 1
    for n in 2..=x {
        if cut.admits(cache.spf(n)) {
            count += 1;
        }
    }
    count
}

/// Density difference between two cutoffs: product over primes excluded by
/// `lo` minus product over primes excluded by `hi`; nonnegative when `hi`
/// excludes at least as much as `lo`.
pub fn lambda_density(cache: &SieveCache, hi: &PrimeCutoff, lo: &PrimeCutoff) -> Enclosure {
    cache.mertens_product(lo) - cache.mertens_product(hi)
}

/// Number of primes admitted by `lo` but excluded by `hi`.
pub fn prime_count_between(cache: &SieveCache, lo: &PrimeCutoff, hi: &PrimeCutoff) -> usize {
    cache.prime_count_between(lo, hi)
}
