use arith_core::{ArithError, Result, SieveCache};

use crate::factor::Factorization;
use crate::rational::Rational64;

/// F(n) = max{d · P⁻(d) : d | n, d > 1}, with F(1) = 1.
///
/// Among divisors whose smallest prime is p_j the product d · P⁻(d) is
/// maximized by the full tail p_j p_{j+1} ⋯ p_k of the ascending
/// factorization, so F(n) is the largest of p_j · (suffix product at j).
pub fn schinzel_szekeres(cache: &SieveCache, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(ArithError::InvalidArgument("F(n) needs n >= 1".into()));
    }
    Ok(ssf_of(&Factorization::of(cache, n)))
}

/// F of an already-factored integer.
pub fn ssf_of(f: &Factorization) -> u128 {
    let mut suffix = f.value();
    let mut best = 1u128;
    for p in f.flattened() {
        best = best.max(p as u128 * suffix);
        suffix /= p as u128;
    }
    best
}

/// max over primes p | n of F(n/p): the largest F-value among maximal proper
/// divisors. By divisibility monotonicity of F this bounds F(d) for every
/// proper divisor d. Returns 1 for n = 1.
pub fn ssf_sub(cache: &SieveCache, n: u64) -> u128 {
    let f = Factorization::of(cache, n);
    let mut best = 1u128;
    for &(p, _) in f.pairs() {
        best = best.max(ssf_of(&Factorization::of(cache, n / p)));
    }
    best
}

/// The largest ratio of consecutive divisors of n, as an exact rational.
/// Equals F(n)/n for every n ≥ 2.
pub fn divisor_ratio_max(cache: &SieveCache, n: u64) -> Result<Rational64> {
    if n < 2 {
        return Err(ArithError::InvalidArgument(
            "consecutive divisor ratios need n >= 2".into(),
        ));
    }
    let divisors = Factorization::of(cache, n).divisors();
    let mut best = Rational64::new(divisors[1], divisors[0]);
    for w in divisors.windows(2) {
        let r = Rational64::new(w[1], w[0]);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}
