//! Randomized structural properties of F and the counts, driven by proptest:
//! monotonicity along divisors, the growth recurrence when a top prime is
//! appended, the elementary n·P⁻(n) and n² pinch, and agreement between the
//! chain-walk count and a literal scan.

use std::sync::OnceLock;

use arith_core::{PrimeCutoff, SieveCache};
use proptest::prelude::*;
use ssf_counting::{count_a, schinzel_szekeres, CountQuery, Factorization, Rational64};

fn cache() -> &'static SieveCache {
    static CACHE: OnceLock<SieveCache> = OnceLock::new();
    CACHE.get_or_init(|| SieveCache::build(1 << 14).unwrap())
}

fn brute_a(q: &CountQuery) -> u64 {
    let cache = cache();
    let mut count = 0;
    for n in 1..=q.x.floor() {
        let admitted = n == 1
            || q.z.admits(Factorization::of(cache, n).smallest_prime().unwrap());
        if !admitted {
            continue;
        }
        let f = schinzel_szekeres(cache, n).unwrap();
        if f * q.x.den() as u128 * q.y.den() as u128 <= q.x.num() as u128 * q.y.num() as u128 {
            count += 1;
        }
    }
    count
}

proptest! {
    #[test]
    fn f_is_monotone_along_divisors(a in 1u64..128, b in 1u64..128) {
        let cache = cache();
        let f_divisor = schinzel_szekeres(cache, a).unwrap();
        let f_multiple = schinzel_szekeres(cache, a * b).unwrap();
        prop_assert!(
            f_divisor <= f_multiple,
            "F({a}) = {f_divisor} exceeds F({}) = {f_multiple}",
            a * b
        );
    }

    #[test]
    fn appending_a_top_prime_follows_the_recurrence(m in 1u64..512, skip in 0usize..16) {
        let cache = cache();
        let top = Factorization::of(cache, m).largest_prime().unwrap_or(1);
        let p = cache
            .primes()
            .iter()
            .map(|&p| p as u64)
            .filter(|&p| p >= top && m * p <= cache.limit())
            .nth(skip);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let f_m = schinzel_szekeres(cache, m).unwrap();
        let f_mp = schinzel_szekeres(cache, m * p).unwrap();
        prop_assert_eq!(f_mp, (f_m * p as u128).max(p as u128 * p as u128));
    }

    #[test]
    fn f_is_pinched_between_first_prime_pull_and_square(n in 2u64..16384) {
        let cache = cache();
        let f = schinzel_szekeres(cache, n).unwrap();
        let pull = n as u128 * Factorization::of(cache, n).smallest_prime().unwrap() as u128;
        prop_assert!(f >= pull, "F({n}) = {f} under n·P⁻(n) = {pull}");
        prop_assert!(f <= n as u128 * n as u128, "F({n}) = {f} over n²");
    }

    #[test]
    fn chain_walk_count_matches_a_literal_scan(
        x_num in 1u64..1200,
        x_den in 1u64..4,
        y_num in 1u64..6,
        y_den in 1u64..4,
        z in prop::sample::select(vec![1u64, 2, 3, 5]),
    ) {
        let q = CountQuery::new(
            Rational64::new(x_num, x_den),
            Rational64::new(y_num, y_den),
            PrimeCutoff::integer(z),
        );
        prop_assert_eq!(count_a(cache(), &q), brute_a(&q));
    }
}
