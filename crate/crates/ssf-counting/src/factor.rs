use arith_core::SieveCache;

/// Prime factorization with multiplicities, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor n ≥ 1. Uses the stored smallest-prime-factor table when n is
    /// within its range and trial division by sieved primes otherwise, which
    /// covers every n up to the square of the sieve limit.
    pub fn of(cache: &SieveCache, n: u64) -> Self {
        assert!(n >= 1, "factoring zero");
        if n <= cache.spf_limit() {
            let mut pairs = Vec::new();
            let mut m = n;
            while m > 1 {
                let p = cache.spf(m);
                let mut e = 0u32;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
            return Factorization { pairs };
        }
        let mut pairs = Vec::new();
        let mut m = n;
        for &p in cache.primes() {
            let p = p as u64;
            if p * p > m {
                break;
            }
            if m % p == 0 {
                let mut e = 0u32;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
        }
        if m > 1 {
            // No factor up to the sieve limit, so m is prime as long as it
            // fits under limit²; beyond that the sieve is simply too small.
            assert!(
                m / cache.limit() <= cache.limit(),
                "n = {n} is out of range for a sieve limited to {}",
                cache.limit()
            );
            pairs.push((m, 1));
        }
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// The primes p_1 ≤ p_2 ≤ … ≤ p_k with multiplicity.
    pub fn flattened(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat(p).take(e as usize))
    }

    pub fn value(&self) -> u128 {
        self.flattened().fold(1u128, |acc, p| acc * p as u128)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.pairs.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.pairs {
            let prev = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk = pk.checked_mul(p).expect("divisor overflow");
                for i in 0..prev {
                    out.push(out[i].checked_mul(pk).expect("divisor overflow"));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> SieveCache {
        SieveCache::build(1 << 12).unwrap()
    }

    #[test]
    fn factors_small_numbers() {
        let c = cache();
        assert_eq!(Factorization::of(&c, 1).pairs(), &[]);
        assert_eq!(Factorization::of(&c, 360).pairs(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(Factorization::of(&c, 97).pairs(), &[(97, 1)]);
    }

    #[test]
    fn trial_division_beyond_spf_range() {
        let c = cache();
        assert_eq!(Factorization::of(&c, 4099).pairs(), &[(4099, 1)]);
        assert_eq!(Factorization::of(&c, 2 * 4093).pairs(), &[(2, 1), (4093, 1)]);
        let n = 4093 * 4099;
        assert!(n > c.spf_limit() && n < c.limit() * c.limit());
        assert_eq!(Factorization::of(&c, n).pairs(), &[(4093, 1), (4099, 1)]);
    }

    #[test]
    fn divisors_ascending() {
        let c = cache();
        assert_eq!(Factorization::of(&c, 12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(Factorization::of(&c, 1).divisors(), vec![1]);
        let f = Factorization::of(&c, 720);
        let d = f.divisors();
        assert_eq!(d.len(), 30);
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|&q| 720 % q == 0));
    }

    #[test]
    fn flattened_view_is_sorted_with_multiplicity() {
        let c = cache();
        let f = Factorization::of(&c, 360);
        let flat: Vec<u64> = f.flattened().collect();
        assert_eq!(flat, vec![2, 2, 2, 3, 3, 5]);
        assert_eq!(f.value(), 360);
    }
}
