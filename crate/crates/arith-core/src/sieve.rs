//! Prime sieve with the prefix data every other module leans on:
//! the primes themselves, smallest prime factors for direct factorization,
//! and running enclosures of the Mertens product prod_{p<=t}(1-1/p) and the
//! log sum sum_{p<=t} ln p/(p-1) at each prime.

use crate::{ArithError, Enclosure, Result};

/// Cap on the smallest-prime-factor table; factorization is only needed for
/// arguments far below the full sieve limit and a per-integer u32 table at the
/// full limit would dominate memory.
const SPF_CAP: u64 = 1 << 22;

/// A lower cutoff for admissible primes. `Value(z)` admits primes strictly
/// greater than z; `JustBelow(p)` admits p itself and everything above, i.e.
/// the cutoff sits immediately below the prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeCutoff {
    Value { num: u64, den: u64 },
    JustBelow(u64),
}

impl PrimeCutoff {
    pub fn integer(z: u64) -> Self {
        PrimeCutoff::Value { num: z, den: 1 }
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den > 0, "cutoff denominator");
        PrimeCutoff::Value { num, den }
    }

    /// Does the prime (or smallest prime factor) `p` survive this cutoff?
    pub fn admits(&self, p: u64) -> bool {
        match *self {
            PrimeCutoff::Value { num, den } => p.checked_mul(den).expect("cutoff overflow") > num,
            PrimeCutoff::JustBelow(q) => p >= q,
        }
    }

    /// Largest integer m such that every prime <= m is excluded.
    /// (For `Value(z)` that is floor(z); for `JustBelow(p)` it is p-1.)
    pub fn floor_excluded(&self) -> u64 {
        match *self {
            PrimeCutoff::Value { num, den } => num / den,
            PrimeCutoff::JustBelow(q) => q - 1,
        }
    }

    /// Smallest admitted prime within the sieve, if any.
    pub fn effective_min_prime(&self, cache: &SieveCache) -> Option<u64> {
        let floor = self.floor_excluded();
        if floor >= cache.limit() {
            return None;
        }
        let k = cache.prime_count_le(floor);
        cache.primes().get(k).map(|&p| p as u64)
    }

    pub fn approx_value(&self) -> f64 {
        match *self {
            PrimeCutoff::Value { num, den } => num as f64 / den as f64,
            PrimeCutoff::JustBelow(q) => q as f64,
        }
    }
}

pub struct SieveCache {
    limit: u64,
    comp: Vec<u64>,
    primes: Vec<u32>,
    prod_prefix: Vec<Enclosure>,
    logsum_prefix: Vec<Enclosure>,
    spf: Vec<u32>,
}

impl SieveCache {
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 4 {
            return Err(ArithError::InvalidArgument(format!("sieve limit {limit} too small")));
        }
        if limit > (1 << 31) {
            return Err(ArithError::ResourceLimit(format!(
                "sieve limit {limit} exceeds the 2^31 build cap"
            )));
        }
        let n = limit as usize;
        let mut comp = vec![0u64; n / 64 + 1];
        let mark = |comp: &mut [u64], i: usize| comp[i >> 6] |= 1 << (i & 63);
        let test = |comp: &[u64], i: usize| comp[i >> 6] >> (i & 63) & 1 == 1;
        let mut i = 2usize;
        while i * i <= n {
            if !test(&comp, i) {
                let mut m = i * i;
                while m <= n {
                    mark(&mut comp, m);
                    m += i;
                }
            }
            i += 1;
        }
        let mut primes = Vec::new();
        for p in 2..=n {
            if !test(&comp, p) {
                primes.push(p as u32);
            }
        }

        let mut prod_prefix = Vec::with_capacity(primes.len());
        let mut logsum_prefix = Vec::with_capacity(primes.len());
        let mut prod = Enclosure::ONE;
        let mut logsum = Enclosure::ZERO;
        for &p in &primes {
            let p64 = p as u64;
            prod = prod * (Enclosure::from_u64(p64 - 1) / Enclosure::from_u64(p64));
            logsum = logsum + Enclosure::ln_u64(p64) / Enclosure::from_u64(p64 - 1);
            prod_prefix.push(prod);
            logsum_prefix.push(logsum);
        }

        let spf_limit = limit.min(SPF_CAP) as usize;
        let mut spf = vec![0u32; spf_limit + 1];
        for &p in &primes {
            let p = p as usize;
            if p > spf_limit {
                break;
            }
            let mut m = p;
            while m <= spf_limit {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }

        Ok(SieveCache { limit, comp, primes, prod_prefix, logsum_prefix, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spf_limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "primality query {n} beyond sieve limit {}", self.limit);
        n >= 2 && self.comp[(n >> 6) as usize] >> (n & 63) & 1 == 0
    }

    /// Smallest prime factor of n (2 <= n <= spf_limit).
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// Number of primes <= x.
    pub fn prime_count_le(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p as u64 <= x)
    }

    fn excluded_count(&self, cut: &PrimeCutoff) -> usize {
        self.prime_count_le(cut.floor_excluded())
    }

    /// prod_{p <= m} (1 - 1/p) over the first `prime_count_le(m)` primes.
    pub fn product_to(&self, m: u64) -> Enclosure {
        self.product_at_index(self.prime_count_le(m))
    }

    /// sum_{p <= m} ln p / (p - 1).
    pub fn logsum_to(&self, m: u64) -> Enclosure {
        self.logsum_at_index(self.prime_count_le(m))
    }

    /// Product over the first k primes (k = 0 gives 1).
    pub fn product_at_index(&self, k: usize) -> Enclosure {
        if k == 0 {
            Enclosure::ONE
        } else {
            self.prod_prefix[k - 1]
        }
    }

    pub fn logsum_at_index(&self, k: usize) -> Enclosure {
        if k == 0 {
            Enclosure::ZERO
        } else {
            self.logsum_prefix[k - 1]
        }
    }

    /// Mertens product over the primes excluded by the cutoff.
    pub fn mertens_product(&self, cut: &PrimeCutoff) -> Enclosure {
        self.product_at_index(self.excluded_count(cut))
    }

    /// Log sum over the primes excluded by the cutoff.
    pub fn mertens_logsum(&self, cut: &PrimeCutoff) -> Enclosure {
        self.logsum_at_index(self.excluded_count(cut))
    }

    /// Number of primes excluded by `hi` but admitted by `lo`, i.e. primes in
    /// the half-open gap between the two cutoffs.
    pub fn prime_count_between(&self, lo: &PrimeCutoff, hi: &PrimeCutoff) -> usize {
        self.excluded_count(hi).saturating_sub(self.excluded_count(lo))
    }

    /// Per-prime partial sums of 1/k and ln k/k for 2 <= k <= p, reported for
    /// every prime p <= horizon (aligned with `primes()`).
    pub fn harmonic_log_prefixes(&self, horizon: u64) -> Result<(Vec<Enclosure>, Vec<Enclosure>)> {
        if horizon > self.limit {
            return Err(ArithError::InvalidArgument(format!(
                "prefix horizon {horizon} beyond sieve limit {}",
                self.limit
            )));
        }
        let mut h = Enclosure::ZERO;
        let mut l = Enclosure::ZERO;
        let mut hs = Vec::new();
        let mut ls = Vec::new();
        for k in 2..=horizon {
            let ik = Enclosure::from_u64(k);
            h = h + ik.recip();
            l = l + ik.ln() / ik;
            if self.is_prime(k) {
                hs.push(h);
                ls.push(l);
            }
        }
        Ok((hs, ls))
    }
}
