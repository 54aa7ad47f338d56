//! The oscillation term eta(t) = sum_{p<=t} ln p/(p-1) + gamma - ln t and
//! rigorous bounds on its tail behaviour.
//!
//! eta jumps up by ln p/(p-1) at each prime and decreases like -ln t in
//! between, so on any interval its supremum is attained at the left endpoint
//! or just after a prime jump, and its infimum at a left limit before a jump
//! or at the right endpoint. Beyond the sieve horizon we fall back on anchor
//! bounds of the form sup_{t>=T} |eta(t)| <= b, which are configuration data.

use crate::{ArithError, Enclosure, Result, SieveCache};

pub fn eta_at(cache: &SieveCache, num: u64, den: u64) -> Enclosure {
    assert!(den > 0 && num >= 2 * den, "eta defined for t >= 2");
    cache.logsum_to(num / den) + Enclosure::gamma() - (Enclosure::ln_u64(num) - Enclosure::ln_u64(den))
}

/// eta evaluated at the prime p itself (jump included).
pub fn eta_at_prime(cache: &SieveCache, p: u64) -> Enclosure {
    debug_assert!(cache.is_prime(p));
    cache.logsum_to(p) + Enclosure::gamma() - Enclosure::ln_u64(p)
}

/// Left limit of eta at the prime p (jump not yet taken).
pub fn eta_before_prime(cache: &SieveCache, p: u64) -> Enclosure {
    debug_assert!(cache.is_prime(p));
    cache.logsum_to(p - 1) + Enclosure::gamma() - Enclosure::ln_u64(p)
}

/// Tail-bound anchors: each pair (T, b) asserts sup_{t >= T} |eta(t)| <= b,
/// and `global_lower` asserts eta(t) >= global_lower for every t >= 2.
/// These are inputs, not derived here; reports record the values used.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaBoundConfig {
    pub anchors: Vec<(u64, f64)>,
    pub global_lower: f64,
}

impl Default for EtaBoundConfig {
    fn default() -> Self {
        EtaBoundConfig {
            anchors: vec![(1 << 21, 0.00105), (1 << 38, 0.00000305)],
            global_lower: -0.00000305,
        }
    }
}

impl EtaBoundConfig {
    pub fn validate(&self) -> Result<()> {
        if self.anchors.is_empty() {
            return Err(ArithError::Config("eta bounds need at least one anchor".into()));
        }
        for w in self.anchors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(ArithError::Config("eta anchors must be strictly increasing in T".into()));
            }
        }
        if self.anchors.iter().any(|&(_, b)| !(b > 0.0)) {
            return Err(ArithError::Config("eta anchor bounds must be positive".into()));
        }
        Ok(())
    }
}

/// One-sided tail bounds for eta on [x, infinity):
/// `upper >= sup eta`, `lower <= inf eta`, `abs >= sup |eta|`.
#[derive(Clone, Copy, Debug)]
pub struct EtaTailBounds {
    pub lower: f64,
    pub upper: f64,
    pub abs: f64,
}

pub fn eta_tail_bounds(cache: &SieveCache, cfg: &EtaBoundConfig, x: u64) -> Result<EtaTailBounds> {
    if x < 2 {
        return Err(ArithError::InvalidArgument("eta tail bounds need x >= 2".into()));
    }
    cfg.validate()?;

    // Best anchor already covering [x, inf).
    let covering = cfg
        .anchors
        .iter()
        .filter(|&&(t, _)| t <= x)
        .map(|&(_, b)| b)
        .fold(f64::INFINITY, f64::min);
    if covering.is_finite() {
        let lower = cfg.global_lower.max(-covering);
        return Ok(EtaTailBounds { lower, upper: covering, abs: covering });
    }

    // Otherwise scan exactly up to the first anchor and splice its bound on.
    let (t0, b0) = *cfg.anchors.first().expect("validated nonempty");
    if t0 > cache.limit() {
        return Err(ArithError::Config(format!(
            "eta anchor at {t0} is beyond the sieve limit {}; raise the sieve or add a lower anchor",
            cache.limit()
        )));
    }
    let mut sup_hi = eta_at(cache, x, 1).hi();
    let mut inf_lo = eta_at(cache, t0, 1).lo();
    let lo_idx = cache.prime_count_le(x);
    let hi_idx = cache.prime_count_le(t0);
    for idx in lo_idx..hi_idx {
        let p = cache.primes()[idx] as u64;
        let ln_p = Enclosure::ln_u64(p);
        let gamma = Enclosure::gamma();
        let after = cache.logsum_at_index(idx + 1) + gamma - ln_p;
        let before = cache.logsum_at_index(idx) + gamma - ln_p;
        sup_hi = sup_hi.max(after.hi());
        inf_lo = inf_lo.min(before.lo());
    }
    let upper = sup_hi.max(b0);
    let tail_lower = cfg.global_lower.max(-b0);
    let lower = cfg.global_lower.max(inf_lo.min(tail_lower));
    let abs = upper.max(-lower);
    Ok(EtaTailBounds { lower, upper, abs })
}
