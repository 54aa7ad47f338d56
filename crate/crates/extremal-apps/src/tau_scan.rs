use arith_core::{ArithError, Enclosure, PrimeCutoff, Result, SieveCache};
use ssf_counting::{
    count_a, enumerate_b, ssf_of, ssf_sub, CountQuery, Factorization, Rational64,
};

use crate::recip::RawSum;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A membership change of the relaxed remover set at level k: the boundary
/// set at k gains n once k passes both n and the largest growth value among
/// the proper divisors of n, and loses n again once k reaches the growth
/// value of n itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Event {
    at: u64,
    enter: bool,
    n: u64,
}

/// The τ-relaxed sieve at level x: for τ = k/x the removers are the
/// boundary set at k together with the primes in (k, x], the reciprocal
/// budget constrains which k are admissible, and the survivor count is the
/// number of integers whose growth value stays within k.
///
/// Everything in sight is a step function of k jumping only at integers, so
/// the scan over k = 1..⌊x⌋ is exhaustive, not a discretization. The running
/// reciprocal sum is kept as an outward-rounded enclosure, updated by one
/// unit fraction per membership event; a budget comparison that the
/// enclosure cannot settle (the sum would have to sit within ~1e-10 of the
/// budget) falls back to the exact rational sum at that single k. Prime
/// events need no bookkeeping below their square: p joins the boundary set
/// at k = p, exactly when it leaves the prime tail, and the two unit
/// fractions cancel.
pub struct TauScan<'a> {
    cache: &'a SieveCache,
    x: Rational64,
    floor: u64,
    events: Vec<Event>,
    /// Σ 1/p over all primes p ≤ x: the sum at k = 1.
    start: Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarOutcome {
    pub count: u64,
    pub tau: Rational64,
    /// τx, the integer level the minimum was taken at.
    pub tau_x: u64,
}

impl<'a> TauScan<'a> {
    pub fn new(cache: &'a SieveCache, x: Rational64) -> Result<Self> {
        if x.cmp_int(2).is_lt() {
            return Err(ArithError::InvalidArgument(format!(
                "tau scan needs x >= 2, got {x}"
            )));
        }
        let floor = x.floor();
        if floor > cache.limit() {
            return Err(ArithError::ResourceLimit(format!(
                "tau scan at x = {x} needs primes past the sieve limit {}",
                cache.limit()
            )));
        }
        let mut start = Enclosure::ZERO;
        for &p in cache.primes() {
            if p as u64 > floor {
                break;
            }
            start = start + Enclosure::from_ratio(1, p as i64);
        }
        let mut events = Vec::new();
        for n in 2..=floor {
            let fac = Factorization::of(cache, n);
            let growth = ssf_of(&fac);
            let prime = fac.smallest_prime() == Some(n);
            if prime {
                if growth <= floor as u128 {
                    events.push(Event {
                        at: growth as u64,
                        enter: false,
                        n,
                    });
                }
                continue;
            }
            let entry = (n as u128).max(ssf_sub(cache, n));
            if entry > floor as u128 {
                continue;
            }
            events.push(Event {
                at: entry as u64,
                enter: true,
                n,
            });
            if growth <= floor as u128 {
                events.push(Event {
                    at: growth as u64,
                    enter: false,
                    n,
                });
            }
        }
        events.sort_unstable();
        Ok(TauScan {
            cache,
            x,
            floor,
            events,
            start,
        })
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    /// Smallest admissible k and the survivor count there. The survivor
    /// count is nondecreasing in k, so the first k whose reciprocal sum
    /// fits the budget is the minimizer; None means no k fits.
    pub fn minimize(&self, budget: Rational64) -> Result<Option<HStarOutcome>> {
        if budget.num() == 0 {
            return Err(ArithError::InvalidArgument(
                "tau scan needs a positive budget".into(),
            ));
        }
        let budget_enc =
            Enclosure::from_u64(budget.num()) * Enclosure::from_u64(budget.den()).recip();
        let mut sum = self.start;
        let mut next = 0usize;
        for k in 1..=self.floor {
            while next < self.events.len() && self.events[next].at == k {
                let term = Enclosure::from_ratio(1, self.events[next].n as i64);
                sum = if self.events[next].enter {
                    sum + term
                } else {
                    sum - term
                };
                next += 1;
            }
            let feasible = if sum.hi() <= budget_enc.lo() {
                true
            } else if sum.lo() > budget_enc.hi() {
                false
            } else {
                self.exact_sum_at(k)?.at_most(budget.num(), budget.den())
            };
            if feasible {
                return Ok(Some(self.outcome_at(k)));
            }
        }
        Ok(None)
    }

    /// The reciprocal sum at level k, exactly: boundary members at k plus
    /// the primes in (k, x].
    fn exact_sum_at(&self, k: u64) -> Result<RawSum> {
        let mut terms = Vec::new();
        if k >= 2 {
            terms.extend_from_slice(enumerate_b(self.cache, Rational64::from_int(k))?.members());
        }
        for &p in self.cache.primes() {
            let p = p as u64;
            if p > self.floor {
                break;
            }
            if p > k {
                terms.push(p);
            }
        }
        Ok(RawSum::from_terms(&terms))
    }

    fn outcome_at(&self, k: u64) -> HStarOutcome {
        let query = CountQuery::new(
            Rational64::from_int(k),
            Rational64::from_int(1),
            PrimeCutoff::integer(1),
        );
        let count = count_a(self.cache, &query);
        let num = k * self.x.den();
        let g = gcd(num, self.x.num());
        HStarOutcome {
            count,
            tau: Rational64::new(num / g, self.x.num() / g),
            tau_x: k,
        }
    }
}

/// One-shot form of the scan at a single budget.
pub fn h_star(
    cache: &SieveCache,
    x: Rational64,
    budget: Rational64,
) -> Result<Option<HStarOutcome>> {
    TauScan::new(cache, x)?.minimize(budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> SieveCache {
        SieveCache::build(1 << 14).unwrap()
    }

    #[test]
    fn pinned_small_levels() {
        let c = cache();
        let one = Rational64::from_int(1);
        // At x = 2 the whole prime tail is 1/2, so k = 1 already fits.
        let h = h_star(&c, Rational64::from_int(2), one).unwrap().unwrap();
        assert_eq!((h.count, h.tau_x), (1, 1));
        assert_eq!(h.tau, Rational64::new(1, 2));
        // At x = 5 the levels 1..3 all carry sum 31/30; k = 4 drops the
        // started chain 2 for 4 and lands on 47/60.
        let h = h_star(&c, Rational64::from_int(5), one).unwrap().unwrap();
        assert_eq!((h.count, h.tau_x), (2, 4));
        assert_eq!(h.tau, Rational64::new(4, 5));
    }

    #[test]
    fn tiny_budgets_are_infeasible() {
        let c = cache();
        let out = h_star(&c, Rational64::from_int(10), Rational64::new(1, 1000)).unwrap();
        assert!(out.is_none());
        assert!(h_star(&c, Rational64::from_int(10), Rational64::new(0, 5)).is_err());
    }

    #[test]
    fn agrees_with_a_literal_exact_scan() {
        let c = cache();
        let budgets = [
            Rational64::new(1, 2),
            Rational64::from_int(1),
            Rational64::from_int(2),
        ];
        let xs = [
            Rational64::from_int(2),
            Rational64::from_int(7),
            Rational64::from_int(23),
            Rational64::new(347, 2),
            Rational64::from_int(400),
        ];
        for x in xs {
            let scan = TauScan::new(&c, x).unwrap();
            for budget in budgets {
                let fast = scan.minimize(budget).unwrap();
                let slow = literal(&c, x, budget);
                assert_eq!(
                    fast.map(|h| (h.tau_x, h.count)),
                    slow,
                    "x = {x}, budget = {budget}"
                );
            }
        }
    }

    /// Reference scan: the exact rational sum at every k, no enclosures.
    fn literal(c: &SieveCache, x: Rational64, budget: Rational64) -> Option<(u64, u64)> {
        let floor = x.floor();
        for k in 1..=floor {
            let mut terms = Vec::new();
            if k >= 2 {
                terms.extend_from_slice(enumerate_b(c, Rational64::from_int(k)).unwrap().members());
            }
            for &p in c.primes() {
                let p = p as u64;
                if p > floor {
                    break;
                }
                if p > k {
                    terms.push(p);
                }
            }
            if RawSum::from_terms(&terms).at_most(budget.num(), budget.den()) {
                let query = CountQuery::new(
                    Rational64::from_int(k),
                    Rational64::from_int(1),
                    PrimeCutoff::integer(1),
                );
                return Some((k, count_a(c, &query)));
            }
        }
        None
    }

    #[test]
    fn rejects_degenerate_levels() {
        let c = cache();
        assert!(TauScan::new(&c, Rational64::new(3, 2)).is_err());
        assert!(TauScan::new(&c, Rational64::from_int(1 << 15)).is_err());
    }
}
