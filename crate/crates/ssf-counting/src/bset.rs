use arith_core::{ArithError, PrimeCutoff, Result, SieveCache};

use crate::chain::for_each_chain;
use crate::rational::Rational64;

/// The boundary set of F at level x: all n with F(n) > x whose every proper
/// divisor d still has F(d) ≤ x (so n ≤ x as well, since F(n/p) ≥ n/p and
/// the divisor condition caps n/p, while F(n) > x forces n > 1).
///
/// Members are grouped by their smallest prime factor. The slice at p is
/// exactly {p·m : x/p² < m ≤ x/p, F(m) ≤ x, P⁻(m) ≥ p}: appending the new
/// smallest prime p to m turns F into max(F(m), p²m), so the window on m is
/// forced by F(pm) > x ≥ F(m), and the divisor condition reduces to
/// F(m) ≤ x.
#[derive(Clone, Debug)]
pub struct BSet {
    x: Rational64,
    slices: Vec<(u64, Vec<u64>)>,
    members: Vec<u64>,
}

pub fn enumerate_b(cache: &SieveCache, x: Rational64) -> Result<BSet> {
    if x.cmp_int(2).is_lt() {
        return Err(ArithError::InvalidArgument(format!(
            "boundary set needs x >= 2, got {x}"
        )));
    }
    let cap = x.floor();
    if cap > cache.limit() {
        return Err(ArithError::ResourceLimit(format!(
            "boundary set at x = {x} needs primes past the sieve limit {}",
            cache.limit()
        )));
    }
    let xnum = x.num() as u128;
    let xden = x.den() as u128;
    let mut slices: Vec<(u64, Vec<u64>)> = Vec::new();
    for (idx, &p) in cache.primes().iter().enumerate() {
        let p = p as u64;
        if p as u128 * xden > xnum {
            break;
        }
        let m_cap = (x.num() / (x.den().checked_mul(p).expect("slice cap overflow"))) as u64;
        let mut slice = Vec::new();
        for_each_chain(cache, m_cap, cap as u128, idx, &mut |m, _| {
            // Keep only m past x/p², where appending p first pushes F over x.
            if m as u128 * (p as u128 * p as u128) * xden > xnum {
                slice.push(p * m);
            }
        });
        if !slice.is_empty() {
            slice.sort_unstable();
            slices.push((p, slice));
        }
    }
    let mut members: Vec<u64> = slices.iter().flat_map(|(_, s)| s.iter().copied()).collect();
    members.sort_unstable();
    Ok(BSet { x, slices, members })
}

impl BSet {
    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn slices(&self) -> &[(u64, Vec<u64>)] {
        &self.slices
    }

    /// Members whose smallest prime factor is p.
    pub fn slice(&self, p: u64) -> &[u64] {
        self.slices
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|(_, s)| s.as_slice())
            .unwrap_or(&[])
    }

    /// Re-check every member against the defining conditions, straight from
    /// factorizations rather than from the slice construction.
    pub fn verify_member_definition(&self, cache: &SieveCache) -> Result<()> {
        use crate::factor::Factorization;
        use crate::ssf::{schinzel_szekeres, ssf_of};
        let xnum = self.x.num() as u128;
        let xden = self.x.den() as u128;
        for &n in &self.members {
            let f = schinzel_szekeres(cache, n)?;
            if n as u128 * xden > xnum || f * xden <= xnum {
                return Err(ArithError::Inconsistent(format!(
                    "boundary member {n} fails n <= {} < F(n)",
                    self.x
                )));
            }
            for &(p, _) in Factorization::of(cache, n).pairs() {
                let sub = ssf_of(&Factorization::of(cache, n / p));
                if sub * xden > xnum {
                    return Err(ArithError::Inconsistent(format!(
                        "boundary member {n} has F({}) > {}",
                        n / p,
                        self.x
                    )));
                }
            }
        }
        Ok(())
    }

    /// Pairwise lcm of distinct members must exceed x.
    pub fn verify_lcm_property(&self) -> Result<()> {
        verify_pairwise_lcm(&self.members, self.x)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn verify_pairwise_lcm(values: &[u64], x: Rational64) -> Result<()> {
    let xnum = x.num() as u128;
    let xden = x.den() as u128;
    for (i, &m) in values.iter().enumerate() {
        for &n in &values[i + 1..] {
            let l = m as u128 / gcd(m, n) as u128 * n as u128;
            if l * xden <= xnum {
                return Err(ArithError::Inconsistent(format!(
                    "lcm({m}, {n}) = {l} does not exceed {x}"
                )));
            }
        }
    }
    Ok(())
}

/// The boundary set with its two cheap patches applied: every member in
/// (x/6, x/5] is replaced by {2n, 3n, 5n} and every member in (x/12, x/11]
/// by {3n, 4n, 5n, 7n, 11n}. Both patches keep all elements ≤ x and keep the
/// pairwise-lcm property, while shaving the reciprocal sum.
#[derive(Clone, Debug)]
pub struct BPrime {
    pub x: Rational64,
    /// Sorted, after replacement.
    pub members: Vec<u64>,
    /// Original members that fell in (x/6, x/5].
    pub replaced_five: Vec<u64>,
    /// Original members that fell in (x/12, x/11].
    pub replaced_eleven: Vec<u64>,
}

pub fn build_b_prime(cache: &SieveCache, x: Rational64) -> Result<BPrime> {
    let base = enumerate_b(cache, x)?;
    let xnum = x.num() as u128;
    let xden = x.den() as u128;
    let inside = |n: u64, lo: u64, hi: u64| {
        // x/lo < n ≤ x/hi
        n as u128 * lo as u128 * xden > xnum && n as u128 * hi as u128 * xden <= xnum
    };
    let mut members = Vec::with_capacity(base.members().len());
    let mut replaced_five = Vec::new();
    let mut replaced_eleven = Vec::new();
    for &n in base.members() {
        if inside(n, 6, 5) {
            replaced_five.push(n);
            members.extend([2 * n, 3 * n, 5 * n]);
        } else if inside(n, 12, 11) {
            replaced_eleven.push(n);
            members.extend([3 * n, 4 * n, 5 * n, 7 * n, 11 * n]);
        } else {
            members.push(n);
        }
    }
    members.sort_unstable();
    for w in members.windows(2) {
        if w[0] == w[1] {
            return Err(ArithError::Inconsistent(format!(
                "patched boundary set at x = {x} produced {} twice",
                w[0]
            )));
        }
    }
    Ok(BPrime {
        x,
        members,
        replaced_five,
        replaced_eleven,
    })
}

impl BPrime {
    pub fn verify_lcm_property(&self) -> Result<()> {
        verify_pairwise_lcm(&self.members, self.x)
    }
}

/// |{n ∈ boundary set at x : P⁻(n) = p}| must equal the count of m ≤ x/p
/// with F(m) ≤ x and P⁻(m) > p. Exposed for the exact-identity suite; the
/// slice version with P⁻(m) ≥ p differs from this by trading the window
/// floor x/p² for a strict cutoff, and both countings must agree.
pub fn slice_count_reference(cache: &SieveCache, x: Rational64, p: u64) -> u64 {
    let q = crate::count::CountQuery::new(
        Rational64::new(x.num(), x.den().checked_mul(p).expect("slice cap overflow")),
        Rational64::from_int(p),
        PrimeCutoff::integer(p),
    );
    crate::count::count_a(cache, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::Factorization;
    use crate::ssf::{schinzel_szekeres, ssf_sub};

    fn cache() -> SieveCache {
        SieveCache::build(1 << 14).unwrap()
    }

    fn brute_b(cache: &SieveCache, x: Rational64) -> Vec<u64> {
        (2..=x.floor())
            .filter(|&n| {
                let f = schinzel_szekeres(cache, n).unwrap();
                let sub = ssf_sub(cache, n);
                f * x.den() as u128 > x.num() as u128
                    && sub * x.den() as u128 <= x.num() as u128
            })
            .collect()
    }

    #[test]
    fn pinned_small_sets() {
        let c = cache();
        assert_eq!(
            enumerate_b(&c, Rational64::from_int(4)).unwrap().members(),
            &[3, 4]
        );
        assert_eq!(
            enumerate_b(&c, Rational64::from_int(10)).unwrap().members(),
            &[5, 6, 7, 8, 9]
        );
        assert!(enumerate_b(&c, Rational64::new(3, 2)).is_err());
    }

    #[test]
    fn matches_brute_force_scan() {
        let c = cache();
        for x in [
            Rational64::from_int(4),
            Rational64::from_int(30),
            Rational64::from_int(100),
            Rational64::new(347, 2),
            Rational64::from_int(500),
            Rational64::from_int(2000),
        ] {
            let fast = enumerate_b(&c, x).unwrap();
            assert_eq!(fast.members(), brute_b(&c, x), "x = {x}");
            fast.verify_member_definition(&c).unwrap();
        }
    }

    #[test]
    fn slices_partition_by_smallest_prime() {
        let c = cache();
        let b = enumerate_b(&c, Rational64::from_int(300)).unwrap();
        let mut total = 0;
        for &(p, ref slice) in b.slices() {
            total += slice.len();
            for &n in slice {
                assert_eq!(Factorization::of(&c, n).smallest_prime().unwrap(), p);
            }
        }
        assert_eq!(total, b.members().len());
    }

    #[test]
    fn slice_sizes_match_strict_cutoff_count() {
        let c = cache();
        for xv in [4u64, 10, 50, 300, 1000] {
            let x = Rational64::from_int(xv);
            let b = enumerate_b(&c, x).unwrap();
            for &p in c.primes() {
                let p = p as u64;
                if p > xv {
                    break;
                }
                assert_eq!(
                    b.slice(p).len() as u64,
                    slice_count_reference(&c, x, p),
                    "x = {xv}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn lcm_property_holds_at_100() {
        let c = cache();
        enumerate_b(&c, Rational64::from_int(100))
            .unwrap()
            .verify_lcm_property()
            .unwrap();
    }

    #[test]
    fn patched_set_stays_in_range_and_keeps_lcm() {
        let c = cache();
        for xv in [50u64, 1000] {
            let x = Rational64::from_int(xv);
            let bp = build_b_prime(&c, x).unwrap();
            assert!(bp.members.iter().all(|&n| n <= xv));
            assert!(bp.members.windows(2).all(|w| w[0] < w[1]));
            if xv == 1000 {
                bp.verify_lcm_property().unwrap();
                assert!(!bp.replaced_five.is_empty());
            }
        }
    }

    #[test]
    fn untouched_when_windows_are_empty() {
        let c = cache();
        // At x = 10 the boundary set is {5,…,9}; (10/6, 2] and (10/12, 10/11]
        // hold no members, so the patch is the identity.
        let x = Rational64::from_int(10);
        let b = enumerate_b(&c, x).unwrap();
        let bp = build_b_prime(&c, x).unwrap();
        assert_eq!(b.members(), bp.members.as_slice());
        assert!(bp.replaced_five.is_empty() && bp.replaced_eleven.is_empty());
    }
}
