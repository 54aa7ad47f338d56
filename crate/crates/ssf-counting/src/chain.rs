use std::cmp::Reverse;
use std::collections::BinaryHeap;

use arith_core::{PrimeCutoff, SieveCache};

use crate::factor::Factorization;
use crate::rational::Rational64;

/// χ_{y,z}(n): does n belong to the dense-divisor family? n = 1 always does.
/// For n ≥ 2 the flattened factorization p_1 ≤ … ≤ p_k must clear the cutoff
/// and satisfy every chain link p_{j+1} ≤ y · p_1 ⋯ p_j (with j = 0 reading
/// p_1 ≤ y).
pub fn is_member(cache: &SieveCache, n: u64, y: Rational64, z: &PrimeCutoff) -> bool {
    if n == 1 {
        return true;
    }
    let f = Factorization::of(cache, n);
    match f.smallest_prime() {
        Some(p) if z.admits(p) => {}
        _ => return false,
    }
    let mut product = 1u128;
    for p in f.flattened() {
        if p as u128 * y.den() as u128 > y.num() as u128 * product {
            return false;
        }
        product *= p as u128;
    }
    true
}

/// First index into the sieved prime list admitted by the cutoff.
pub(crate) fn first_admitted_index(cache: &SieveCache, z: &PrimeCutoff) -> usize {
    cache.primes().partition_point(|&p| !z.admits(p as u64))
}

/// Depth-first walk over every integer assembled from primes taken in
/// nondecreasing index order starting at `min_idx`, pruned by a cap on the
/// value and a cap on its F-value. Both caps are monotone along a chain and
/// in the appended prime, so each prune is a clean break.
///
/// Visits (n, F(n)) for every qualifying n, the root (1, 1) first. Order is
/// depth-first, not ascending.
pub fn for_each_chain<V: FnMut(u64, u128)>(
    cache: &SieveCache,
    n_bound: u64,
    ssf_bound: u128,
    min_idx: usize,
    visit: &mut V,
) {
    assert!(
        n_bound <= cache.limit(),
        "chain bound {n_bound} beyond sieve limit {}",
        cache.limit()
    );
    if n_bound == 0 || ssf_bound == 0 {
        return;
    }
    visit(1, 1);
    descend(cache.primes(), 1, 1, min_idx, n_bound, ssf_bound, visit);
}

fn descend<V: FnMut(u64, u128)>(
    primes: &[u32],
    m: u64,
    fm: u128,
    start_idx: usize,
    n_bound: u64,
    ssf_bound: u128,
    visit: &mut V,
) {
    for (offset, &p) in primes[start_idx.min(primes.len())..].iter().enumerate() {
        let p = p as u64;
        let v = match m.checked_mul(p) {
            Some(v) if v <= n_bound => v,
            _ => break,
        };
        let fv = (fm * p as u128).max(p as u128 * p as u128);
        if fv > ssf_bound {
            break;
        }
        visit(v, fv);
        descend(primes, v, fv, start_idx + offset, n_bound, ssf_bound, visit);
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Member {
    pub value: u64,
    pub ssf: u128,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    value: u64,
    parent: u64,
    idx: u32,
}

/// Ascending stream of the members of the dense-divisor family up to `bound`.
///
/// Every member other than 1 is some chain node m extended by the prime at
/// `idx`. Popping it pushes at most two successors: the exponent bump
/// value·p (always a member when in range) and the parent's next sibling
/// m·p', which needs its own chain link p' ≤ y·m. Each member enters the
/// heap exactly once, so the stream is strictly increasing and costs
/// O(log heap) per item.
pub struct MemberStream<'a> {
    cache: &'a SieveCache,
    y: Rational64,
    bound: u64,
    heap: BinaryHeap<Reverse<(Entry, u128)>>,
    emitted_root: bool,
}

pub fn member_stream<'a>(
    cache: &'a SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    bound: u64,
) -> MemberStream<'a> {
    assert!(
        bound <= cache.limit(),
        "member bound {bound} beyond sieve limit {}",
        cache.limit()
    );
    let mut stream = MemberStream {
        cache,
        y,
        bound,
        heap: BinaryHeap::new(),
        emitted_root: false,
    };
    let idx = first_admitted_index(cache, z);
    if let Some(&p) = cache.primes().get(idx) {
        let p = p as u64;
        // Chain link for the first prime: p ≤ y·1.
        if p <= bound && p as u128 * y.den() as u128 <= y.num() as u128 {
            stream.heap.push(Reverse((
                Entry {
                    value: p,
                    parent: 1,
                    idx: idx as u32,
                },
                1,
            )));
        }
    }
    stream
}

impl Iterator for MemberStream<'_> {
    type Item = Member;

    fn next(&mut self) -> Option<Member> {
        if !self.emitted_root {
            self.emitted_root = true;
            if self.bound >= 1 {
                return Some(Member { value: 1, ssf: 1 });
            }
            return None;
        }
        let Reverse((entry, parent_ssf)) = self.heap.pop()?;
        let primes = self.cache.primes();
        let p = primes[entry.idx as usize] as u64;
        let ssf = (parent_ssf * p as u128).max(p as u128 * p as u128);

        // Exponent bump: value·p stays a member whenever it stays in range.
        if let Some(child) = entry.value.checked_mul(p).filter(|&v| v <= self.bound) {
            self.heap.push(Reverse((
                Entry {
                    value: child,
                    parent: entry.value,
                    idx: entry.idx,
                },
                ssf,
            )));
        }

        // Parent's next sibling: same parent, next admissible prime.
        let sibling_idx = entry.idx as usize + 1;
        if let Some(&q) = primes.get(sibling_idx) {
            let q = q as u64;
            if let Some(v) = entry.parent.checked_mul(q).filter(|&v| v <= self.bound) {
                if q as u128 * self.y.den() as u128
                    <= self.y.num() as u128 * entry.parent as u128
                {
                    self.heap.push(Reverse((
                        Entry {
                            value: v,
                            parent: entry.parent,
                            idx: sibling_idx as u32,
                        },
                        parent_ssf,
                    )));
                }
            }
        }

        Some(Member {
            value: entry.value,
            ssf,
        })
    }
}

/// The member values up to `bound`, ascending.
pub fn enumerate_members(
    cache: &SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    bound: u64,
) -> Vec<u64> {
    member_stream(cache, y, z, bound).map(|m| m.value).collect()
}
