use arith_core::{ArithError, PrimeCutoff, Result, SieveCache};
use ssf_counting::{count_a, CountQuery, Rational64};

const EXACT_CAP: u64 = 20;

/// Longest simple path in the divisor graph on 1..n, counted in vertices.
/// Exact, by dynamic programming over vertex subsets with the reachable
/// endpoints of each subset tracked in a bitmask; the state space is 2^n,
/// hence the hard cap.
pub fn f_exact(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(ArithError::InvalidArgument(
            "divisor graph needs n >= 1".into(),
        ));
    }
    if n > EXACT_CAP {
        return Err(ArithError::ResourceLimit(format!(
            "exact path search stops at n <= {EXACT_CAP}, got {n}"
        )));
    }
    let n = n as usize;
    let adj: Vec<u32> = (1..=n)
        .map(|a| {
            let mut mask = 0u32;
            for b in 1..=n {
                if a != b && (a % b == 0 || b % a == 0) {
                    mask |= 1 << (b - 1);
                }
            }
            mask
        })
        .collect();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1u32;
    for mask in 1..(1u32 << n) {
        let reachable = ends[mask as usize];
        if reachable == 0 {
            continue;
        }
        best = best.max(mask.count_ones());
        let mut scan = reachable;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                ends[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    Ok(best as u64)
}

/// Lower bound for the path count: the number of integers whose growth
/// value stays within n/2. Each of them divides a distinct integer in
/// (n/2, n], which chains them into one path.
pub fn f_lower(cache: &SieveCache, n: u64) -> u64 {
    let query = CountQuery::new(
        Rational64::new(n, 2),
        Rational64::from_int(1),
        PrimeCutoff::integer(1),
    );
    count_a(cache, &query)
}
