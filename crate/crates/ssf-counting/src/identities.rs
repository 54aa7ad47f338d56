use arith_core::{phi_count, ArithError, Enclosure, PrimeCutoff, Result, SieveCache};

use crate::chain::{first_admitted_index, for_each_chain, member_stream};
use crate::count::{count_d, CountQuery};
use crate::factor::Factorization;
use crate::rational::Rational64;
use crate::ssf::{divisor_ratio_max, schinzel_szekeres, ssf_of, ssf_sub};

fn inconsistent(msg: String) -> ArithError {
    ArithError::Inconsistent(msg)
}

/// The split identities hold only for y ≥ z. A just-below-p cutoff sits
/// infinitesimally under p, so a rational y clears it exactly when y ≥ p.
fn require_y_above_cutoff(y: Rational64, z: &PrimeCutoff) -> Result<()> {
    let ok = match *z {
        PrimeCutoff::Value { num, den } => {
            y.num() as u128 * den as u128 >= num as u128 * y.den() as u128
        }
        PrimeCutoff::JustBelow(p) => y.num() as u128 >= p as u128 * y.den() as u128,
    };
    if ok {
        Ok(())
    } else {
        Err(ArithError::InvalidArgument(format!(
            "split identities need y >= z, got y = {y}, z = {z:?}"
        )))
    }
}

/// F(n)/n equals the largest ratio of consecutive divisors, for every
/// 2 ≤ n ≤ n_max. Cross-multiplied, so the comparison is exact.
pub fn tenenbaum_check(cache: &SieveCache, n_max: u64) -> Result<()> {
    for n in 2..=n_max {
        let r = divisor_ratio_max(cache, n)?;
        let f = schinzel_szekeres(cache, n)?;
        if f * r.den() as u128 != n as u128 * r.num() as u128 {
            return Err(inconsistent(format!(
                "F({n}) = {f} but the largest divisor step is {r}"
            )));
        }
    }
    Ok(())
}

/// The recursion D(x,y,z) = 1 + Σ_{z<p≤y} D(x/p, py, p−0), verified
/// simultaneously at every integer x ≤ x_max for one fixed (y, z).
///
/// Left side: mark each family member n at position n. Right side: for each
/// admissible prime p, mark m·p for every member m of the p-extended family.
/// The prefix sums then give both sides of the identity at every x.
pub fn buchstab_profile_check(
    cache: &SieveCache,
    x_max: u64,
    y: Rational64,
    z: &PrimeCutoff,
) -> Result<()> {
    let size = x_max as usize + 1;
    let mut lhs = vec![0i64; size];
    let mut rhs = vec![0i64; size];
    for m in member_stream(cache, y, z, x_max) {
        lhs[m.value as usize] += 1;
    }
    for &p in cache.primes() {
        let p = p as u64;
        if p as u128 * y.den() as u128 > y.num() as u128 {
            break; // p ≤ y fails, and primes only grow
        }
        if !z.admits(p) {
            continue;
        }
        if p > x_max {
            continue;
        }
        let extended = y.mul_int(p);
        for m in member_stream(cache, extended, &PrimeCutoff::JustBelow(p), x_max / p) {
            rhs[(m.value * p) as usize] += 1;
        }
    }
    let mut dl = 0i64;
    let mut dr = 0i64;
    for x in 1..=x_max as usize {
        dl += lhs[x];
        dr += rhs[x];
        if dl != 1 + dr {
            return Err(inconsistent(format!(
                "recursion broke at x = {x}, y = {y}, z = {z:?}: {dl} vs 1 + {dr}"
            )));
        }
    }
    Ok(())
}

/// Same recursion, one (x, y, z) triple, both sides counted directly.
pub fn buchstab_spot_check(
    cache: &SieveCache,
    x: Rational64,
    y: Rational64,
    z: &PrimeCutoff,
) -> Result<()> {
    let lhs = count_d(cache, &CountQuery::new(x, y, z.clone()));
    let mut rhs = 1u64;
    for &p in cache.primes() {
        let p = p as u64;
        if p as u128 * y.den() as u128 > y.num() as u128 {
            break;
        }
        if !z.admits(p) {
            continue;
        }
        rhs += count_d(
            cache,
            &CountQuery::new(x.div_int(p), y.mul_int(p), PrimeCutoff::JustBelow(p)),
        );
    }
    if lhs != rhs {
        return Err(inconsistent(format!(
            "recursion at x = {x}, y = {y}, z = {z:?}: {lhs} vs {rhs}"
        )));
    }
    Ok(())
}

/// Φ(x, z) = Σ_n χ_{y,z}(n) Φ(x/n, yn) for y ≥ z ≥ 1: every z-rough m
/// factors uniquely as a family member n times a remainder r with
/// P⁻(r) > yn. (Below y = z the remainder cutoff yn stops implying
/// z-roughness and the split overcounts, so that range is rejected.)
pub fn lem0_check(cache: &SieveCache, x: Rational64, y: Rational64, z: &PrimeCutoff) -> Result<()> {
    require_y_above_cutoff(y, z)?;
    let lhs = phi_count(cache, x.num(), x.den(), z)?;
    let mut rhs = 0u64;
    for m in member_stream(cache, y, z, x.floor()) {
        let n = m.value;
        let shifted_cut = PrimeCutoff::ratio(
            y.num().checked_mul(n).expect("cutoff overflow"),
            y.den(),
        );
        rhs += phi_count(
            cache,
            x.num(),
            x.den().checked_mul(n).expect("scale overflow"),
            &shifted_cut,
        )?;
    }
    if lhs != rhs {
        return Err(inconsistent(format!(
            "rough-count split at x = {x}, y = {y}, z = {z:?}: {lhs} vs {rhs}"
        )));
    }
    Ok(())
}

/// D(x,y,z) − 1 = Φ(x,z) − Φ(x,y) − Σ_{2≤n≤√(x/y)} χ_{y,z}(n)(Φ(x/n, yn) − 1),
/// again for y ≥ z ≥ 1.
pub fn lem2_check(cache: &SieveCache, x: Rational64, y: Rational64, z: &PrimeCutoff) -> Result<()> {
    require_y_above_cutoff(y, z)?;
    let d = count_d(cache, &CountQuery::new(x, y, z.clone())) as i128;
    let phi_z = phi_count(cache, x.num(), x.den(), z)? as i128;
    let phi_y = phi_count(
        cache,
        x.num(),
        x.den(),
        &PrimeCutoff::ratio(y.num(), y.den()),
    )? as i128;
    let mut tail = 0i128;
    // n ≤ √(x/y) ⟺ n²·xden·ynum ≤ xnum·yden, and n² ≤ x/y bounds the scan.
    let ratio_floor = (x.num() as u128 * y.den() as u128) / (x.den() as u128 * y.num() as u128);
    let scan_cap = (ratio_floor as f64).sqrt() as u64 + 2;
    for m in member_stream(cache, y, z, scan_cap) {
        let n = m.value;
        if n < 2 {
            continue;
        }
        if n as u128 * n as u128 * x.den() as u128 * y.num() as u128
            > x.num() as u128 * y.den() as u128
        {
            break;
        }
        let inner = phi_count(
            cache,
            x.num(),
            x.den().checked_mul(n).expect("scale overflow"),
            &PrimeCutoff::ratio(y.num().checked_mul(n).expect("cutoff overflow"), y.den()),
        )? as i128;
        tail += inner - 1;
    }
    if d - 1 != phi_z - phi_y - tail {
        return Err(inconsistent(format!(
            "sieve split at x = {x}, y = {y}, z = {z:?}: {} vs {}",
            d - 1,
            phi_z - phi_y - tail
        )));
    }
    Ok(())
}

/// Per-n window data for the boundary set: n sits in the set at level x
/// exactly when max(n, F_sub(n)) ≤ x < F(n).
fn boundary_windows(cache: &SieveCache, x_max: u64) -> Vec<(u64, u64, u128)> {
    (2..=x_max)
        .map(|n| {
            let pmin = Factorization::of(cache, n).smallest_prime().unwrap();
            let entry = (n as u128).max(ssf_sub(cache, n));
            let exit = ssf_of(&Factorization::of(cache, n));
            (pmin, entry.min(u64::MAX as u128) as u64, exit)
        })
        .collect()
}

/// For every prime p and every integer x ≤ x_max, the boundary-set slice at
/// p has exactly as many elements as there are m ≤ x/p with F(m) ≤ x and
/// P⁻(m) > p. Both sides are built as difference arrays over x and compared
/// pointwise.
pub fn slice_count_profile_check(cache: &SieveCache, x_max: u64) -> Result<()> {
    let size = x_max as usize + 2;
    let windows = boundary_windows(cache, x_max);
    let mut by_prime: Vec<Vec<(u64, u64)>> = vec![Vec::new(); cache.prime_count_le(x_max)];
    for (i, &(pmin, entry, exit)) in windows.iter().enumerate() {
        let n = i as u64 + 2;
        debug_assert!(n >= 2);
        if entry > x_max {
            continue;
        }
        let exit = exit.min(x_max as u128 + 1) as u64;
        if entry >= exit {
            continue;
        }
        let idx = cache.prime_count_le(pmin) - 1;
        by_prime[idx].push((entry, exit));
    }
    let mut lhs = vec![0i64; size];
    let mut rhs = vec![0i64; size];
    for (idx, intervals) in by_prime.iter().enumerate() {
        let p = cache.primes()[idx] as u64;
        lhs.fill(0);
        rhs.fill(0);
        for &(entry, exit) in intervals {
            lhs[entry as usize] += 1;
            lhs[exit as usize] -= 1;
        }
        for_each_chain(cache, x_max / p, x_max as u128, idx + 1, &mut |m, fm| {
            let pos = (m as u128 * p as u128).max(fm);
            if pos <= x_max as u128 {
                rhs[pos as usize] += 1;
            }
        });
        let mut dl = 0i64;
        let mut dr = 0i64;
        for x in 1..=x_max as usize {
            dl += lhs[x];
            dr += rhs[x];
            if dl != dr {
                return Err(inconsistent(format!(
                    "slice count at p = {p}, x = {x}: {dl} members vs {dr} counted"
                )));
            }
        }
    }
    Ok(())
}

/// ⌊x⌋ = A(x) + Σ_{n in boundary set} ⌊x/n⌋ at every integer x ≤ x_max:
/// every m ≤ x either has F(m) ≤ x or is a multiple of exactly one boundary
/// element.
pub fn partition_profile_check(cache: &SieveCache, x_max: u64) -> Result<()> {
    let size = x_max as usize + 1;
    let mut a_marks = vec![0i64; size];
    a_marks[1] += 1; // F(1) = 1
    let mut acc = vec![0i64; size];
    for (i, &(_, entry, exit)) in boundary_windows(cache, x_max).iter().enumerate() {
        let n = i as u64 + 2;
        let f = ssf_of(&Factorization::of(cache, n));
        if f <= x_max as u128 {
            a_marks[f as usize] += 1;
        }
        if entry > x_max {
            continue;
        }
        let last = (exit - 1).min(x_max as u128) as u64;
        for x in entry..=last {
            acc[x as usize] += (x / n) as i64;
        }
    }
    let mut a_running = 0i64;
    for x in 1..=x_max as usize {
        a_running += a_marks[x];
        if a_running + acc[x] != x as i64 {
            return Err(inconsistent(format!(
                "partition at x = {x}: A = {a_running}, boundary multiples = {}",
                acc[x]
            )));
        }
    }
    Ok(())
}

/// ∫_1^x A(t,y,z) dt/t computed two ways. The left sweep sums over entry
/// times: each counted n contributes from t = max(n, F(n)/y) up to x. The
/// right sweep integrates the level counts D(x/t, yt, z) over t, where n is
/// visible for t between max(1, F(n)/(yn)) and x/n. Exact step-function
/// integration on both sides, so the enclosures must intersect.
pub fn integral_identity_check(
    cache: &SieveCache,
    x: Rational64,
    y: Rational64,
    z: &PrimeCutoff,
) -> Result<(Enclosure, Enclosure)> {
    if !x.is_at_least_one() {
        return Err(ArithError::InvalidArgument(format!(
            "integration range needs x >= 1, got {x}"
        )));
    }
    let ssf_bound = x.num() as u128 * y.num() as u128 / (x.den() as u128 * y.den() as u128);
    let min_idx = first_admitted_index(cache, z);
    let ln_x = x.ln_enclosure();

    let mut lhs = Enclosure::ZERO;
    for_each_chain(cache, x.floor(), ssf_bound, min_idx, &mut |n, f| {
        // Entry time max(n, F/y), compared exactly before taking any log.
        let entry = if n as u128 * y.num() as u128 >= f * y.den() as u128 {
            Rational64::from_int(n)
        } else {
            let num = f * y.den() as u128;
            assert!(num <= u64::MAX as u128, "entry numerator overflow");
            Rational64::new(num as u64, y.num())
        };
        if x > entry {
            lhs = lhs + (ln_x - entry.ln_enclosure());
        }
    });

    let mut rhs = Enclosure::ZERO;
    for_each_chain(cache, x.floor(), ssf_bound, min_idx, &mut |n, f| {
        let lower = if f * y.den() as u128 <= y.num() as u128 * n as u128 {
            Rational64::from_int(1)
        } else {
            let num = f * y.den() as u128;
            assert!(num <= u64::MAX as u128, "window numerator overflow");
            Rational64::new(
                num as u64,
                y.num().checked_mul(n).expect("window denominator overflow"),
            )
        };
        let upper = Rational64::new(
            x.num(),
            x.den().checked_mul(n).expect("window denominator overflow"),
        );
        if upper > lower {
            rhs = rhs + (upper.ln_enclosure() - lower.ln_enclosure());
        }
    });

    if !lhs.intersects(&rhs) {
        return Err(inconsistent(format!(
            "step integrals disagree at x = {x}, y = {y}, z = {z:?}: {lhs:?} vs {rhs:?}"
        )));
    }
    Ok((lhs, rhs))
}
