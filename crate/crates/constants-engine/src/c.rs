//! Local density of the dense-divisor family.
//!
//! For an allowance y and cutoff z the family's counting function grows like
//! c_{y,z} · x, and the constant has the convergent series form
//!
//!   c_{y,z}/C = sum over members n of (1/n)(Sigma(yn) - Sigma(z) - ln n) Pi(yn)
//!
//! where Sigma(t) = sum_{p<=t} ln p/(p-1) and Pi(t) = prod_{p<=t}(1-1/p).
//! Truncating at n <= N leaves a tail controlled by the same residual
//!
//!   eps(N) = Pi(z) - sum_{n<=N} (1/n) Pi(yn),
//!
//! which is a nonnegative series remainder: multiplying it by the coefficient
//! band ln y - gamma - Sigma(z) +- E(yN), with E the oscillation tail bound
//! past yN, brackets everything the truncation dropped.

use std::time::Instant;

use arith_core::{
    eta_tail_bounds, ArithError, Enclosure, PrimeCutoff, Result, SieveCache,
};
use ssf_counting::{member_stream, Rational64};

use crate::params::{ConstantReport, TruncationParams};

/// True when the cutoff sits at or above 1, the smallest value the series
/// treatment tolerates.
pub(crate) fn cutoff_at_least_one(z: &PrimeCutoff) -> bool {
    match *z {
        PrimeCutoff::Value { num, den } => num >= den,
        PrimeCutoff::JustBelow(p) => p >= 2,
    }
}

/// True when the allowance y is at least the cutoff's real value.
pub(crate) fn allowance_covers_cutoff(y: Rational64, z: &PrimeCutoff) -> bool {
    match *z {
        PrimeCutoff::Value { num, den } => {
            y.num() as u128 * den as u128 >= num as u128 * y.den() as u128
        }
        // The only rationals >= p-0 are those >= p.
        PrimeCutoff::JustBelow(p) => y.cmp_int(p) != std::cmp::Ordering::Less,
    }
}

pub(crate) fn cutoff_label(z: &PrimeCutoff) -> String {
    match *z {
        PrimeCutoff::Value { num, den } if den == 1 => format!("{num}"),
        PrimeCutoff::Value { num, den } => format!("{num}/{den}"),
        PrimeCutoff::JustBelow(p) => format!("{p}-0"),
    }
}

pub(crate) fn validate_pair(y: Rational64, z: &PrimeCutoff) -> Result<()> {
    if !y.is_at_least_one() {
        return Err(ArithError::InvalidArgument(format!("allowance y = {y} must be at least 1")));
    }
    if !cutoff_at_least_one(z) {
        return Err(ArithError::InvalidArgument("cutoff z must be at least 1".into()));
    }
    Ok(())
}

/// No prime in the gap (z, y] means the family is {1} alone and the density
/// constant vanishes identically.
pub(crate) fn is_degenerate_cell(cache: &SieveCache, y: Rational64, z: &PrimeCutoff) -> bool {
    let y_cut = PrimeCutoff::ratio(y.num(), y.den());
    cache.prime_count_between(z, &y_cut) == 0
}

pub fn compute_c(
    cache: &SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    params: &TruncationParams,
) -> Result<ConstantReport> {
    let started = Instant::now();
    params.validate(cache)?;
    validate_pair(y, z)?;
    let name = format!("c[y={y},z={}]", cutoff_label(z));

    if is_degenerate_cell(cache, y, z) {
        return Ok(ConstantReport::new(
            name,
            Enclosure::ZERO,
            vec![("admissible primes".into(), Enclosure::ZERO)],
            params.clone(),
            started.elapsed().as_secs_f64(),
        ));
    }
    // A prime in (z, y] forces y > z, so the series route is always in range
    // for non-degenerate cells.
    debug_assert!(allowance_covers_cutoff(y, z));

    let n_max = params.n_main;
    let yn_max = y.mul_int(n_max).floor();
    if yn_max > cache.limit() {
        return Err(ArithError::ResourceLimit(format!(
            "series needs primes to {yn_max}, beyond the sieve limit {}",
            cache.limit()
        )));
    }
    let tail = eta_tail_bounds(cache, &params.eta, yn_max.max(2))?;

    let gamma = Enclosure::gamma();
    let sigma_z = cache.mertens_logsum(z);
    let pi_z = cache.mertens_product(z);
    let ln_y = y.ln_enclosure();

    let mut s1 = Enclosure::ZERO;
    let mut partial = Enclosure::ZERO;
    let mut idx = 0usize;
    let primes = cache.primes();
    for m in member_stream(cache, y, z, n_max) {
        let n = m.value;
        let yn = y.mul_int(n).floor();
        while idx < primes.len() && primes[idx] as u64 <= yn {
            idx += 1;
        }
        let pi_yn = cache.product_at_index(idx);
        let sigma_yn = cache.logsum_at_index(idx);
        let inv_n = Enclosure::from_ratio(1, n as i64);
        s1 = s1 + inv_n * (sigma_yn - sigma_z - Enclosure::ln_u64(n)) * pi_yn;
        partial = partial + inv_n * pi_yn;
    }

    let eps_raw = pi_z - partial;
    if eps_raw.hi() < 0.0 {
        return Err(ArithError::Inconsistent(format!(
            "series residual eps(N) = [{}, {}] is negative; the partial sums overshot",
            eps_raw.lo(),
            eps_raw.hi()
        )));
    }
    let eps = eps_raw.max_lo(0.0);
    let band = Enclosure::new(-tail.abs, tail.abs);
    let s2 = (ln_y - gamma - sigma_z + band) * eps;
    let value = Enclosure::density_norm() * (s1 + s2);

    Ok(ConstantReport::new(
        name,
        value,
        vec![
            ("S1".into(), s1),
            ("S2".into(), s2),
            ("epsilon(N)".into(), eps),
            ("eta band".into(), band),
        ],
        params.clone(),
        started.elapsed().as_secs_f64(),
    ))
}
