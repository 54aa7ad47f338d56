//! The integrated density constant a_{y,z}.
//!
//! Its closed form splits into an elementary lead term and a weighted
//! integral of the counting step function A(t) = #{n <= t: F(n) <= ty,
//! P-(n) > z}:
//!
//!   a_{y,z} = C Pi(z) (1 - gamma + ln y - Sigma(z))
//!           + C integral_1^inf A(t) g(yt) dt/t^2,
//!
//! with g(u) = (Sigma(u) + gamma - ln u) prod_{p<=u}(1-1/p). Everything under
//! the integral is piecewise exact: A jumps where a member n enters at
//! t = max(n, F(n)/y), and the prime factors of g(yt) jump where yt crosses a
//! prime. Scaling both kinds of breakpoints by the allowance's denominator
//! turns them into exact integer keys (n -> n·ya, F -> F·yb, prime q -> q·yb
//! on the t·ya axis), so one merged sweep integrates the closed-form
//! antiderivative piece by piece with no quadrature error at all.
//!
//! The truncation tail reuses the residual
//!
//!   eps(N) = Pi(z) - integral_1^N A(t) Pi(yt) dt/t^2,
//!
//! which the same sweep produces in the same pass; the dropped mass is
//! bounded by the oscillation band past yN times eps(N).

use std::time::Instant;

use arith_core::{
    eta_tail_bounds, ArithError, Enclosure, PrimeCutoff, Result, SieveCache,
};
use ssf_counting::{for_each_chain, Rational64};

use crate::c::{allowance_covers_cutoff, cutoff_label, validate_pair};
use crate::params::{ConstantReport, TruncationParams};

pub(crate) struct SweepOutcome {
    /// integral_1^N A(t) g(yt) dt/t^2
    pub log_integral: Enclosure,
    /// integral_1^N A(t) Pi(yt) dt/t^2
    pub tail_integral: Enclosure,
    /// Size of the step universe (members entered by t = N).
    pub members: u64,
}

/// One pass over [1, N]: sort the entry keys of every member against the
/// prime-crossing keys of yt and integrate both weightings exactly on each
/// constant piece.
pub(crate) fn density_sweep(
    cache: &SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    n_max: u64,
) -> Result<SweepOutcome> {
    let ya = y.num();
    let yb = y.den();
    if n_max as u128 * ya as u128 > u64::MAX as u128 {
        return Err(ArithError::ResourceLimit(format!(
            "sweep keys for y = {y}, N = {n_max} overflow 64 bits"
        )));
    }
    let ssf_bound = y.mul_int(n_max).floor() as u128;
    let min_idx = cache.primes().partition_point(|&p| !z.admits(p as u64));

    let mut keys: Vec<u64> = Vec::new();
    for_each_chain(cache, n_max, ssf_bound, min_idx, &mut |n, ssf| {
        keys.push((n * ya).max(ssf as u64 * yb));
    });
    keys.sort_unstable();
    let members = keys.len() as u64;

    let gamma = Enclosure::gamma();
    let one = Enclosure::ONE;
    let ln_y = y.ln_enclosure();
    let ln_ya = Enclosure::ln_u64(ya);
    let primes = cache.primes();
    let end_key = n_max * ya;

    // Primes already inside Pi(y·1); later crossings arrive as events.
    let mut pidx = primes.partition_point(|&q| q as u64 * yb <= ya);
    let mut ki = 0usize;
    let mut active = 0u64;
    let mut cur = keys[0];
    debug_assert_eq!(cur, ya, "the unit member must enter at t = 1");
    let mut ln_cur = Enclosure::ln_u64(cur);
    let mut log_integral = Enclosure::ZERO;
    let mut tail_integral = Enclosure::ZERO;

    loop {
        while ki < keys.len() && keys[ki] == cur {
            active += 1;
            ki += 1;
        }
        while pidx < primes.len() && primes[pidx] as u64 * yb == cur {
            pidx += 1;
        }
        if cur >= end_key {
            break;
        }
        let mut next = end_key;
        if ki < keys.len() {
            next = next.min(keys[ki]);
        }
        if pidx < primes.len() {
            next = next.min(primes[pidx] as u64 * yb);
        }

        let count = Enclosure::from_u64(active);
        let prod = cache.product_at_index(pidx);
        let inv_cur = Enclosure::from_ratio(ya as i64, cur as i64);
        let inv_next = Enclosure::from_ratio(ya as i64, next as i64);
        let ln_next = Enclosure::ln_u64(next);
        tail_integral = tail_integral + count * prod * (inv_cur - inv_next);
        // With alpha = Sigma(yt) + gamma - ln y constant on the piece, the
        // integrand is A·Pi·(alpha - ln t)/t^2, whose antiderivative is
        // A·Pi·(ln t + 1 - alpha)/t.
        let alpha = cache.logsum_at_index(pidx) + gamma - ln_y;
        let f_cur = (ln_cur - ln_ya + one - alpha) * inv_cur;
        let f_next = (ln_next - ln_ya + one - alpha) * inv_next;
        log_integral = log_integral + count * prod * (f_next - f_cur);

        cur = next;
        ln_cur = ln_next;
    }
    debug_assert_eq!(ki, keys.len(), "every member key lies within [1, N]");

    Ok(SweepOutcome { log_integral, tail_integral, members })
}

fn check_reach(cache: &SieveCache, y: Rational64, n_max: u64) -> Result<u64> {
    let yn_max = y.mul_int(n_max).floor();
    if yn_max > cache.limit() {
        return Err(ArithError::ResourceLimit(format!(
            "sweep needs primes to {yn_max}, beyond the sieve limit {}",
            cache.limit()
        )));
    }
    Ok(yn_max)
}

pub fn compute_a(
    cache: &SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    params: &TruncationParams,
) -> Result<ConstantReport> {
    let started = Instant::now();
    params.validate(cache)?;
    validate_pair(y, z)?;
    let name = format!("a[y={y},z={}]", cutoff_label(z));

    if !allowance_covers_cutoff(y, z) {
        // Below the cutoff the constant scales linearly: a_{y,z} = (y/z) a_{z,z}.
        let (zn, zd) = match *z {
            PrimeCutoff::Value { num, den } => (num, den),
            PrimeCutoff::JustBelow(_) => {
                return Err(ArithError::InvalidArgument(
                    "scaling below the cutoff needs an exact rational cutoff value".into(),
                ))
            }
        };
        let base = compute_a(cache, Rational64::new(zn, zd), z, params)?;
        let ratio = Enclosure::from_u64(y.num()) * Enclosure::from_u64(zd)
            / (Enclosure::from_u64(y.den()) * Enclosure::from_u64(zn));
        let value = ratio * base.value;
        return Ok(ConstantReport::new(
            name,
            value,
            vec![("allowance ratio".into(), ratio), ("base at cutoff".into(), base.value)],
            params.clone(),
            started.elapsed().as_secs_f64(),
        ));
    }

    let n_max = params.n_main;
    let yn_max = check_reach(cache, y, n_max)?;
    let tail = eta_tail_bounds(cache, &params.eta, yn_max.max(2))?;
    let sweep = density_sweep(cache, y, z, n_max)?;

    let pi_z = cache.mertens_product(z);
    let sigma_z = cache.mertens_logsum(z);
    let eps_raw = pi_z - sweep.tail_integral;
    if eps_raw.hi() < 0.0 {
        return Err(ArithError::Inconsistent(format!(
            "integral residual eps(N) = [{}, {}] is negative; the sweep overshot Pi(z)",
            eps_raw.lo(),
            eps_raw.hi()
        )));
    }
    let eps = eps_raw.max_lo(0.0);
    let q_tail = Enclosure::new(-tail.abs, tail.abs) * eps;
    let c_norm = Enclosure::density_norm();
    let lead =
        c_norm * pi_z * (Enclosure::ONE - Enclosure::gamma() + y.ln_enclosure() - sigma_z);
    let value = lead + c_norm * (sweep.log_integral + q_tail);

    Ok(ConstantReport::new(
        name,
        value,
        vec![
            ("lead".into(), lead),
            ("J(N)".into(), sweep.log_integral),
            ("Q(N)".into(), q_tail),
            ("epsilon(N)".into(), eps),
            ("A(N)".into(), Enclosure::from_u64(sweep.members)),
        ],
        params.clone(),
        started.elapsed().as_secs_f64(),
    ))
}

/// The integral residual eps(N) on its own, for convergence diagnostics:
/// positive, decreasing in N, and equal to Pi(z) at N = 1 where the integral
/// is empty.
pub fn acor1_residual(
    cache: &SieveCache,
    y: Rational64,
    z: &PrimeCutoff,
    n_max: u64,
) -> Result<Enclosure> {
    validate_pair(y, z)?;
    if !allowance_covers_cutoff(y, z) {
        return Err(ArithError::InvalidArgument(
            "residual needs the allowance at or above the cutoff".into(),
        ));
    }
    let pi_z = cache.mertens_product(z);
    if n_max <= 1 {
        return Ok(pi_z);
    }
    if n_max > cache.limit() {
        return Err(ArithError::ResourceLimit(format!(
            "residual horizon {n_max} beyond the sieve limit {}",
            cache.limit()
        )));
    }
    check_reach(cache, y, n_max)?;
    let sweep = density_sweep(cache, y, z, n_max)?;
    let eps_raw = pi_z - sweep.tail_integral;
    if eps_raw.hi() < 0.0 {
        return Err(ArithError::Inconsistent(format!(
            "integral residual eps(N) = [{}, {}] is negative",
            eps_raw.lo(),
            eps_raw.hi()
        )));
    }
    Ok(eps_raw.max_lo(0.0))
}
