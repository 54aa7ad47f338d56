//! The per-slice loss constants mu_q.
//!
//! mu_q = ln(1+1/q) + sum over primes p > q of the slice defect
//! mu_{q,p} = (1/p)(a_{qp,p-1} - a_{(q+1)p,p-1} + integral_{qp}^{(q+1)p} a_{y,p-1} dy/y).
//!
//! Inserting the closed form of a splits the sum into five computable blocks:
//!
//! * the elementary lead ln(1+1/q);
//! * a telescoped prime-product block (C/2)(ln^2(q+1) - ln^2 q) Pi(q), exact
//!   because sum_{p>q} Pi(p-1)/p collapses to Pi(q);
//! * C ln(1+1/q) (S_q + E), with S_q = -sum_{q<p<=N1} Pi(p-1)/p eta(p-0)
//!   and E the oscillation tail -Pi(N1)·[band];
//! * the window sum over q < p <= N2/q of C R*_{q,p}/p, where
//!   R*_{q,p} = sum_m (1/m) G-window(max(mqp, F(m)), min(m(q+1)p, N2))
//!   over m <= N2/(qp) with smallest prime factor >= p;
//! * two oscillation blocks: C(q+1)·[band]·sum_p eps_{q,p}(N2) for the cut
//!   windows, with eps_{q,p} = Pi(p-1)/(pq(q+1)) - sum_m PI2-window, and
//!   (C/q) Pi(N2/q)·[band] for every prime past N2/q.

use std::time::Instant;

use arith_core::{
    eta_before_prime, eta_tail_bounds, ArithError, Enclosure, GTables, Result, SieveCache,
};
use ssf_counting::for_each_chain;

use crate::params::{ConstantReport, TruncationParams};

/// R*_{q,p} and the raw cut-window mass eps_{q,p}(N), both over m <= N/(qp)
/// with smallest prime factor >= p. `idx` is the index of p.
fn r_star_block(
    cache: &SieveCache,
    tables: &GTables,
    idx: usize,
    p: u64,
    q: u64,
    n_max: u64,
) -> (Enclosure, Enclosure) {
    let mut r = Enclosure::ZERO;
    let mut mass = Enclosure::ZERO;
    let qp = q * p;
    for_each_chain(cache, n_max / qp, n_max as u128, idx, &mut |m, ssf| {
        let lo = (ssf as u64).max(m * qp);
        let hi = (m * (q + 1) * p).min(n_max);
        if lo >= hi {
            return;
        }
        r = r + Enclosure::from_ratio(1, m as i64) * tables.g_window(lo, hi);
        mass = mass + tables.pi2_window(lo, hi);
    });
    let eps = cache.product_at_index(idx)
        * Enclosure::from_ratio(1, (p * q * (q + 1)) as i64)
        - mass;
    (r, eps)
}

pub fn compute_mu(
    cache: &SieveCache,
    tables: &GTables,
    q: u64,
    params: &TruncationParams,
) -> Result<ConstantReport> {
    let started = Instant::now();
    params.validate(cache)?;
    if q < 1 {
        return Err(ArithError::InvalidArgument("slice index q must be at least 1".into()));
    }
    let n1 = params.n_main;
    let n2 = params.n_secondary;
    if tables.horizon() < n2 {
        return Err(ArithError::InvalidArgument(format!(
            "prefix tables reach {}, but the window horizon is {n2}",
            tables.horizon()
        )));
    }
    if n2 / q < 2 {
        return Err(ArithError::InvalidArgument(format!(
            "window horizon {n2} leaves no room for primes above q = {q}"
        )));
    }
    let c_norm = Enclosure::density_norm();
    let primes = cache.primes();

    let lead = Enclosure::ln_u64(q + 1) - Enclosure::ln_u64(q);
    let pi_block = c_norm
        * Enclosure::from_ratio(1, 2)
        * (Enclosure::ln_u64(q + 1).sq() - Enclosure::ln_u64(q).sq())
        * cache.product_to(q);

    // S_q over q < p <= N1, oscillation band past it.
    let mut s_q = Enclosure::ZERO;
    for (idx, &p) in primes.iter().take_while(|&&p| p as u64 <= n1).enumerate() {
        let p = p as u64;
        if p <= q {
            continue;
        }
        s_q = s_q
            - cache.product_at_index(idx)
                * Enclosure::from_ratio(1, p as i64)
                * eta_before_prime(cache, p);
    }
    let b1 = eta_tail_bounds(cache, &params.eta, n1)?;
    let e_n1 = -(cache.product_to(n1) * Enclosure::new(b1.lower, b1.upper));
    let s_block = c_norm * lead * (s_q + e_n1);

    // Window sum over q < p <= N2/q, with both oscillation blocks.
    let b2 = eta_tail_bounds(cache, &params.eta, n2)?;
    let band = Enclosure::new(b2.lower, b2.upper);
    let mut r_main = Enclosure::ZERO;
    let mut eps_sum = Enclosure::ZERO;
    for (idx, &p) in primes.iter().take_while(|&&p| p as u64 <= n2 / q).enumerate() {
        let p = p as u64;
        if p <= q {
            continue;
        }
        let (r_star, eps_raw) = r_star_block(cache, tables, idx, p, q, n2);
        if eps_raw.hi() < 0.0 {
            return Err(ArithError::Inconsistent(format!(
                "cut-window mass eps(N,{q},{p}) = [{}, {}] is negative",
                eps_raw.lo(),
                eps_raw.hi()
            )));
        }
        r_main = r_main + Enclosure::from_ratio(1, p as i64) * r_star;
        eps_sum = eps_sum + eps_raw.max_lo(0.0);
    }
    let r_block = c_norm * r_main;
    let e_tail = c_norm * Enclosure::from_u64(q + 1) * band * eps_sum;
    let e_large = c_norm * Enclosure::from_ratio(1, q as i64) * cache.product_to(n2 / q) * band;

    let value = lead + pi_block + s_block + r_block + e_tail + e_large;
    Ok(ConstantReport::new(
        format!("mu[q={q}]"),
        value,
        vec![
            ("lead".into(), lead),
            ("pi block".into(), pi_block),
            ("S block".into(), s_block),
            ("R main".into(), r_block),
            ("E tail".into(), e_tail),
            ("E large".into(), e_large),
        ],
        params.clone(),
        started.elapsed().as_secs_f64(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> SieveCache {
        SieveCache::build(1 << 21).unwrap()
    }

    #[test]
    fn mu5_matches_published_interval() {
        let cache = cache();
        let tables = GTables::build(&cache, 1 << 12, None).unwrap();
        let params = TruncationParams::new(1 << 14, 1 << 12);
        let rep = compute_mu(&cache, &tables, 5, &params).unwrap();
        assert!(
            rep.value.intersects(&Enclosure::new(0.401720, 0.401815)),
            "mu_5 = {:?}",
            rep.value
        );
        assert!(rep.value.width() < 0.01, "width {}", rep.value.width());
    }

    #[test]
    fn mu11_matches_published_interval() {
        let cache = cache();
        let tables = GTables::build(&cache, 1 << 12, None).unwrap();
        let params = TruncationParams::new(1 << 14, 1 << 12);
        let rep = compute_mu(&cache, &tables, 11, &params).unwrap();
        assert!(
            rep.value.intersects(&Enclosure::new(0.197932, 0.197989)),
            "mu_11 = {:?}",
            rep.value
        );
        assert!(rep.value.width() < 0.01, "width {}", rep.value.width());
    }

    #[test]
    fn lead_term_dominates() {
        let cache = cache();
        let tables = GTables::build(&cache, 1 << 12, None).unwrap();
        let params = TruncationParams::new(1 << 14, 1 << 12);
        for q in [5u64, 11] {
            let rep = compute_mu(&cache, &tables, q, &params).unwrap();
            let floor = (1.0 + 1.0 / q as f64).ln() - 0.05;
            assert!(rep.value.lo() > floor, "mu_{q} = {:?} under {floor}", rep.value);
        }
    }

    #[test]
    fn rejects_degenerate_arguments() {
        let cache = cache();
        let tables = GTables::build(&cache, 1 << 10, None).unwrap();
        let err = compute_mu(&cache, &tables, 0, &TruncationParams::new(1 << 12, 1 << 10));
        assert!(matches!(err, Err(ArithError::InvalidArgument(_))));
        // Horizon too small against the tables.
        let err = compute_mu(&cache, &tables, 5, &TruncationParams::new(1 << 12, 1 << 12));
        assert!(matches!(err, Err(ArithError::InvalidArgument(_))));
        // No primes above q within N2/q.
        let err = compute_mu(&cache, &tables, 600, &TruncationParams::new(1 << 12, 1 << 10));
        assert!(matches!(err, Err(ArithError::InvalidArgument(_))));
    }
}
