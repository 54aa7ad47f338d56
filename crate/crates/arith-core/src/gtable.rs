//! Per-integer prefix tables for the weighted tail integrals.
//!
//! With g(t) = eta(t) * prod_{p<=t}(1-1/p), the evaluators need
//!   G(n)  = integral_1^n g(t) dt/t,
//!   G2(n) = integral_1^n g(t) dt/t^2,
//!   PI2(n) = integral_1^n prod_{p<=t}(1-1/p) dt/t^2,
//! at integer n. On [j, j+1) both step factors are constant, and with
//! alpha = sum_{p<=j} ln p/(p-1) + gamma the eta part is alpha - ln t, so each
//! unit piece has the closed antiderivatives
//!   integral (alpha - ln t)/t  dt = alpha ln t - (ln t)^2/2,
//!   integral (alpha - ln t)/t^2 dt = (ln t + 1 - alpha)/t.
//! Every window endpoint that ever gets queried is an integer, so prefix sums
//! at integers suffice. G is the only one worth a disk cache (it is the one
//! rebuilt across runs); the others are recomputed in memory.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::{ArithError, Enclosure, Result, SieveCache};

pub struct GTables {
    horizon: u64,
    g: Vec<Enclosure>,
    g2: Vec<Enclosure>,
    pi2: Vec<Enclosure>,
}

impl GTables {
    /// Build tables up to `horizon`, loading/storing the G column in
    /// `cache_dir` when given.
    pub fn build(cache: &SieveCache, horizon: u64, cache_dir: Option<&Path>) -> Result<GTables> {
        if horizon < 2 || horizon > cache.limit() {
            return Err(ArithError::InvalidArgument(format!(
                "table horizon {horizon} outside [2, sieve limit {}]",
                cache.limit()
            )));
        }
        let (g2, pi2) = build_g2_pi2(cache, horizon);
        let g = match cache_dir.map(|d| g_cache_path(d)) {
            Some(path) => match load_g(&path, horizon) {
                Some(g) => g,
                None => {
                    let g = build_g(cache, horizon);
                    store_g(&path, cache.limit(), &g)?;
                    g
                }
            },
            None => build_g(cache, horizon),
        };
        Ok(GTables { horizon, g, g2, pi2 })
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn g_prefix(&self, n: u64) -> Enclosure {
        self.g[n as usize]
    }

    pub fn g2_prefix(&self, n: u64) -> Enclosure {
        self.g2[n as usize]
    }

    pub fn pi2_prefix(&self, n: u64) -> Enclosure {
        self.pi2[n as usize]
    }

    /// integral_a^b g dt/t for integers 1 <= a <= b <= horizon.
    pub fn g_window(&self, a: u64, b: u64) -> Enclosure {
        self.g[b as usize] - self.g[a as usize]
    }

    pub fn g2_window(&self, a: u64, b: u64) -> Enclosure {
        self.g2[b as usize] - self.g2[a as usize]
    }

    pub fn pi2_window(&self, a: u64, b: u64) -> Enclosure {
        self.pi2[b as usize] - self.pi2[a as usize]
    }
}

/// Point evaluation g(t) = eta(t) * prod_{p<=t}(1-1/p) at t = num/den >= 2.
pub fn g_eval(cache: &SieveCache, num: u64, den: u64) -> Enclosure {
    crate::eta::eta_at(cache, num, den) * cache.product_to(num / den)
}

/// G(n) without materializing a table (streaming prefix sum).
pub fn g_log_integral(cache: &SieveCache, n: u64) -> Result<Enclosure> {
    if n < 1 || n > cache.limit() {
        return Err(ArithError::InvalidArgument(format!(
            "integral horizon {n} outside [1, sieve limit {}]",
            cache.limit()
        )));
    }
    let mut acc = Enclosure::ZERO;
    for_each_g_piece(cache, n, |_, piece| acc = acc + piece);
    Ok(acc)
}

/// Walk j = 1..n-1 yielding the unit integral of g/t on [j, j+1).
fn for_each_g_piece(cache: &SieveCache, n: u64, mut f: impl FnMut(u64, Enclosure)) {
    let gamma = Enclosure::gamma();
    let mut prime_idx = 0usize;
    let mut ln_j = Enclosure::ZERO; // ln 1
    for j in 1..n {
        while prime_idx < cache.primes().len() && (cache.primes()[prime_idx] as u64) <= j {
            prime_idx += 1;
        }
        let alpha = cache.logsum_at_index(prime_idx) + gamma;
        let prod = cache.product_at_index(prime_idx);
        let ln_j1 = Enclosure::ln_u64(j + 1);
        let piece = prod * (alpha * (ln_j1 - ln_j) - (ln_j1.sq() - ln_j.sq()) * Enclosure::from_ratio(1, 2));
        f(j, piece);
        ln_j = ln_j1;
    }
}

fn build_g(cache: &SieveCache, horizon: u64) -> Vec<Enclosure> {
    let mut g = Vec::with_capacity(horizon as usize + 1);
    g.push(Enclosure::ZERO); // index 0 unused
    g.push(Enclosure::ZERO); // G(1) = 0
    let mut acc = Enclosure::ZERO;
    for_each_g_piece(cache, horizon, |_, piece| {
        acc = acc + piece;
        g.push(acc);
    });
    g
}

fn build_g2_pi2(cache: &SieveCache, horizon: u64) -> (Vec<Enclosure>, Vec<Enclosure>) {
    let gamma = Enclosure::gamma();
    let one = Enclosure::ONE;
    let mut g2 = Vec::with_capacity(horizon as usize + 1);
    let mut pi2 = Vec::with_capacity(horizon as usize + 1);
    g2.extend([Enclosure::ZERO, Enclosure::ZERO]);
    pi2.extend([Enclosure::ZERO, Enclosure::ZERO]);
    let mut acc2 = Enclosure::ZERO;
    let mut accp = Enclosure::ZERO;
    let mut prime_idx = 0usize;
    let mut ln_j = Enclosure::ZERO;
    for j in 1..horizon {
        while prime_idx < cache.primes().len() && (cache.primes()[prime_idx] as u64) <= j {
            prime_idx += 1;
        }
        let alpha = cache.logsum_at_index(prime_idx) + gamma;
        let prod = cache.product_at_index(prime_idx);
        let ln_j1 = Enclosure::ln_u64(j + 1);
        let ej = Enclosure::from_u64(j);
        let ej1 = Enclosure::from_u64(j + 1);
        let anti_hi = (ln_j1 + one - alpha) / ej1;
        let anti_lo = (ln_j + one - alpha) / ej;
        acc2 = acc2 + prod * (anti_hi - anti_lo);
        g2.push(acc2);
        accp = accp + prod / (ej * ej1);
        pi2.push(accp);
        ln_j = ln_j1;
    }
    (g2, pi2)
}

fn g_cache_path(dir: &Path) -> PathBuf {
    dir.join("gtable").join("g53.csv")
}

fn load_g(path: &Path, horizon: u64) -> Option<Vec<Enclosure>> {
    let text = fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    let header = lines.next()?;
    let stored: u64 = header.strip_prefix("# horizon=")?.split_whitespace().next()?.parse().ok()?;
    if stored < horizon || !header.contains("precision=53") {
        return None;
    }
    let mut g = vec![Enclosure::ZERO; 2];
    for line in lines.skip(1) {
        let mut it = line.split(',');
        let n: u64 = it.next()?.parse().ok()?;
        let lo: f64 = it.next()?.parse().ok()?;
        let hi: f64 = it.next()?.parse().ok()?;
        if n as usize != g.len() {
            return None;
        }
        g.push(Enclosure::new(lo, hi));
        if n == horizon {
            break;
        }
    }
    (g.len() as u64 == horizon + 1).then_some(g)
}

fn store_g(path: &Path, sieve_limit: u64, g: &[Enclosure]) -> Result<()> {
    let io = |e: std::io::Error| ArithError::CacheIo(format!("{}: {e}", path.display()));
    fs::create_dir_all(path.parent().expect("cache path has parent")).map_err(io)?;
    let mut out = Vec::with_capacity(g.len() * 48);
    let horizon = g.len() - 2;
    writeln!(out, "# horizon={horizon} precision=53 sieve_limit={sieve_limit}").map_err(io)?;
    writeln!(out, "n,lo,hi").map_err(io)?;
    for (n, e) in g.iter().enumerate().skip(2) {
        // {:?} prints the shortest digits that round-trip exactly.
        writeln!(out, "{n},{:?},{:?}", e.lo(), e.hi()).map_err(io)?;
    }
    fs::write(path, out).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_small_by_hand() {
        let s = SieveCache::build(100).unwrap();
        let t = GTables::build(&s, 10, None).unwrap();
        // On [1,2): integral (gamma - ln t)/t dt = gamma ln 2 - (ln 2)^2/2.
        let g2v = t.g_prefix(2);
        let gamma = 0.5772156649015329_f64;
        let ln2 = std::f64::consts::LN_2;
        let expect = gamma * ln2 - ln2 * ln2 / 2.0;
        assert!((g2v.mid() - expect).abs() < 1e-14);
        assert!(g2v.width() < 1e-13);
    }

    #[test]
    fn streaming_matches_table() {
        let s = SieveCache::build(5000).unwrap();
        let t = GTables::build(&s, 1000, None).unwrap();
        let direct = g_log_integral(&s, 1000).unwrap();
        assert!((t.g_prefix(1000).mid() - direct.mid()).abs() < 1e-15);
    }

    #[test]
    fn pi2_prefix_value() {
        let s = SieveCache::build(100).unwrap();
        let t = GTables::build(&s, 4, None).unwrap();
        // integral_1^4 Pi dt/t^2 = 1*(1/2) + (1/2)(1/6) + (1/3)(1/12)
        let expect = 0.5 + 1.0 / 12.0 + 1.0 / 36.0;
        assert!(t.pi2_prefix(4).contains(expect));
    }

    #[test]
    fn csv_cache_roundtrip() {
        let s = SieveCache::build(2000).unwrap();
        let dir = std::env::temp_dir().join(format!("gtab-test-{}", std::process::id()));
        let a = GTables::build(&s, 500, Some(&dir)).unwrap();
        let b = GTables::build(&s, 500, Some(&dir)).unwrap();
        for n in [2u64, 100, 499, 500] {
            assert_eq!(a.g_prefix(n).lo(), b.g_prefix(n).lo());
            assert_eq!(a.g_prefix(n).hi(), b.g_prefix(n).hi());
        }
        // A shorter request reuses the longer file.
        let c = GTables::build(&s, 100, Some(&dir)).unwrap();
        assert_eq!(c.g_prefix(100).hi(), a.g_prefix(100).hi());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
