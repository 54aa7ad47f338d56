use arith_core::{PrimeCutoff, SieveCache};

use crate::chain::{first_admitted_index, for_each_chain, member_stream};
use crate::rational::Rational64;

/// Parameters of one counting question: the range cap x, the growth
/// allowance y, and the lower prime cutoff z.
#[derive(Clone, Debug)]
pub struct CountQuery {
    pub x: Rational64,
    pub y: Rational64,
    pub z: PrimeCutoff,
}

impl CountQuery {
    pub fn new(x: Rational64, y: Rational64, z: PrimeCutoff) -> Self {
        CountQuery { x, y, z }
    }

    /// log x / log y, as a plain floating view (infinite when y = 1).
    pub fn u(&self) -> f64 {
        self.x.approx().ln() / self.y.approx().ln()
    }

    /// log x / log z, as a plain floating view (infinite when z = 1).
    pub fn v(&self) -> f64 {
        self.x.approx().ln() / self.z.approx_value().ln()
    }

    /// u / v = log z / log y.
    pub fn r(&self) -> f64 {
        self.z.approx_value().ln() / self.y.approx().ln()
    }
}

/// |{n ≤ x : F(n)/n ≤ y, P⁻(n) > z}|. Counts n = 1 whenever x ≥ 1.
pub fn count_d(cache: &SieveCache, q: &CountQuery) -> u64 {
    if !q.x.is_at_least_one() {
        return 0;
    }
    member_stream(cache, q.y, &q.z, q.x.floor()).count() as u64
}

/// |{n ≤ x : F(n) ≤ xy, P⁻(n) > z}|.
pub fn count_a(cache: &SieveCache, q: &CountQuery) -> u64 {
    if !q.x.is_at_least_one() {
        return 0;
    }
    // F(n) is an integer, so F(n) ≤ xy is F(n) ≤ floor(xy).
    let ssf_bound = q.x.num() as u128 * q.y.num() as u128
        / (q.x.den() as u128 * q.y.den() as u128);
    let mut count = 0u64;
    for_each_chain(
        cache,
        q.x.floor(),
        ssf_bound,
        first_admitted_index(cache, &q.z),
        &mut |_, _| count += 1,
    );
    count
}
