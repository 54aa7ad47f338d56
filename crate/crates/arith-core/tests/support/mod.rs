//! Exact-rational interval oracle used to validate the f64 enclosures.
//!
//! ln and exp are evaluated as truncated series with explicit remainder
//! brackets, entirely in BigRational. Endpoints are outward-rounded to
//! denominators 2^192 after every step so operand sizes stay bounded; the
//! resulting intervals are rigorous at widths around 1e-40, far below any
//! f64 enclosure width, so containment checks are meaningful.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const BITS: u64 = 192;

#[derive(Clone, Debug)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(v: BigRational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    /// Outward-round both endpoints to denominators 2^BITS. Keeps the
    /// interval sound while stopping the representations from growing
    /// without bound through deep expressions.
    pub fn compress(self) -> Self {
        RatInterval { lo: round_down(&self.lo), hi: round_up(&self.hi) }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }.compress()
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }.compress()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }.compress()
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "oracle division by 0-interval");
        let c = [&self.lo / &o.lo, &self.lo / &o.hi, &self.hi / &o.lo, &self.hi / &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }.compress()
    }

    fn div_uint(&self, n: u32) -> Self {
        let d = BigRational::from_integer(BigInt::from(n));
        RatInterval { lo: &self.lo / &d, hi: &self.hi / &d }.compress()
    }

    fn widen(&self, slack: &BigRational) -> Self {
        debug_assert!(!slack.is_negative());
        RatInterval { lo: &self.lo - slack, hi: &self.hi + slack }
    }

    /// Is this interval contained in the f64 enclosure [lo, hi]?
    pub fn inside_f64(&self, lo: f64, hi: f64) -> bool {
        let flo = BigRational::from_float(lo).expect("finite");
        let fhi = BigRational::from_float(hi).expect("finite");
        flo <= self.lo && self.hi <= fhi
    }
}

fn round_down(x: &BigRational) -> BigRational {
    use num_integer::Integer;
    let scale = BigInt::one() << BITS;
    let scaled = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(scaled, scale)
}

fn round_up(x: &BigRational) -> BigRational {
    use num_integer::Integer;
    let scale = BigInt::one() << BITS;
    let scaled = (x.numer() * &scale).div_ceil(x.denom());
    BigRational::new(scaled, scale)
}

/// 2*atanh(t) for an exact |t| < 1/2, as a rigorous bracket.
fn two_atanh(t: &BigRational, terms: u32) -> RatInterval {
    let t_int = RatInterval::point(t.clone()).compress();
    let t2 = t_int.mul(&t_int);
    assert!(t2.hi < BigRational::one());
    let mut sum = t_int.clone();
    let mut tp = t_int;
    for i in 1..terms {
        tp = tp.mul(&t2);
        sum = sum.add(&tp.div_uint(2 * i + 1));
    }
    // |tail| <= |t|^(2K+1) / ((2K+1)(1 - t^2)) with the loop covering
    // exponents up to 2K-1, K = terms.
    let tp_abs = tp.lo.abs().max(tp.hi.abs());
    let bound = tp_abs * t2.hi.clone()
        / (BigRational::from_integer(BigInt::from(2 * terms + 1)) * (BigRational::one() - &t2.hi));
    sum.widen(&bound)
        .mul(&RatInterval::from_i64(2))
}

fn ln2_interval() -> &'static RatInterval {
    static LN2: OnceLock<RatInterval> = OnceLock::new();
    LN2.get_or_init(|| two_atanh(&BigRational::new(BigInt::from(1), BigInt::from(3)), 60))
}

/// Rigorous bracket of ln x for rational x > 0.
pub fn ln_oracle(x: &BigRational) -> RatInterval {
    assert!(x.is_positive());
    let mut m = x.clone();
    let mut k: i64 = 0;
    let lo_red = BigRational::new(BigInt::from(3), BigInt::from(4));
    let hi_red = BigRational::new(BigInt::from(3), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    while m >= hi_red {
        m /= &two;
        k += 1;
    }
    while m < lo_red {
        m *= &two;
        k -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1)) with |t| <= 1/5 after reduction.
    let t = (&m - BigRational::one()) / (&m + BigRational::one());
    let ln_m = two_atanh(&t, 40);
    ln_m.add(&RatInterval::from_i64(k).mul(ln2_interval()))
}

/// Taylor bracket of exp(r) for exact |r| <= 1.
fn exp_taylor(r: &BigRational, terms: u32) -> RatInterval {
    assert!(r.abs() <= BigRational::one());
    let r_int = RatInterval::point(r.clone()).compress();
    let mut sum = RatInterval::from_i64(1);
    let mut tp = RatInterval::from_i64(1);
    for i in 1..=terms {
        tp = tp.mul(&r_int).div_uint(i);
        sum = sum.add(&tp);
    }
    // |tail| <= 2 |r|^(K+1) / (K+1)!  (ratio test, |r| <= 1, K >= 1)
    let tp_abs = tp.lo.abs().max(tp.hi.abs());
    let bound =
        BigRational::from_integer(BigInt::from(2)) * tp_abs * r.abs() / BigRational::from_integer(BigInt::from(terms + 1));
    sum.widen(&bound)
}

fn e_interval() -> &'static RatInterval {
    static E: OnceLock<RatInterval> = OnceLock::new();
    E.get_or_init(|| exp_taylor(&BigRational::one(), 40))
}

/// Rigorous bracket of exp x for rational |x| <= 128.
pub fn exp_oracle(x: &BigRational) -> RatInterval {
    let n = x.round().to_integer();
    let n_i64: i64 = i64::try_from(&n).expect("exp argument in range");
    assert!(n_i64.abs() <= 128, "exp oracle range");
    let r = x - BigRational::from_integer(n);
    let exp_r = exp_taylor(&r, 30);
    let mut e_pow = RatInterval::from_i64(1);
    for _ in 0..n_i64.unsigned_abs() {
        e_pow = e_pow.mul(e_interval());
    }
    if n_i64 < 0 {
        e_pow = RatInterval::from_i64(1).div(&e_pow);
    }
    e_pow.mul(&exp_r)
}
