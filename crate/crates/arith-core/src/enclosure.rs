//! Closed f64 intervals with outward rounding.
//!
//! An f64 arithmetic operation in round-to-nearest lands within half an ulp of
//! the exact result, so stepping the computed endpoint one ulp outward always
//! yields a valid directed bound. `ln` and `exp` from std are faithful on the
//! platforms we target but not formally specified, so those step two ulps; the
//! big-rational oracle in the test suite checks this slack on random inputs.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl Enclosure {
    pub const ZERO: Enclosure = Enclosure { lo: 0.0, hi: 0.0 };
    pub const ONE: Enclosure = Enclosure { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi && lo.is_finite() && hi.is_finite(), "bad enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    /// The exact value `v` (no widening).
    pub fn point(v: f64) -> Self {
        assert!(v.is_finite());
        Enclosure { lo: v, hi: v }
    }

    /// A value only known to be the nearest f64 to the real number intended,
    /// e.g. a decimal literal: widen by one ulp each way.
    pub fn from_nearest(v: f64) -> Self {
        assert!(v.is_finite());
        Enclosure { lo: v.next_down(), hi: v.next_up() }
    }

    /// Exact integer, widened only when it does not fit in the mantissa.
    pub fn from_u64(n: u64) -> Self {
        let v = n as f64;
        if v as u64 == n && n < (1 << 53) {
            Enclosure::point(v)
        } else {
            Enclosure { lo: v.next_down(), hi: v.next_up() }
        }
    }

    pub fn from_i64(n: i64) -> Self {
        if n >= 0 {
            Enclosure::from_u64(n as u64)
        } else {
            -Enclosure::from_u64(n.unsigned_abs())
        }
    }

    /// The exact rational num/den.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Enclosure::from_i64(num) / Enclosure::from_i64(den)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Intersect with [lo, ∞). Sound when the true value is known nonnegative
    /// (used to trim sign-definite tail terms whose computed lower endpoint
    /// dips below zero by rounding).
    pub fn max_lo(&self, lo: f64) -> Enclosure {
        assert!(lo <= self.hi, "clamping away the whole enclosure");
        Enclosure { lo: self.lo.max(lo), hi: self.hi }
    }

    pub fn abs_hi(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn recip(&self) -> Enclosure {
        assert!(self.lo > 0.0 || self.hi < 0.0, "division by interval containing 0");
        Enclosure { lo: (1.0 / self.hi).next_down(), hi: (1.0 / self.lo).next_up() }
    }

    pub fn ln(&self) -> Enclosure {
        assert!(self.lo > 0.0, "ln of interval reaching 0");
        // ln(1) = 0 exactly; everywhere else pad the libm result outward.
        Enclosure {
            lo: if self.lo == 1.0 { 0.0 } else { self.lo.ln().next_down().next_down() },
            hi: if self.hi == 1.0 { 0.0 } else { self.hi.ln().next_up().next_up() },
        }
    }

    pub fn exp(&self) -> Enclosure {
        Enclosure {
            lo: self.lo.exp().next_down().next_down(),
            hi: self.hi.exp().next_up().next_up(),
        }
    }

    pub fn sq(&self) -> Enclosure {
        *self * *self
    }

    /// ln n for an exact integer argument.
    pub fn ln_u64(n: u64) -> Enclosure {
        Enclosure::from_u64(n).ln()
    }

    /// Euler's constant, correct to the last f64 bit plus one ulp of slack.
    pub fn gamma() -> Enclosure {
        Enclosure::from_nearest(0.577_215_664_901_532_860_6)
    }

    /// The first Stieltjes constant (the coefficient after the constant term
    /// in the Laurent expansion of zeta at 1); negative.
    pub fn gamma1() -> Enclosure {
        Enclosure::from_nearest(-0.072_815_845_483_676_724_86)
    }

    /// exp(-gamma).
    pub fn exp_neg_gamma() -> Enclosure {
        (-Enclosure::gamma()).exp()
    }

    /// 1 / (1 - exp(-gamma)), the normalizing factor shared by all the
    /// density constants.
    pub fn density_norm() -> Enclosure {
        (Enclosure::ONE - Enclosure::exp_neg_gamma()).recip()
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: (self.lo + rhs.lo).next_down(),
            hi: (self.hi + rhs.hi).next_up(),
        }
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: (self.lo - rhs.hi).next_down(),
            hi: (self.hi - rhs.lo).next_up(),
        }
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        let c = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        let mut lo = c[0];
        let mut hi = c[0];
        for &v in &c[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        debug_assert!(lo.is_finite() && hi.is_finite());
        Enclosure { lo: lo.next_down(), hi: hi.next_up() }
    }
}

impl Div for Enclosure {
    type Output = Enclosure;
    fn div(self, rhs: Enclosure) -> Enclosure {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_ordered_after_ops() {
        let a = Enclosure::from_ratio(1, 3);
        let b = Enclosure::from_ratio(-2, 7);
        for e in [a + b, a - b, a * b, a / b, a.ln().exp()] {
            assert!(e.lo() <= e.hi());
        }
    }

    #[test]
    fn point_integer_is_tight() {
        let e = Enclosure::from_u64(12345);
        assert_eq!(e.lo(), 12345.0);
        assert_eq!(e.hi(), 12345.0);
    }

    #[test]
    fn third_contains_truth() {
        let e = Enclosure::from_ratio(1, 3);
        assert!(e.lo() < 1.0 / 3.0 + 1e-17 && e.hi() > 1.0 / 3.0 - 1e-17);
        assert!(e.width() < 1e-15);
    }

    #[test]
    fn ln_exp_roundtrip_contains() {
        for n in [2u64, 3, 10, 1000, 29_360_128] {
            let e = Enclosure::ln_u64(n).exp();
            assert!(e.contains(n as f64));
        }
    }

    #[test]
    fn norm_constant_value() {
        // 1/(1 - exp(-gamma)) = 2.28029...
        let c = Enclosure::density_norm();
        assert!(c.lo() > 2.280_290 && c.hi() < 2.280_292);
        assert!(c.width() < 1e-12);
    }

    #[test]
    fn mul_signs() {
        let a = Enclosure::new(-2.0, 3.0);
        let b = Enclosure::new(-5.0, 1.0);
        let p = a * b;
        assert!(p.contains(10.0) && p.contains(-15.0 + 1e-12));
        assert!(p.lo() <= -15.0 && p.hi() >= 10.0);
    }
}
