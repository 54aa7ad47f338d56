use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use arith_core::{ArithError, Enclosure};

/// Exact nonnegative rational with 64-bit numerator and denominator.
///
/// Values are kept unreduced; every comparison cross-multiplies in 128 bits,
/// so ordering is exact for anything the counting layer produces. This is
/// deliberately not a general rational type: the only arithmetic offered is
/// what exact counting needs (integer scaling and one full product), and each
/// operation checks for overflow instead of silently wrapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational64 {
    num: u64,
    den: u64,
}

impl Rational64 {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "rational with zero denominator");
        Rational64 { num, den }
    }

    pub fn from_int(v: u64) -> Self {
        Rational64 { num: v, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num >= self.den
    }

    /// self compared against the integer k, exactly.
    pub fn cmp_int(&self, k: u64) -> Ordering {
        (self.num as u128).cmp(&(k as u128 * self.den as u128))
    }

    pub fn mul_int(&self, k: u64) -> Self {
        Rational64 {
            num: self.num.checked_mul(k).expect("rational numerator overflow"),
            den: self.den,
        }
    }

    pub fn div_int(&self, k: u64) -> Self {
        assert!(k > 0, "division by zero");
        Rational64 {
            num: self.num,
            den: self.den.checked_mul(k).expect("rational denominator overflow"),
        }
    }

    pub fn mul(&self, other: &Rational64) -> Self {
        Rational64 {
            num: self.num.checked_mul(other.num).expect("rational numerator overflow"),
            den: self.den.checked_mul(other.den).expect("rational denominator overflow"),
        }
    }

    /// Non-rigorous floating view, for displays and step-size heuristics only.
    pub fn approx(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Rigorous enclosure of ln(num/den). Both parts must be exactly
    /// representable in f64, which holds for everything below 2^53.
    pub fn ln_enclosure(&self) -> Enclosure {
        assert!(self.num > 0, "log of zero");
        Enclosure::ln_u64(self.num) - Enclosure::ln_u64(self.den)
    }
}

impl PartialOrd for Rational64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational64 {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational64 {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::InvalidArgument(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            None => {
                let num = s.trim().parse::<u64>().map_err(|_| bad())?;
                Ok(Rational64::from_int(num))
            }
            Some((a, b)) => {
                let num = a.trim().parse::<u64>().map_err(|_| bad())?;
                let den = b.trim().parse::<u64>().map_err(|_| bad())?;
                if den == 0 {
                    return Err(ArithError::InvalidArgument(format!(
                        "zero denominator in {s:?}"
                    )));
                }
                Ok(Rational64::new(num, den))
            }
        }
    }
}
