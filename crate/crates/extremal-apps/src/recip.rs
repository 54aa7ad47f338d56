use arith_core::{ArithError, Result, SieveCache};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{CheckedSub, Zero};
use ssf_counting::{build_b_prime, enumerate_b, Rational64};

/// Short spans are summed directly in 128-bit arithmetic before any big
/// integers appear.
const LEAF: usize = 4;

/// Exact Σ 1/n held as an explicit fraction, built by merging halves.
///
/// Summing over one fixed common denominator would cost a long division per
/// term, and at x = 10^6 that is 10^5 divisions of a million-bit integer.
/// Merging subranges pairwise keeps each operand near the size of its own
/// span, so only the top few merges touch full-size integers. The fraction
/// stays unreduced throughout: a closing gcd on million-bit integers would
/// dwarf the whole sum, and every consumer compares, scales, or rounds the
/// value, none of which needs lowest terms.
pub(crate) struct RawSum {
    num: BigUint,
    den: BigUint,
}

impl RawSum {
    pub(crate) fn zero() -> Self {
        RawSum {
            num: BigUint::zero(),
            den: BigUint::from(1u32),
        }
    }

    /// Σ 1/t over the given terms, each of which must be positive.
    pub(crate) fn from_terms(terms: &[u64]) -> Self {
        debug_assert!(terms.iter().all(|&t| t > 0));
        if terms.is_empty() {
            return RawSum::zero();
        }
        if terms.len() <= LEAF {
            if let Some(sum) = RawSum::leaf(terms) {
                return sum;
            }
        }
        // A single term always fits the leaf path, so both halves shrink.
        let (lo, hi) = terms.split_at(terms.len() / 2);
        RawSum::from_terms(lo).add(&RawSum::from_terms(hi))
    }

    fn leaf(terms: &[u64]) -> Option<Self> {
        let mut den = 1u128;
        for &t in terms {
            den = den.checked_mul(t as u128)?;
        }
        let mut num = 0u128;
        for &t in terms {
            num = num.checked_add(den / t as u128)?;
        }
        Some(RawSum {
            num: BigUint::from(num),
            den: BigUint::from(den),
        })
    }

    pub(crate) fn add(&self, other: &RawSum) -> RawSum {
        RawSum {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub(crate) fn scaled(&self, num: u64, den: u64) -> RawSum {
        RawSum {
            num: &self.num * num,
            den: &self.den * den,
        }
    }

    /// Exact value equality by cross multiplication. The generic rational
    /// comparison walks a continued fraction, which on two equal million-bit
    /// values degenerates into a full Euclid run; two multiplications settle
    /// it directly.
    pub(crate) fn same_value(&self, other: &RawSum) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Whether the sum is at most num/den.
    pub(crate) fn at_most(&self, num: u64, den: u64) -> bool {
        &self.num * den <= &self.den * num
    }

    pub(crate) fn into_ratio(self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num), BigInt::from(self.den))
    }
}

fn raw_sum_b(cache: &SieveCache, x: Rational64) -> Result<RawSum> {
    let b = enumerate_b(cache, x)?;
    Ok(RawSum::from_terms(b.members()))
}

fn raw_interval(cache: &SieveCache, x: Rational64, q: u64) -> Result<RawSum> {
    if q == 0 {
        return Err(ArithError::InvalidArgument(
            "interval slice needs q >= 1".into(),
        ));
    }
    let b = enumerate_b(cache, x)?;
    let xnum = x.num() as u128;
    let xden = x.den() as u128;
    let window: Vec<u64> = b
        .members()
        .iter()
        .copied()
        .filter(|&n| {
            let n = n as u128;
            n * q as u128 * xden <= xnum && n * (q + 1) as u128 * xden > xnum
        })
        .collect();
    Ok(RawSum::from_terms(&window))
}

/// Σ 1/n over the boundary set at x, exact but not in lowest terms.
pub fn sum_recip_b(cache: &SieveCache, x: Rational64) -> Result<BigRational> {
    Ok(raw_sum_b(cache, x)?.into_ratio())
}

/// Σ {x/n} over the boundary set at x, exact: x · Σ 1/n minus Σ ⌊x/n⌋.
pub fn frac_sum_b(cache: &SieveCache, x: Rational64) -> Result<BigRational> {
    let b = enumerate_b(cache, x)?;
    let sum = RawSum::from_terms(b.members());
    let mut floors = 0u64;
    for &n in b.members() {
        floors += (x.num() as u128 / (x.den() as u128 * n as u128)) as u64;
    }
    let den = &sum.den * x.den();
    let num = (&sum.num * x.num())
        .checked_sub(&(&den * floors))
        .expect("fractional parts are nonnegative");
    Ok(RawSum { num, den }.into_ratio())
}

/// Σ 1/n over the boundary-set members inside (x/(q+1), x/q], exact. Every
/// member there satisfies P⁻(n) > q, since n·P⁻(n) ≤ F(n) would otherwise
/// stay below the divisor bound n(q+1) ≤ x forced by the window.
pub fn sum_recip_b_interval(cache: &SieveCache, x: Rational64, q: u64) -> Result<BigRational> {
    Ok(raw_interval(cache, x, q)?.into_ratio())
}

/// Σ 1/n over the patched boundary set, exact, checked two ways.
///
/// The patch swaps each member n in (x/6, x/5] for {2n, 3n, 5n}, trading
/// 1/n for (1/2 + 1/3 + 1/5)/n, a net gain of 1/(30n); members in
/// (x/12, x/11] become {3n, 4n, 5n, 7n, 11n}, a net gain of 79/(4620n).
/// So the patched sum must equal the plain sum plus the two scaled window
/// sums. Both routes are computed exactly and compared before returning.
pub fn sum_recip_b_prime(cache: &SieveCache, x: Rational64) -> Result<BigRational> {
    let patched = build_b_prime(cache, x)?;
    let direct = RawSum::from_terms(&patched.members);

    let composed = raw_sum_b(cache, x)?
        .add(&raw_interval(cache, x, 5)?.scaled(1, 30))
        .add(&raw_interval(cache, x, 11)?.scaled(79, 4620));
    if !direct.same_value(&composed) {
        return Err(ArithError::Inconsistent(format!(
            "patched reciprocal sum at x = {x}: the member route and the window route disagree"
        )));
    }
    Ok(direct.into_ratio())
}
