use arith_core::{ArithError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use ssf_counting::Rational64;

/// Candidates may pair up only when their lcm clears the level x, so the
/// exact algebra stays in u64/u128 throughout.
const EXACT_CAP: u64 = 40;
const GREEDY_CAP: u64 = 100_000;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One instance of the pairwise-lcm packing problem: candidates 2..⌊x⌋,
/// a set feasible when every two chosen elements have lcm exceeding x,
/// objective Σ 1/n. Note that divisibility between two candidates makes
/// them incompatible outright, since their lcm is then the larger one,
/// which is at most x; feasible sets are divisor antichains for free.
pub struct LcmInstance {
    x: Rational64,
}

impl LcmInstance {
    pub fn new(x: Rational64) -> Self {
        LcmInstance { x }
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn candidates(&self) -> impl Iterator<Item = u64> {
        2..=self.x.floor()
    }

    /// lcm(m, n) > x, exactly.
    pub fn compatible(&self, m: u64, n: u64) -> bool {
        let l = m as u128 / gcd(m, n) as u128 * n as u128;
        l * self.x.den() as u128 > self.x.num() as u128
    }

    /// Re-check a witness from first principles: in range, strictly
    /// increasing, pairwise compatible. Returns its exact weight.
    pub fn verify_witness(&self, set: &[u64]) -> Result<BigRational> {
        let floor = self.x.floor();
        let mut sum = BigRational::zero();
        for (i, &m) in set.iter().enumerate() {
            if m < 2 || m > floor {
                return Err(ArithError::InvalidArgument(format!(
                    "witness element {m} outside 2..{floor}"
                )));
            }
            if i > 0 && set[i - 1] >= m {
                return Err(ArithError::InvalidArgument(
                    "witness must be strictly increasing".into(),
                ));
            }
            for &n in &set[i + 1..] {
                if !self.compatible(m, n) {
                    return Err(ArithError::Inconsistent(format!(
                        "witness pair ({m}, {n}) has lcm at most {}",
                        self.x
                    )));
                }
            }
            sum += BigRational::new(BigInt::from(1), BigInt::from(m));
        }
        Ok(sum)
    }
}

/// Result of a packing search. `exact` marks a proven optimum; the greedy
/// route only promises feasibility.
#[derive(Clone, Debug)]
pub struct LcmOptimum {
    pub value: BigRational,
    pub witness: Vec<u64>,
    pub exact: bool,
}

/// Maximum of Σ 1/n over pairwise-lcm-compatible sets, by branch and bound
/// over the candidates in increasing order (so decreasing weight). Weights
/// live over the fixed denominator lcm(2..⌊x⌋), which fits u64 up to the
/// exact cap; the optimum and one lexicographically smallest witness come
/// back exact. Refuses ⌊x⌋ > 40; `r_greedy` covers larger x without the
/// optimality guarantee.
pub fn r_exact(x: Rational64) -> Result<LcmOptimum> {
    let floor = x.floor();
    if floor > EXACT_CAP {
        return Err(ArithError::ResourceLimit(format!(
            "exact packing search stops at x <= {EXACT_CAP}, got {x}; r_greedy handles larger x"
        )));
    }
    let inst = LcmInstance::new(x);
    let cands: Vec<u64> = inst.candidates().collect();
    let mut weight_den = 1u64;
    for &n in &cands {
        weight_den = weight_den / gcd(weight_den, n) * n;
    }
    let weights: Vec<u64> = cands.iter().map(|&n| weight_den / n).collect();
    // adj[i]: candidates compatible with i, as an index bitmask.
    let adj: Vec<u64> = cands
        .iter()
        .map(|&m| {
            let mut mask = 0u64;
            for (j, &n) in cands.iter().enumerate() {
                if n != m && inst.compatible(m, n) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();

    struct Search<'s> {
        cands: &'s [u64],
        weights: &'s [u64],
        adj: &'s [u64],
        best_units: u128,
        best_witness: Vec<u64>,
    }

    impl Search<'_> {
        /// Extend the current set by elements drawn from `allowed`, visiting
        /// subsets in lexicographic order so the first optimum found is the
        /// lexicographically smallest witness.
        fn grow(&mut self, allowed: u64, units: u128, chosen: &mut Vec<u64>) {
            if units > self.best_units {
                self.best_units = units;
                self.best_witness = chosen.clone();
            }
            let mut rest = 0u128;
            let mut scan = allowed;
            while scan != 0 {
                let i = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                rest += self.weights[i] as u128;
            }
            if units + rest <= self.best_units {
                return;
            }
            let mut scan = allowed;
            while scan != 0 {
                let i = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                chosen.push(self.cands[i]);
                // Later elements only: `scan` already dropped everything
                // up to and including i.
                self.grow(scan & self.adj[i], units + self.weights[i] as u128, chosen);
                chosen.pop();
            }
        }
    }

    let mut search = Search {
        cands: &cands,
        weights: &weights,
        adj: &adj,
        best_units: 0,
        best_witness: Vec::new(),
    };
    search.grow(
        if cands.is_empty() {
            0
        } else {
            (1u64 << cands.len()) - 1
        },
        0,
        &mut Vec::new(),
    );

    let value = BigRational::new(
        BigInt::from(search.best_units),
        BigInt::from(weight_den as u128),
    );
    let checked = inst.verify_witness(&search.best_witness)?;
    if checked != value {
        return Err(ArithError::Inconsistent(format!(
            "packing optimum at x = {x}: search value {value} != witness recheck {checked}"
        )));
    }
    Ok(LcmOptimum {
        value,
        witness: search.best_witness,
        exact: true,
    })
}

/// Feasible-but-not-proven packing: sweep candidates in increasing order,
/// keeping each one compatible with everything already chosen.
pub fn r_greedy(x: Rational64) -> Result<LcmOptimum> {
    let floor = x.floor();
    if floor > GREEDY_CAP {
        return Err(ArithError::ResourceLimit(format!(
            "greedy packing sweep stops at x <= {GREEDY_CAP}, got {x}"
        )));
    }
    let inst = LcmInstance::new(x);
    let mut witness: Vec<u64> = Vec::new();
    for n in inst.candidates() {
        if witness.iter().all(|&m| inst.compatible(m, n)) {
            witness.push(n);
        }
    }
    let value = inst.verify_witness(&witness)?;
    Ok(LcmOptimum {
        value,
        witness,
        exact: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(num: u64, den: u64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn pinned_small_optima() {
        for (x, num, den, witness) in [
            (2u64, 1u64, 2u64, vec![2u64]),
            (4, 5, 6, vec![2, 3]),
            (5, 31, 30, vec![2, 3, 5]),
            (6, 47, 60, vec![3, 4, 5]),
            (7, 389, 420, vec![3, 4, 5, 7]),
            (11, 4699, 4620, vec![3, 4, 5, 7, 11]),
        ] {
            let opt = r_exact(Rational64::from_int(x)).unwrap();
            assert_eq!(opt.value, ratio(num, den), "x = {x}");
            assert_eq!(opt.witness, witness, "x = {x}");
            assert!(opt.exact);
        }
    }

    #[test]
    fn rational_level_keeps_the_pair_2_3() {
        // lcm(2, 3) = 6 only clears levels below 6.
        let opt = r_exact(Rational64::new(11, 2)).unwrap();
        assert_eq!(opt.value, ratio(31, 30));
        assert_eq!(opt.witness, vec![2, 3, 5]);
    }

    #[test]
    fn refuses_past_the_exact_cap() {
        assert!(matches!(
            r_exact(Rational64::from_int(41)),
            Err(ArithError::ResourceLimit(_))
        ));
        assert!(matches!(
            r_greedy(Rational64::from_int(GREEDY_CAP + 1)),
            Err(ArithError::ResourceLimit(_))
        ));
    }

    #[test]
    fn greedy_is_feasible_but_not_always_optimal() {
        let mut strict = 0;
        for xv in 2..=30u64 {
            let x = Rational64::from_int(xv);
            let exact = r_exact(x).unwrap();
            let greedy = r_greedy(x).unwrap();
            assert!(!greedy.exact);
            assert!(greedy.value <= exact.value, "x = {xv}");
            if greedy.value < exact.value {
                strict += 1;
            }
        }
        // At x = 6 greedy locks in 2 and misses {3, 4, 5}.
        assert!(strict > 0);
        assert_eq!(r_greedy(Rational64::from_int(6)).unwrap().witness, [2, 5]);
    }

    #[test]
    fn degenerate_level_has_empty_optimum() {
        let opt = r_exact(Rational64::new(3, 2)).unwrap();
        assert!(opt.value.is_zero() && opt.witness.is_empty());
    }
}
