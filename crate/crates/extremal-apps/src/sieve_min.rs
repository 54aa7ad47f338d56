use arith_core::{ArithError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use ssf_counting::Rational64;

const EXACT_CAP: u64 = 40;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The budgeted sieve: choose removers from 2..⌊x⌋ whose reciprocals sum to
/// at most the budget, so as to leave as few of 1..⌊x⌋ as possible with no
/// chosen divisor. The integer 1 has no divisor among the candidates, so at
/// least one survivor is guaranteed whenever x ≥ 1.
pub struct SieveBudgetInstance {
    x: Rational64,
    budget: Rational64,
}

impl SieveBudgetInstance {
    pub fn new(x: Rational64, budget: Rational64) -> Self {
        SieveBudgetInstance { x, budget }
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn budget(&self) -> Rational64 {
        self.budget
    }

    /// Survivors of the sieve by `set`, counted directly.
    pub fn unsieved_count(&self, set: &[u64]) -> u64 {
        let floor = self.x.floor() as usize;
        let mut hit = vec![false; floor + 1];
        for &s in set {
            let mut m = s as usize;
            while m <= floor {
                hit[m] = true;
                m += s as usize;
            }
        }
        (1..=floor).filter(|&n| !hit[n]).count() as u64
    }

    /// Re-check a witness from first principles: in range, strictly
    /// increasing, exact reciprocal sum within budget. Returns the sum.
    pub fn verify_witness(&self, set: &[u64]) -> Result<BigRational> {
        let floor = self.x.floor();
        let mut sum = BigRational::zero();
        for (i, &s) in set.iter().enumerate() {
            if s < 2 || s > floor {
                return Err(ArithError::InvalidArgument(format!(
                    "witness element {s} outside 2..{floor}"
                )));
            }
            if i > 0 && set[i - 1] >= s {
                return Err(ArithError::InvalidArgument(
                    "witness must be strictly increasing".into(),
                ));
            }
            sum += BigRational::new(BigInt::from(1), BigInt::from(s));
        }
        let cap = BigRational::new(
            BigInt::from(self.budget.num()),
            BigInt::from(self.budget.den()),
        );
        if sum > cap {
            return Err(ArithError::Inconsistent(format!(
                "witness spends {sum}, over the budget {}",
                self.budget
            )));
        }
        Ok(sum)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveOptimum {
    pub count: u64,
    pub witness: Vec<u64>,
}

/// Minimum survivor count under an exact rational budget, by branch and
/// bound over candidates in increasing order.
///
/// A candidate that removes nothing new is skipped: it costs budget and
/// changes no survivor. With candidates ascending, a candidate removes
/// nothing exactly when it is a multiple of a chosen element (its first
/// unremoved multiple would be itself), so the search walks precisely the
/// divisor antichains, a lossless restriction for the count. Visiting them
/// in lexicographic order makes the first optimum found the
/// lexicographically smallest antichain witness. The pruning bound is the
/// budget translated into removals: s removes at most ⌊x/s⌋ ≤ x · (1/s)
/// integers, so the remaining budget times x caps every future removal.
pub fn h_exact(x: Rational64, budget: Rational64) -> Result<SieveOptimum> {
    let floor = x.floor();
    if floor > EXACT_CAP {
        return Err(ArithError::ResourceLimit(format!(
            "exact sieve search stops at x <= {EXACT_CAP}, got {x}"
        )));
    }
    if floor == 0 {
        return Ok(SieveOptimum {
            count: 0,
            witness: Vec::new(),
        });
    }
    let inst = SieveBudgetInstance::new(x, budget);
    let cands: Vec<u64> = (2..=floor).collect();
    let mut weight_den = 1u64;
    for n in 1..=floor {
        weight_den = weight_den / gcd(weight_den, n) * n;
    }
    let costs: Vec<u64> = cands.iter().map(|&s| weight_den / s).collect();
    // masks[i]: bit n-1 set for every multiple n ≤ ⌊x⌋ of the candidate.
    let masks: Vec<u64> = cands
        .iter()
        .map(|&s| {
            let mut mask = 0u64;
            let mut m = s;
            while m <= floor {
                mask |= 1 << (m - 1);
                m += s;
            }
            mask
        })
        .collect();
    // union_from[i]: everything candidates i.. could still remove.
    let mut union_from = vec![0u64; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        union_from[i] = union_from[i + 1] | masks[i];
    }

    let budget_num = budget.num() as u128;
    let budget_den = budget.den() as u128;
    let den128 = weight_den as u128;
    let budget_units = budget_num * den128; // compare spent · bden against this

    struct Search<'s> {
        floor: u64,
        x: Rational64,
        cands: &'s [u64],
        costs: &'s [u64],
        masks: &'s [u64],
        union_from: &'s [u64],
        budget_den: u128,
        budget_units: u128,
        weight_den: u128,
        best: SieveOptimum,
    }

    impl Search<'_> {
        /// Removals still paid for by the leftover budget; saturating when
        /// the exact product overflows, which only weakens the prune.
        fn removals_left(&self, spent: u64) -> u64 {
            let left = self.budget_units - spent as u128 * self.budget_den;
            let den = (self.budget_den * self.weight_den).checked_mul(self.x.den() as u128);
            match (left.checked_mul(self.x.num() as u128), den) {
                (Some(num), Some(den)) => (num / den).min(self.floor as u128) as u64,
                _ => self.floor,
            }
        }

        fn descend(&mut self, from: usize, sieved: u64, spent: u64, chosen: &mut Vec<u64>) {
            let count = self.floor - sieved.count_ones() as u64;
            if count < self.best.count {
                self.best = SieveOptimum {
                    count,
                    witness: chosen.clone(),
                };
            }
            let reachable = (self.union_from[from] & !sieved).count_ones() as u64;
            let possible = reachable.min(self.removals_left(spent));
            if count - possible >= self.best.count {
                return;
            }
            for i in from..self.cands.len() {
                let gain = self.masks[i] & !sieved;
                if gain == 0 {
                    continue;
                }
                let next_spent = spent + self.costs[i];
                if next_spent as u128 * self.budget_den > self.budget_units {
                    continue;
                }
                chosen.push(self.cands[i]);
                self.descend(i + 1, sieved | self.masks[i], next_spent, chosen);
                chosen.pop();
            }
        }
    }

    let mut search = Search {
        floor,
        x,
        cands: &cands,
        costs: &costs,
        masks: &masks,
        union_from: &union_from,
        budget_den,
        budget_units,
        weight_den: den128,
        best: SieveOptimum {
            count: floor,
            witness: Vec::new(),
        },
    };
    // The empty set is always feasible, so the search starts from it.
    search.descend(0, 0, 0, &mut Vec::new());
    let best = search.best;

    inst.verify_witness(&best.witness)?;
    if inst.unsieved_count(&best.witness) != best.count {
        return Err(ArithError::Inconsistent(format!(
            "sieve optimum at x = {x}: survivor recount disagrees with the search"
        )));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(x: u64, budget: Rational64) -> SieveOptimum {
        let inst = SieveBudgetInstance::new(Rational64::from_int(x), budget);
        let cands: Vec<u64> = (2..=x).collect();
        let mut best = SieveOptimum {
            count: x,
            witness: Vec::new(),
        };
        for pick in 0u64..(1 << cands.len()) {
            let set: Vec<u64> = cands
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            // Witnesses are canonical within divisor antichains; a set with
            // an internal divisor pair carries an element that removes
            // nothing.
            let antichain = set
                .iter()
                .enumerate()
                .all(|(i, &s)| set[..i].iter().all(|&t| s % t != 0));
            if !antichain || inst.verify_witness(&set).is_err() {
                continue;
            }
            let count = inst.unsieved_count(&set);
            if count < best.count || (count == best.count && set < best.witness) {
                best = SieveOptimum {
                    count,
                    witness: set,
                };
            }
        }
        best
    }

    #[test]
    fn pinned_small_minima() {
        let one = Rational64::from_int(1);
        let h2 = h_exact(Rational64::from_int(2), one).unwrap();
        assert_eq!((h2.count, h2.witness.as_slice()), (1, &[2][..]));
        let h6 = h_exact(Rational64::from_int(6), one).unwrap();
        assert_eq!((h6.count, h6.witness.as_slice()), (2, &[2, 3][..]));
        let h10 = h_exact(Rational64::from_int(10), one).unwrap();
        assert_eq!((h10.count, h10.witness.as_slice()), (2, &[2, 3, 7][..]));
    }

    #[test]
    fn zero_budget_leaves_everything() {
        let h = h_exact(Rational64::new(25, 2), Rational64::new(0, 1)).unwrap();
        assert_eq!(h.count, 12);
        assert!(h.witness.is_empty());
    }

    #[test]
    fn matches_exhaustive_search_with_lexicographic_ties() {
        for x in 2..=12u64 {
            for budget in [
                Rational64::new(1, 2),
                Rational64::from_int(1),
                Rational64::new(3, 2),
            ] {
                let fast = h_exact(Rational64::from_int(x), budget).unwrap();
                assert_eq!(fast, brute(x, budget), "x = {x}, budget = {budget}");
            }
        }
    }

    #[test]
    fn spending_more_never_leaves_more() {
        let ladder = [
            Rational64::new(0, 1),
            Rational64::new(1, 4),
            Rational64::new(1, 2),
            Rational64::new(3, 4),
            Rational64::from_int(1),
            Rational64::new(3, 2),
            Rational64::from_int(2),
        ];
        for x in [10u64, 23, 30] {
            let mut last = u64::MAX;
            for budget in ladder {
                let h = h_exact(Rational64::from_int(x), budget).unwrap();
                assert!(h.count <= last, "x = {x}, budget = {budget}");
                last = h.count;
            }
            // Everything except 1 can go once the budget covers all primes.
            assert_eq!(h_exact(Rational64::from_int(x), Rational64::from_int(3)).unwrap().count, 1);
        }
    }

    #[test]
    fn refuses_past_the_exact_cap() {
        assert!(matches!(
            h_exact(Rational64::from_int(41), Rational64::from_int(1)),
            Err(ArithError::ResourceLimit(_))
        ));
    }
}
