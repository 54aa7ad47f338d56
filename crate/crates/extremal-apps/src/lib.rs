//! Extremal applications of the divisor-growth machinery: exact reciprocal
//! sums over the boundary sets and their patched variant, the maximum
//! reciprocal weight of a pairwise-lcm-compatible set, the budgeted small
//! sieve in both its exact form and its τ-relaxed step-function form, and
//! the longest simple path in the divisor graph.
//!
//! Sums and optima here are exact rationals: big-integer arithmetic for the
//! unbounded sums, u64/u128 over fixed common denominators inside the small
//! combinatorial searches. The solvers refuse instances past their exact
//! regime instead of silently degrading; the τ scan, whose levels run far
//! beyond any branch-and-bound range, settles each budget comparison with
//! an outward-rounded enclosure first and falls back to the exact rational
//! sum only when the enclosure straddles the budget.

mod divisor_path;
mod lcm_sets;
mod recip;
mod sieve_min;
mod tau_scan;

pub use divisor_path::{f_exact, f_lower};
pub use lcm_sets::{r_exact, r_greedy, LcmInstance, LcmOptimum};
pub use recip::{frac_sum_b, sum_recip_b, sum_recip_b_interval, sum_recip_b_prime};
pub use sieve_min::{h_exact, SieveBudgetInstance, SieveOptimum};
pub use tau_scan::{h_star, HStarOutcome, TauScan};
