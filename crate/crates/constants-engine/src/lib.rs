//! Rigorous enclosures for the numerical constants of the dense-divisor
//! theory: the local density c_{y,z}, the integrated density a_{y,z}, the
//! prime-correction constant beta, the per-slice loss constants mu_q, and the
//! derived delta, kappa, a·e^{-delta}.
//!
//! Every routine returns a [`ConstantReport`] whose value is an outward-
//! rounded interval: the mathematical constant lies inside it provided the
//! configured oscillation anchors hold. Truncation tails are never estimated,
//! always bracketed, so widening the horizon tightens the answer without
//! moving it.

mod a;
mod beta;
mod c;
mod derived;
mod mu;
mod params;
mod tables;

pub use a::{acor1_residual, compute_a};
pub use beta::{beta_prime_terms, compute_beta, q_prime_interval};
pub use c::compute_c;
pub use derived::derived_constants;
pub use mu::compute_mu;
pub use params::{decimal_hi, decimal_lo, enclosure_json, ConstantReport, TruncationParams};
pub use tables::{table_one, table_two, TableReport, CUTOFF_COLUMNS};
