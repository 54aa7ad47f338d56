//! Shared arithmetic layer: directed-rounding enclosures, a prime sieve with
//! Mertens-type prefix tables, the oscillation term `eta` with its tail bounds,
//! Legendre-style rough-number counts, and per-integer prefix tables for the
//! weighted integrals used by the constant evaluators.
//!
//! Everything downstream that claims a rigorous interval goes through
//! [`Enclosure`]: plain f64 endpoints, every operation rounded outward.

mod bigratio;
mod enclosure;
mod eta;
mod fracsum;
mod gtable;
mod phi;
mod sieve;

pub use bigratio::{ratio_to_enclosure, signed_ratio_to_enclosure, tree_sum};
pub use enclosure::Enclosure;
pub use eta::{eta_at, eta_at_prime, eta_before_prime, eta_tail_bounds, EtaBoundConfig, EtaTailBounds};
pub use fracsum::frac_sum_over_primes;
pub use gtable::{g_eval, g_log_integral, GTables};
pub use phi::{lambda_density, phi_count, phi_count_scan, prime_count_between};
pub use sieve::{PrimeCutoff, SieveCache};

/// Errors surfaced by this layer. The split mirrors how the CLI maps failures
/// to exit codes: bad arguments, refusing to blow the resource budget, an
/// internal numeric check failing, and configuration problems.
#[derive(Debug, thiserror::Error)]
pub enum ArithError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("numeric consistency check failed: {0}")]
    Inconsistent(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("cache I/O: {0}")]
    CacheIo(String),
}

pub type Result<T> = std::result::Result<T, ArithError>;
