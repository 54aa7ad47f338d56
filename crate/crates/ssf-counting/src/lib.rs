//! The divisor-growth function F(n) = max{d · P⁻(d) : d | n, d > 1} and the
//! combinatorial sets it carves out of the integers.
//!
//! For a rational growth allowance y and a prime cutoff z, an integer n
//! belongs to the dense-divisor family exactly when F(n)/n ≤ y and
//! P⁻(n) > z. Equivalently, writing n = p_1 p_2 ⋯ p_k with the primes in
//! nondecreasing order, each link of the chain must satisfy
//! p_{j+1} ≤ y · p_1 ⋯ p_j. That chain view drives everything here: members
//! are enumerated by extending prime chains rather than by scanning and
//! factoring, so the cost is proportional to the (sparse) output.
//!
//! On top of membership sit the exact counting functions
//!
//! * `count_d`: members of the family up to x,
//! * `count_a`: n ≤ x with F(n) ≤ xy and P⁻(n) > z,
//!
//! the boundary set of F (integers whose F-value first exceeds x while every
//! proper divisor stays below), its reciprocal-weighted variant, and a suite
//! of integer identities tying these counts together. The identities hold
//! exactly, so their checks compare u64/u128 values with zero tolerance.

mod bset;
mod chain;
mod count;
mod factor;
mod identities;
mod rational;
mod ssf;

pub use bset::{enumerate_b, slice_count_reference, BPrime, BSet};
pub use chain::{enumerate_members, for_each_chain, is_member, member_stream, Member, MemberStream};
pub use count::{count_a, count_d, CountQuery};
pub use factor::Factorization;
pub use identities::{
    buchstab_profile_check, buchstab_spot_check, integral_identity_check, lem0_check, lem2_check,
    partition_profile_check, slice_count_profile_check, tenenbaum_check,
};
pub use rational::Rational64;
pub use ssf::{divisor_ratio_max, schinzel_szekeres, ssf_of, ssf_sub};

pub use bset::build_b_prime;
