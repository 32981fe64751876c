//! Exact enumeration of Egyptian-fraction representations.
//!
//! * [`exactnum`]: arbitrary-precision naturals, reduced ratios, σ_s.
//! * [`repr`]: representations, restriction profiles, divisor coverage and
//!   the line record format.
//! * [`enumerate`]: exhaustive branch-and-bound enumeration of S_u(k) and a
//!   naive reference enumerator.
//! * [`operators`]: the γ_d split, the first-part tree and its s(k) count,
//!   the odd-preserving O swap, closures, gap reports and coprime paths.
//! * [`shiu`]: the odd-denominator classification campaign and OPN filters.

pub mod enumerate;
pub mod error;
pub mod exactnum;
pub mod operators;
pub mod repr;
pub mod shiu;

pub use enumerate::{
    count_reps, count_with, enumerate_reps, enumerate_with, naive_oracle, Count, EnumerationResult, Execution, Limit,
    Progress, ProgressHook, SearchBounds,
};
pub use error::{Error, Result};
pub use exactnum::{divisors, factorize, gcd_lcm, sigma, Natural, Ratio};
pub use operators::{
    closure, coprime_path_search, find_unreachable, first_part_tree, gamma_children, gamma_split, lower_bound_s,
    o_swap, ClosureLimits, ClosureResult, GammaChoice, OParams, OperatorApplication, OperatorSet,
};
pub use repr::{
    coverage, perfect_representation, validate, CoverageReport, PartsParity, Record, Representation,
    RestrictionProfile, Rule, Violation,
};
pub use shiu::{opn_filter, seed_equation, verify_shiu, ShiuReport};
