//! Generalized factorials over number fields.
//!
//! For a number field `K` the generalized factorial is
//! `Π_K(x) = ∏_{N(a) ≤ x} N(a) = ∏_{n ≤ x} n^{a_K(n)}` where `a_K(n)` counts the
//! ideals of norm `n`. This crate computes `a_K(n)` from the splitting of
//! rational primes, represents `Π_K(x)` exactly as an exponent vector, and
//! enumerates solutions of
//!
//! ```text
//! Π_K(l_1) ··· Π_K(l_{m-1}) = Π_K(l_m),   2 ≤ l_1 ≤ … ≤ l_{m-1} < l_m
//! ```
//!
//! classifying each as trivial (no ideal norm strictly between `l_{m-1}` and
//! `l_m`) or non-trivial. The [`analytic`] module evaluates the Bertrand-type
//! estimates for completely split primes and the explicit finiteness bound.
//!
//! Modules:
//! - [`field`]: field descriptors, the field-spec grammar, prime splitting
//! - [`ffpoly`]: polynomials over `F_p` and the Dedekind criterion
//! - [`ideal_count`]: `a_K(n)` and its sieve
//! - [`factored`]: exponent-vector integers and `Π_K`
//! - [`solver`]: solution checks and exhaustive searches
//! - [`analytic`]: split-prime counting and explicit constants
//! - [`report`]: serializable report types shared with the CLI
//! - [`cache`]: on-disk sieve cache

pub mod analytic;
pub mod cache;
mod error;
pub mod factored;
pub mod ffpoly;
pub mod field;
pub mod ideal_count;
pub mod primes;
pub mod report;
pub mod solver;

pub use analytic::{BertrandReport, BoundConstants};
pub use error::{Error, Result};
pub use factored::{FactoredValue, PiTable};
pub use ffpoly::{DegreeProfile, PrimePoly};
pub use field::{FieldDescriptor, FieldKind, LocalSplitting, SplitPart};
pub use ideal_count::{IdealCountSieve, SieveOptions};
pub use solver::{SearchMode, SearchOutcome, SolutionKind, SolutionTuple};

/// Version tag mixed into cache keys; bump when sieve semantics change.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");
