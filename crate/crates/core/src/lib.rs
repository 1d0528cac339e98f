//! Permutation statistics, permutation codes, and exact distribution checking.
//!
//! The crate has four layers:
//!
//! - [`perm`]: the [`Permutation`] type and its structural maps (inverse,
//!   flip, prime, cut/insert, standard cycle notation, and the two
//!   parenthesis-erasing bijections [`Permutation::cycle0`] and
//!   [`Permutation::cycle_neg1`]).
//! - [`stats`]: descent-, ascent-, exceedance-, and major-index-style
//!   statistics, including the `k`-parameterized families, addressable by
//!   name through [`StatDescriptor`].
//! - [`codes`]: subexceedant sequences ([`Code`]), the `sum` and `st_k`
//!   code statistics, and the inversion- and major-index-based coding
//!   bijections between permutations and codes.
//! - [`dist`]: an exhaustive enumeration engine that accumulates joint
//!   distributions of statistic tuples into sparse integer polynomials
//!   and checks named equidistribution identities, reporting the first
//!   counterexample when one fails.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and
//! all checks are full enumerations over `S_n` or over codes of length `n`.
//!
//! The crate is `no_std` (it requires `alloc`); enumeration at useful sizes
//! needs nothing from the host beyond a heap.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod codes;
pub mod dist;
pub mod perm;
pub mod stats;

pub use codes::{Code, CodeError, InsertProfile};
pub use dist::{
    distribution, equal_distribution, verify, Counterexample, DistError, DistPolynomial, Domain,
    IdentityName, TermDiff, VerificationReport,
};
pub use perm::{CyclePathNotation, PermError, Permutation};
pub use stats::{StatDescriptor, StatDomain, StatError, StatName};
