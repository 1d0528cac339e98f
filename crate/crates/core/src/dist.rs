//! Exhaustive joint-distribution engine over permutations and codes.
//!
//! [`distribution`] walks a whole domain (`S_n` or the codes of length
//! `n`), evaluates a tuple of statistics on every element, and accumulates
//! the result into a [`DistPolynomial`]: a sparse multivariate polynomial
//! whose coefficient at an exponent vector counts the elements realizing
//! those statistic values.
//!
//! Elements are addressed by rank in the factorial number system: the
//! mixed-radix digits of a rank form a [`Code`], and codes map to
//! permutations through [`codes::inv_decode`]. Disjoint rank ranges
//! therefore partition the domain, [`distribution_range`] computes the
//! partial polynomial of one range, and [`DistPolynomial::merge`] adds
//! partials associatively, so chunked (possibly concurrent) accumulation
//! is exactly equal to serial accumulation.
//!
//! [`verify`] runs a named identity from the registry ([`IdentityName`])
//! at one size, either element by element or by comparing two full
//! distributions, and reports the first counterexample on failure.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::time::Duration;

use num_bigint::BigUint;

use crate::codes::{self, Code};
use crate::perm::Permutation;
use crate::stats::{self, StatDescriptor, StatDomain};

/// Default upper bound on the domain size parameter `n`. Everything is
/// `n!`-time; 11 keeps a full run in minutes on commodity hardware.
pub const DEFAULT_SIZE_CAP: usize = 11;

/// Hard structural bound: ranks are `u64`, so `n! <= 20!` must hold.
pub const MAX_ENUMERABLE_SIZE: usize = 20;

/// Error raised by the distribution engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistError {
    /// The size parameter was zero.
    InvalidSize,
    /// The size parameter exceeded the configured cap.
    SizeCapExceeded { n: usize, cap: usize },
    /// The size parameter exceeded the `u64` rank space.
    RankSpaceTooLarge { n: usize },
    /// A statistic does not evaluate on the requested domain.
    DomainMismatch { stat: String, domain: Domain },
    /// A rank range reached beyond `n!`.
    RankOutOfBounds { end: u64, size: u64 },
    /// The identity is `k`-parameterized but no `k` was given.
    KRequired { identity: IdentityName },
    /// Renaming variables with the wrong number of names.
    VarCountMismatch { expected: usize, got: usize },
}

impl fmt::Display for DistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistError::InvalidSize => write!(f, "size must be at least 1"),
            DistError::SizeCapExceeded { n, cap } => {
                write!(f, "n = {n} exceeds the size cap {cap}")
            }
            DistError::RankSpaceTooLarge { n } => {
                write!(f, "n = {n} exceeds the enumerable limit {MAX_ENUMERABLE_SIZE}")
            }
            DistError::DomainMismatch { stat, domain } => {
                write!(f, "statistic {stat} cannot be evaluated on the {domain} domain")
            }
            DistError::RankOutOfBounds { end, size } => {
                write!(f, "rank range end {end} exceeds the domain size {size}")
            }
            DistError::KRequired { identity } => {
                write!(f, "identity {} requires a k parameter", identity.as_str())
            }
            DistError::VarCountMismatch { expected, got } => {
                write!(f, "expected {expected} variable names, got {got}")
            }
        }
    }
}

impl core::error::Error for DistError {}

/// The enumeration domain: all of `S_n`, or all codes of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Permutations,
    Codes,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Permutations => "perms",
            Domain::Codes => "codes",
        }
    }

    /// Parses the command-line form, `"perms"` or `"codes"`.
    pub fn parse(s: &str) -> Option<Domain> {
        match s {
            "perms" => Some(Domain::Permutations),
            "codes" => Some(Domain::Codes),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

/// `n!` as a `u64`. Panics beyond [`MAX_ENUMERABLE_SIZE`].
pub fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

/// The code whose mixed-radix digits are the given rank: entry `c(i)` has
/// radix `i` and place value `(i-1)!`. Rank 0 is the all-zero code.
pub fn code_at_rank(n: usize, rank: u64) -> Code {
    debug_assert!(rank < factorial(n));
    let mut entries = alloc::vec![0usize; n];
    let mut r = rank;
    for i in (2..=n).rev() {
        let place = factorial(i - 1);
        entries[i - 1] = (r / place) as usize;
        r %= place;
    }
    Code::from_entries(entries).expect("mixed-radix digits satisfy the code bound")
}

/// The rank of a code: the inverse of [`code_at_rank`].
pub fn code_rank(c: &Code) -> u64 {
    c.as_slice()
        .iter()
        .enumerate()
        .map(|(idx, &e)| e as u64 * factorial(idx))
        .sum()
}

/// The permutation at a rank: the rank's code, decoded through the
/// inversion coding scheme. Rank 0 is the identity.
pub fn permutation_at_rank(n: usize, rank: u64) -> Permutation {
    codes::inv_decode(&code_at_rank(n, rank))
}

fn check_range(n: usize, range: &Range<u64>) -> Result<(), DistError> {
    if n == 0 {
        return Err(DistError::InvalidSize);
    }
    if n > MAX_ENUMERABLE_SIZE {
        return Err(DistError::RankSpaceTooLarge { n });
    }
    let size = factorial(n);
    if range.end > size {
        return Err(DistError::RankOutOfBounds {
            end: range.end,
            size,
        });
    }
    Ok(())
}

/// Streams the codes of length `n` with ranks in `range`, in rank order.
pub fn enumerate_codes(
    n: usize,
    range: Range<u64>,
) -> Result<impl Iterator<Item = Code>, DistError> {
    check_range(n, &range)?;
    Ok(range.map(move |r| code_at_rank(n, r)))
}

/// Streams the permutations of `S_n` with ranks in `range`, in rank order.
pub fn enumerate_perms(
    n: usize,
    range: Range<u64>,
) -> Result<impl Iterator<Item = Permutation>, DistError> {
    check_range(n, &range)?;
    Ok(range.map(move |r| permutation_at_rank(n, r)))
}

/// A sparse multivariate polynomial with nonnegative integer coefficients:
/// the joint distribution of a statistic tuple over a finite domain.
///
/// Terms are keyed by exponent vector (one entry per variable) and held in
/// lexicographic order; zero coefficients are never stored. For a full
/// domain the coefficients sum to `n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl DistPolynomial {
    /// The zero polynomial in the given variables.
    pub fn zero(vars: Vec<String>) -> Self {
        DistPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Ordered variable names.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Adds one occurrence of an exponent vector.
    pub fn add_occurrence(&mut self, exponents: Vec<u32>) {
        debug_assert_eq!(exponents.len(), self.vars.len());
        *self
            .terms
            .entry(exponents)
            .or_insert_with(|| BigUint::from(0u32)) += 1u32;
    }

    /// Adds another polynomial in the same variables. Merging is
    /// associative and commutative, so chunked accumulation is independent
    /// of the chunking.
    pub fn merge(&mut self, other: DistPolynomial) {
        assert_eq!(self.vars, other.vars, "merge requires identical variables");
        for (exponents, coef) in other.terms {
            *self
                .terms
                .entry(exponents)
                .or_insert_with(|| BigUint::from(0u32)) += coef;
        }
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigUint)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient at an exponent vector, zero if absent.
    pub fn coefficient(&self, exponents: &[u32]) -> BigUint {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| BigUint::from(0u32))
    }

    /// Sum of all coefficients; the domain size for a full distribution.
    pub fn coefficient_sum(&self) -> BigUint {
        let mut total = BigUint::from(0u32);
        for coef in self.terms.values() {
            total += coef;
        }
        total
    }

    /// Replaces the variable names, keeping the terms.
    pub fn rename_vars(mut self, vars: Vec<String>) -> Result<Self, DistError> {
        if vars.len() != self.vars.len() {
            return Err(DistError::VarCountMismatch {
                expected: self.vars.len(),
                got: vars.len(),
            });
        }
        self.vars = vars;
        Ok(self)
    }

    /// The canonical serialized document: a single-line JSON object with
    /// the ordered `vars` and the terms sorted lexicographically by
    /// exponent vector, coefficients as decimal strings. Byte-stable
    /// across runs and independent of how the polynomial was accumulated.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::from("{\"vars\":[");
        for (idx, var) in self.vars.iter().enumerate() {
            if idx > 0 {
                out.push(',');
            }
            out.push('"');
            escape_json_into(var, &mut out);
            out.push('"');
        }
        out.push_str("],\"terms\":[");
        for (idx, (exponents, coef)) in self.terms.iter().enumerate() {
            if idx > 0 {
                out.push(',');
            }
            out.push_str("{\"exp\":[");
            for (jdx, e) in exponents.iter().enumerate() {
                if jdx > 0 {
                    out.push(',');
                }
                out.push_str(&e.to_string());
            }
            out.push_str("],\"coef\":\"");
            out.push_str(&coef.to_str_radix(10));
            out.push_str("\"}");
        }
        out.push_str("]}");
        out
    }
}

fn escape_json_into(s: &str, out: &mut String) {
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                out.push_str("\\u");
                let code = c as u32;
                for shift in [12u32, 8, 4, 0] {
                    let digit = (code >> shift) & 0xF;
                    out.push(char::from_digit(digit, 16).unwrap());
                }
            }
            c => out.push(c),
        }
    }
}

/// The first difference between two distributions: the lexicographically
/// least exponent vector whose coefficients disagree (a missing term
/// counts as zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub exponents: Vec<u32>,
    pub left: BigUint,
    pub right: BigUint,
}

impl fmt::Display for TermDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exponents [")?;
        for (idx, e) in self.exponents.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]: lhs coefficient {}, rhs coefficient {}", self.left, self.right)
    }
}

/// Compares two distributions term by term. Returns `None` when they are
/// identical, otherwise the first differing term. The polynomials must
/// have the same number of variables (names are not compared).
pub fn equal_distribution(left: &DistPolynomial, right: &DistPolynomial) -> Option<TermDiff> {
    assert_eq!(
        left.arity(),
        right.arity(),
        "distributions must have the same variable count"
    );
    let mut lhs = left.terms.iter().peekable();
    let mut rhs = right.terms.iter().peekable();
    loop {
        match (lhs.peek(), rhs.peek()) {
            (None, None) => return None,
            (Some((le, lc)), Some((re, rc))) => {
                if le == re {
                    if lc != rc {
                        return Some(TermDiff {
                            exponents: (*le).clone(),
                            left: (*lc).clone(),
                            right: (*rc).clone(),
                        });
                    }
                    lhs.next();
                    rhs.next();
                } else if le < re {
                    return Some(TermDiff {
                        exponents: (*le).clone(),
                        left: (*lc).clone(),
                        right: BigUint::from(0u32),
                    });
                } else {
                    return Some(TermDiff {
                        exponents: (*re).clone(),
                        left: BigUint::from(0u32),
                        right: (*rc).clone(),
                    });
                }
            }
            (Some((le, lc)), None) => {
                return Some(TermDiff {
                    exponents: (*le).clone(),
                    left: (*lc).clone(),
                    right: BigUint::from(0u32),
                });
            }
            (None, Some((re, rc))) => {
                return Some(TermDiff {
                    exponents: (*re).clone(),
                    left: BigUint::from(0u32),
                    right: (*rc).clone(),
                });
            }
        }
    }
}

fn validate_stats(stats: &[StatDescriptor], domain: Domain) -> Result<(), DistError> {
    let wanted = match domain {
        Domain::Permutations => StatDomain::Permutations,
        Domain::Codes => StatDomain::Codes,
    };
    for stat in stats {
        if stat.domain() != wanted {
            return Err(DistError::DomainMismatch {
                stat: stat.to_string(),
                domain,
            });
        }
    }
    Ok(())
}

/// Checks `n` against a size cap (and the structural rank-space limit).
pub fn check_size_cap(n: usize, cap: usize) -> Result<(), DistError> {
    if n == 0 {
        return Err(DistError::InvalidSize);
    }
    if n > MAX_ENUMERABLE_SIZE {
        return Err(DistError::RankSpaceTooLarge { n });
    }
    if n > cap {
        return Err(DistError::SizeCapExceeded { n, cap });
    }
    Ok(())
}

/// Joint distribution of a statistic tuple over the full domain, with the
/// default size cap. Variables are named after the statistics.
pub fn distribution(
    n: usize,
    stats: &[StatDescriptor],
    domain: Domain,
) -> Result<DistPolynomial, DistError> {
    distribution_with_cap(n, stats, domain, DEFAULT_SIZE_CAP)
}

/// [`distribution`] with an explicit size cap.
pub fn distribution_with_cap(
    n: usize,
    stats: &[StatDescriptor],
    domain: Domain,
    cap: usize,
) -> Result<DistPolynomial, DistError> {
    check_size_cap(n, cap)?;
    distribution_range(n, stats, domain, 0..factorial(n))
}

/// The partial distribution of one rank range. Merging the partials of
/// disjoint ranges covering `0..n!` reproduces the full distribution
/// exactly.
pub fn distribution_range(
    n: usize,
    stats: &[StatDescriptor],
    domain: Domain,
    range: Range<u64>,
) -> Result<DistPolynomial, DistError> {
    validate_stats(stats, domain)?;
    check_range(n, &range)?;
    let vars = stats.iter().map(|s| s.to_string()).collect();
    let mut poly = DistPolynomial::zero(vars);
    match domain {
        Domain::Permutations => {
            for rank in range {
                let sigma = permutation_at_rank(n, rank);
                let exponents = stats.iter().map(|s| s.eval_perm(&sigma) as u32).collect();
                poly.add_occurrence(exponents);
            }
        }
        Domain::Codes => {
            for rank in range {
                let code = code_at_rank(n, rank);
                let exponents = stats.iter().map(|s| s.eval_code(&code) as u32).collect();
                poly.add_occurrence(exponents);
            }
        }
    }
    Ok(poly)
}

fn distribution_custom<F>(n: usize, vars: &[&str], mut eval: F) -> DistPolynomial
where
    F: FnMut(&Permutation) -> Vec<u32>,
{
    let mut poly = DistPolynomial::zero(vars.iter().map(|v| v.to_string()).collect());
    for rank in 0..factorial(n) {
        let sigma = permutation_at_rank(n, rank);
        poly.add_occurrence(eval(&sigma));
    }
    poly
}

/// Named identities checkable by [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityName {
    /// `(des, cover)` is equidistributed with `(exc, des)`.
    PropEd,
    /// `exc_k(sigma) = bdestilde_{k+1}(cycle_neg1(sigma))`, per element.
    ExcBdes,
    /// `unexc(sigma) = asc(cycle_neg1(sigma))`, per element.
    UnexcAsc,
    /// `(unexc, exc_1..exc_4)` is equidistributed with
    /// `(asc, destilde_2..destilde_5)`.
    Multivar,
    /// `(asc, destilde_2)` is equidistributed with `(destilde_2, asc)`.
    AscDesSymmetry,
    /// `(des, maj)` is equidistributed with `(destilde_2, majhat_2)`.
    DesMajPair,
    /// `(des_k, majhat_k)` is equidistributed with
    /// `(destilde_{k+1}, majhat_{k+1})`.
    PairK,
    /// `majhat_k(sigma) = sum(maj_encode(sigma, k))`, per element, and the
    /// encoding hits all `n!` codes.
    BijThmI,
    /// `des_k(sigma) = st_k(maj_encode(sigma, k))`, per element.
    BijThmII,
    /// `destilde_{k+1}(sigma) = st_k(maj_encode(sigma, k+1))`, per element.
    BijThmIII,
    /// `st_k` over codes is equidistributed with `des_k` over `S_n`.
    CodeSt,
    /// `(amaj2, asctilde2, des of the inverse)` is equidistributed with
    /// `(maj - exc, des, exc)`, in the variables `(q, p, t)`.
    AlgThm,
}

impl IdentityName {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::PropEd => "prop_ed",
            IdentityName::ExcBdes => "exc_bdes",
            IdentityName::UnexcAsc => "unexc_asc",
            IdentityName::Multivar => "multivar",
            IdentityName::AscDesSymmetry => "asc_des_symmetry",
            IdentityName::DesMajPair => "des_maj_pair",
            IdentityName::PairK => "pair_k",
            IdentityName::BijThmI => "bij_thm_i",
            IdentityName::BijThmII => "bij_thm_ii",
            IdentityName::BijThmIII => "bij_thm_iii",
            IdentityName::CodeSt => "code_st",
            IdentityName::AlgThm => "alg_thm",
        }
    }

    /// Parses a registry name.
    pub fn parse(s: &str) -> Option<IdentityName> {
        ALL_IDENTITIES.iter().copied().find(|i| i.as_str() == s)
    }

    /// Whether the identity takes the `k` parameter.
    pub fn requires_k(self) -> bool {
        matches!(
            self,
            IdentityName::ExcBdes
                | IdentityName::PairK
                | IdentityName::BijThmI
                | IdentityName::BijThmII
                | IdentityName::BijThmIII
                | IdentityName::CodeSt
        )
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Every identity in the registry.
pub const ALL_IDENTITIES: [IdentityName; 12] = [
    IdentityName::PropEd,
    IdentityName::ExcBdes,
    IdentityName::UnexcAsc,
    IdentityName::Multivar,
    IdentityName::AscDesSymmetry,
    IdentityName::DesMajPair,
    IdentityName::PairK,
    IdentityName::BijThmI,
    IdentityName::BijThmII,
    IdentityName::BijThmIII,
    IdentityName::CodeSt,
    IdentityName::AlgThm,
];

/// Evidence that a verification failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// A per-element identity failed at this permutation.
    Element {
        rank: u64,
        element: Permutation,
        lhs: u64,
        rhs: u64,
    },
    /// Two distributions disagreed at this term.
    Term(TermDiff),
    /// The coding map repeated a code, breaking bijectivity.
    DuplicateCode {
        rank: u64,
        element: Permutation,
        code: Code,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Element {
                rank,
                element,
                lhs,
                rhs,
            } => write!(f, "sigma = {element} (rank {rank}): lhs = {lhs}, rhs = {rhs}"),
            Counterexample::Term(diff) => write!(f, "{diff}"),
            Counterexample::DuplicateCode {
                rank,
                element,
                code,
            } => write!(f, "sigma = {element} (rank {rank}) repeats code {code}"),
        }
    }
}

/// The outcome of one identity check at one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityName,
    pub n: usize,
    pub k: Option<usize>,
    /// Present exactly when the check failed.
    pub counterexample: Option<Counterexample>,
    /// Wall-clock time, filled in by callers that can measure it.
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// `"pass"` or `"fail"`.
    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

/// Runs a registry identity exhaustively at size `n` with the default
/// size cap. `k` is consulted only by the `k`-parameterized identities,
/// which fail with [`DistError::KRequired`] when it is absent.
pub fn verify(
    identity: IdentityName,
    n: usize,
    k: Option<usize>,
) -> Result<VerificationReport, DistError> {
    verify_with_cap(identity, n, k, DEFAULT_SIZE_CAP)
}

/// [`verify`] with an explicit size cap.
pub fn verify_with_cap(
    identity: IdentityName,
    n: usize,
    k: Option<usize>,
    cap: usize,
) -> Result<VerificationReport, DistError> {
    check_size_cap(n, cap)?;
    let need_k = || k.ok_or(DistError::KRequired { identity });
    let counterexample = match identity {
        IdentityName::PropEd => {
            let lhs = distribution_with_cap(n, &perm_stats(&["des", "cover"]), Domain::Permutations, cap)?;
            let rhs = distribution_with_cap(n, &perm_stats(&["exc", "des"]), Domain::Permutations, cap)?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::ExcBdes => {
            let k = need_k()?;
            check_elements(n, |sigma| {
                let lhs = stats::exc_k(sigma, k) as u64;
                let rhs = stats::bdestilde_k(&sigma.cycle_neg1(), k + 1) as u64;
                (lhs != rhs).then_some((lhs, rhs))
            })
        }
        IdentityName::UnexcAsc => check_elements(n, |sigma| {
            let lhs = stats::unexc(sigma) as u64;
            let rhs = stats::asc(&sigma.cycle_neg1()) as u64;
            (lhs != rhs).then_some((lhs, rhs))
        }),
        IdentityName::Multivar => {
            let lhs = distribution_with_cap(
                n,
                &perm_stats(&["unexc", "exc_k:1", "exc_k:2", "exc_k:3", "exc_k:4"]),
                Domain::Permutations,
                cap,
            )?;
            let rhs = distribution_with_cap(
                n,
                &perm_stats(&["asc", "destilde_k:2", "destilde_k:3", "destilde_k:4", "destilde_k:5"]),
                Domain::Permutations,
                cap,
            )?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::AscDesSymmetry => {
            let lhs = distribution_with_cap(n, &perm_stats(&["asc", "destilde_k:2"]), Domain::Permutations, cap)?;
            let rhs = distribution_with_cap(n, &perm_stats(&["destilde_k:2", "asc"]), Domain::Permutations, cap)?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::DesMajPair => {
            let lhs = distribution_with_cap(n, &perm_stats(&["des", "maj"]), Domain::Permutations, cap)?;
            let rhs = distribution_with_cap(n, &perm_stats(&["destilde_k:2", "majhat_k:2"]), Domain::Permutations, cap)?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::PairK => {
            let k = need_k()?;
            let lhs = distribution_with_cap(
                n,
                &[stat_k("des_k", k), stat_k("majhat_k", k)],
                Domain::Permutations,
                cap,
            )?;
            let rhs = distribution_with_cap(
                n,
                &[stat_k("destilde_k", k + 1), stat_k("majhat_k", k + 1)],
                Domain::Permutations,
                cap,
            )?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::BijThmI => {
            let k = need_k()?;
            verify_bij_thm_i(n, k)
        }
        IdentityName::BijThmII => {
            let k = need_k()?;
            check_elements(n, |sigma| {
                let lhs = stats::des_k(sigma, k) as u64;
                let rhs = codes::st_k(&codes::maj_encode(sigma, k), k) as u64;
                (lhs != rhs).then_some((lhs, rhs))
            })
        }
        IdentityName::BijThmIII => {
            let k = need_k()?;
            check_elements(n, |sigma| {
                let lhs = stats::destilde_k(sigma, k + 1) as u64;
                let rhs = codes::st_k(&codes::maj_encode(sigma, k + 1), k) as u64;
                (lhs != rhs).then_some((lhs, rhs))
            })
        }
        IdentityName::CodeSt => {
            let k = need_k()?;
            let lhs = distribution_with_cap(n, &[stat_k("st_k", k)], Domain::Codes, cap)?;
            let rhs = distribution_with_cap(n, &[stat_k("des_k", k)], Domain::Permutations, cap)?;
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
        IdentityName::AlgThm => {
            let vars = ["q", "p", "t"];
            let lhs = distribution_custom(n, &vars, |sigma| {
                alloc::vec![
                    stats::amaj2(sigma) as u32,
                    stats::asctilde2(sigma) as u32,
                    stats::des(&sigma.inverse()) as u32,
                ]
            });
            let rhs = distribution_custom(n, &vars, |sigma| {
                let q = u32::try_from(stats::maj_minus_exc(sigma)).expect("maj >= exc over S_n");
                alloc::vec![q, stats::des(sigma) as u32, stats::exc(sigma) as u32]
            });
            equal_distribution(&lhs, &rhs).map(Counterexample::Term)
        }
    };
    Ok(VerificationReport {
        identity,
        n,
        k: if identity.requires_k() { k } else { None },
        counterexample,
        elapsed: None,
    })
}

fn perm_stats(names: &[&str]) -> Vec<StatDescriptor> {
    names
        .iter()
        .map(|s| StatDescriptor::parse(s).expect("registry names are valid"))
        .collect()
}

fn stat_k(name: &str, k: usize) -> StatDescriptor {
    StatDescriptor::parse(&alloc::format!("{name}:{k}")).expect("registry names are valid")
}

/// Runs a per-element check over `S_n` in rank order, stopping at the
/// first failure.
fn check_elements<F>(n: usize, mut mismatch: F) -> Option<Counterexample>
where
    F: FnMut(&Permutation) -> Option<(u64, u64)>,
{
    for rank in 0..factorial(n) {
        let sigma = permutation_at_rank(n, rank);
        if let Some((lhs, rhs)) = mismatch(&sigma) {
            return Some(Counterexample::Element {
                rank,
                element: sigma,
                lhs,
                rhs,
            });
        }
    }
    None
}

/// Coding clause (i) plus bijectivity: the entry sum of every encoding
/// matches `majhat_k`, and the `n!` codes are pairwise distinct (checked
/// through a rank bitmap, so the image is exactly the code set).
fn verify_bij_thm_i(n: usize, k: usize) -> Option<Counterexample> {
    let size = factorial(n);
    let mut seen = alloc::vec![false; size as usize];
    for rank in 0..size {
        let sigma = permutation_at_rank(n, rank);
        let code = codes::maj_encode(&sigma, k);
        let lhs = stats::majhat_k(&sigma, k) as u64;
        let rhs = codes::code_sum(&code) as u64;
        if lhs != rhs {
            return Some(Counterexample::Element {
                rank,
                element: sigma,
                lhs,
                rhs,
            });
        }
        let code_rank = code_rank(&code) as usize;
        if seen[code_rank] {
            return Some(Counterexample::DuplicateCode {
                rank,
                element: sigma,
                code,
            });
        }
        seen[code_rank] = true;
    }
    None
}
