//! Codes (subexceedant sequences), code statistics, and the coding
//! bijections between `S_n` and codes of length `n`.
//!
//! A [`Code`] is a sequence `c(1), ..., c(n)` with `0 <= c(i) < i`; there
//! are `n!` of them. Two bijections are provided:
//!
//! - [`inv_encode`] / [`inv_decode`]: `c(i)` counts the values below `i`
//!   placed after `i`; the entry sum equals the inversion number.
//! - [`maj_encode`] / [`maj_decode`]: `c(i)` is the increment of `majhat_k`
//!   along the chain of `cut`s; the entry sum equals `majhat_k` and the
//!   `st_k` code statistic reads off `des_k` (and, with the parameter
//!   shifted by one, `destilde_{k+1}`).
//!
//! The decoding side is driven by [`InsertProfile`]: inserting the value
//! `1` into `sigma` at the `j`-th position of the profile sequence raises
//! `majhat_k` by exactly `j`, so a code picks out a unique insertion chain.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::stats;

/// Error raised when constructing or parsing a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// The text form was not a parenthesized comma-separated integer list.
    Malformed(String),
    /// The code had no entries.
    Empty,
    /// An entry broke the bound `0 <= c(i) < i` (1-indexed `i`).
    EntryOutOfRange { index: usize, value: usize },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::Malformed(s) => write!(f, "cannot read {s:?} as a code"),
            CodeError::Empty => write!(f, "code must have at least one entry"),
            CodeError::EntryOutOfRange { index, value } => {
                write!(f, "entry c({index}) = {value} violates 0 <= c(i) < i")
            }
        }
    }
}

impl core::error::Error for CodeError {}

/// A code: integers `c(1), ..., c(n)` with `0 <= c(i) < i`.
///
/// The text form is `"(0,1,2)"`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    entries: Vec<usize>,
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code{self}")
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl core::str::FromStr for Code {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        Code::parse(s)
    }
}

impl Code {
    /// Builds a code, checking `0 <= c(i) < i` for every 1-indexed entry.
    pub fn from_entries(entries: Vec<usize>) -> Result<Self, CodeError> {
        if entries.is_empty() {
            return Err(CodeError::Empty);
        }
        for (idx, &e) in entries.iter().enumerate() {
            if e > idx {
                return Err(CodeError::EntryOutOfRange {
                    index: idx + 1,
                    value: e,
                });
            }
        }
        Ok(Code { entries })
    }

    /// Reads the `"(0,1,2)"` text form. Bound violations are reported as
    /// [`CodeError::EntryOutOfRange`], distinct from malformed text.
    pub fn parse(s: &str) -> Result<Self, CodeError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| CodeError::Malformed(String::from(s)))?;
        if inner.trim().is_empty() {
            return Err(CodeError::Empty);
        }
        let entries = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| CodeError::Malformed(String::from(s)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Code::from_entries(entries)
    }

    /// The length `n`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry `c(i)`, 1-indexed.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// Entries as a slice, `as_slice()[i]` being `c(i + 1)`.
    pub fn as_slice(&self) -> &[usize] {
        &self.entries
    }
}

/// Sum of the entries. Its distribution over all codes of length `n` is
/// Mahonian.
pub fn code_sum(c: &Code) -> usize {
    c.as_slice().iter().sum()
}

/// The `st_k` code statistic: starting from 0 on the length-1 prefix, the
/// value increments at step `i` exactly when `c(i)` exceeds the running
/// value plus `k - 1`.
pub fn st_k(c: &Code, k: usize) -> usize {
    assert!(k >= 1);
    let mut value = 0;
    for &e in &c.as_slice()[1..] {
        if e > value + k - 1 {
            value += 1;
        }
    }
    value
}

/// Encodes a permutation by counting, for each value `i`, the smaller
/// values placed after it: `c(i) = #{ j : j > sigma^{-1}(i), sigma(j) < i }`.
/// The entry sum is the inversion number.
pub fn inv_encode(sigma: &Permutation) -> Code {
    let n = sigma.n();
    let inv = sigma.inverse();
    let mut entries = Vec::with_capacity(n);
    for i in 1..=n {
        let pos = inv.at(i);
        let count = (pos + 1..=n).filter(|&j| sigma.at(j) < i).count();
        entries.push(count);
    }
    Code::from_entries(entries).expect("inversion counts satisfy the code bound")
}

/// Inverse of [`inv_encode`]: starting from the single-entry permutation,
/// value `i` is inserted at the `c(i)`-th spot from the end (0th = end).
pub fn inv_decode(c: &Code) -> Permutation {
    let n = c.len();
    let mut values = Vec::with_capacity(n);
    values.push(1usize);
    for i in 2..=n {
        let from_end = c.at(i);
        values.insert(i - 1 - from_end, i);
    }
    Permutation::from_values(values).expect("insertion yields a permutation")
}

/// The insertion profile of a permutation `sigma` of size `n - 1` for a
/// given `k`: the set of positions in `{1, ..., n}` at which inserting the
/// value `1` leaves the descent-type statistic unchanged, together with the
/// sequence `a_0, ..., a_{n-1}` listing the set in decreasing order followed
/// by its complement in increasing order.
///
/// By construction, inserting at `position_for_delta(j)` raises `majhat_k`
/// by exactly `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertProfile {
    a_set: Vec<usize>,
    sequence: Vec<usize>,
}

impl InsertProfile {
    fn from_set(a_set: Vec<usize>, n: usize) -> InsertProfile {
        let mut sequence = Vec::with_capacity(n);
        sequence.extend(a_set.iter().rev());
        sequence.extend((1..=n).filter(|i| !a_set.contains(i)));
        InsertProfile { a_set, sequence }
    }

    /// Members of the set, ascending.
    pub fn a_set(&self) -> &[usize] {
        &self.a_set
    }

    /// The full sequence `a_0, ..., a_{n-1}`.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Whether position `i` is in the set.
    pub fn contains(&self, i: usize) -> bool {
        self.a_set.binary_search(&i).is_ok()
    }

    /// The insertion position whose `majhat_k` increment is `j`.
    pub fn position_for_delta(&self, j: usize) -> usize {
        self.sequence[j]
    }
}

/// The set `A_k(sigma)` for `sigma` of size `n - 1`, over insertion
/// positions `{1, ..., n}`: position 1, every `i` whose left neighbor value
/// is below `k`, and every `i <= n - 1` sitting just after a `k`-descent.
/// Inserting `1` at a member leaves `des_k` unchanged; anywhere else it
/// gains one `k`-descent. `|A_k| = des_k(sigma) + k` once `n - 1 >= k`.
pub fn a_profile(sigma: &Permutation, k: usize) -> InsertProfile {
    assert!(k >= 1);
    let m = sigma.n();
    let n = m + 1;
    let mut a_set = Vec::new();
    a_set.push(1);
    for i in 2..=n {
        let after_k_descent = i <= m && sigma.at(i - 1) >= sigma.at(i) + k;
        if after_k_descent || sigma.at(i - 1) < k {
            a_set.push(i);
        }
    }
    InsertProfile::from_set(a_set, n)
}

/// The adjusted set for `destilde_{k+1}`: this is `A_{k+1}(sigma)` with the
/// position 1 removed exactly when the first entry of `sigma` (of size `m`)
/// exceeds `m - k`, i.e. when `destilde_{k+1}(sigma)` carries no adjustment.
/// Members are the positions at which inserting `1` leaves `destilde_{k+1}`
/// unchanged, and `|A~_{k+1}| = destilde_{k+1}(sigma) + k` once `m >= k`.
pub fn a_tilde_profile(sigma: &Permutation, k_plus_1: usize) -> InsertProfile {
    assert!(k_plus_1 >= 1);
    let m = sigma.n();
    let k = k_plus_1 - 1;
    let profile = a_profile(sigma, k_plus_1);
    let drop_one = sigma.at(1) + k > m;
    if drop_one {
        let a_set = profile.a_set[1..].to_vec();
        InsertProfile::from_set(a_set, m + 1)
    } else {
        profile
    }
}

/// The increment `majhat_k(insert_i(sigma)) - majhat_k(sigma)` in closed
/// form: the number of profile members above `i`, plus `i - 1` when `i` is
/// not itself a member.
pub fn insert_delta(sigma: &Permutation, i: usize, k: usize) -> usize {
    let profile = a_profile(sigma, k);
    let above = profile.a_set().iter().filter(|&&a| a > i).count();
    if profile.contains(i) {
        above
    } else {
        above + i - 1
    }
}

/// Encodes a permutation through its chain of cuts: `c(i)` is the
/// `majhat_k` increment from the size-`(i-1)` link to the size-`i` link.
/// The entry sum is `majhat_k(sigma)`; `st_k` of the result is
/// `des_k(sigma)`, and encoding with `k + 1` makes `st_k` read off
/// `destilde_{k+1}(sigma)`.
pub fn maj_encode(sigma: &Permutation, k: usize) -> Code {
    assert!(k >= 1);
    let n = sigma.n();
    let mut chain_stat = Vec::with_capacity(n);
    let mut current = sigma.clone();
    loop {
        chain_stat.push(stats::majhat_k(&current, k));
        if current.n() == 1 {
            break;
        }
        current = current.cut().expect("chain links have size >= 2");
    }
    chain_stat.reverse();
    let mut entries = Vec::with_capacity(n);
    entries.push(0);
    for i in 1..n {
        let delta = chain_stat[i]
            .checked_sub(chain_stat[i - 1])
            .expect("majhat_k never drops along the insertion chain");
        entries.push(delta);
    }
    Code::from_entries(entries).expect("majhat_k increments satisfy the code bound")
}

/// Inverse of [`maj_encode`]: replays the insertion chain, placing `1` at
/// the profile position whose `majhat_k` increment matches each entry.
pub fn maj_decode(c: &Code, k: usize) -> Permutation {
    assert!(k >= 1);
    let n = c.len();
    let mut current = Permutation::identity(1);
    for i in 2..=n {
        let profile = a_profile(&current, k);
        let position = profile.position_for_delta(c.at(i));
        current = current.insert(position).expect("profile positions are in range");
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn c(entries: &[usize]) -> Code {
        Code::from_entries(entries.to_vec()).unwrap()
    }

    #[test]
    fn code_construction_bounds() {
        assert!(Code::from_entries(vec![0, 1, 2]).is_ok());
        assert_eq!(
            Code::from_entries(vec![0, 2]).unwrap_err(),
            CodeError::EntryOutOfRange { index: 2, value: 2 }
        );
        assert_eq!(
            Code::from_entries(vec![1]).unwrap_err(),
            CodeError::EntryOutOfRange { index: 1, value: 1 }
        );
        assert_eq!(Code::from_entries(vec![]).unwrap_err(), CodeError::Empty);
    }

    #[test]
    fn code_text_form() {
        assert_eq!(Code::parse("(0,1,2)").unwrap(), c(&[0, 1, 2]));
        assert_eq!(Code::parse(" ( 0 , 1 , 0 ) ").unwrap(), c(&[0, 1, 0]));
        assert_eq!(c(&[0, 1, 2]).to_string(), "(0,1,2)");
        assert!(matches!(
            Code::parse("0,1,2").unwrap_err(),
            CodeError::Malformed(_)
        ));
        assert!(matches!(
            Code::parse("(0,x)").unwrap_err(),
            CodeError::Malformed(_)
        ));
        assert!(matches!(
            Code::parse("(0,5,0)").unwrap_err(),
            CodeError::EntryOutOfRange { index: 2, value: 5 }
        ));
    }

    #[test]
    fn code_sum_examples() {
        assert_eq!(code_sum(&c(&[0, 1, 2])), 3);
        assert_eq!(code_sum(&c(&[0, 0, 0])), 0);
        assert_eq!(code_sum(&c(&[0, 1, 2, 3, 4])), 10);
    }

    #[test]
    fn st_k_examples() {
        assert_eq!(st_k(&c(&[0, 1, 2]), 1), 2);
        assert_eq!(st_k(&c(&[0, 0, 2, 3]), 2), 2);
        assert_eq!(st_k(&c(&[0]), 1), 0);
        // k at least the length forces zero: entries c(i) <= i-1 < k
        for k in 3..6 {
            assert_eq!(st_k(&c(&[0, 1, 2]), k), 0);
        }
    }

    #[test]
    fn inv_encode_examples() {
        assert_eq!(inv_encode(&p("2 3 1")), c(&[0, 1, 1]));
        assert_eq!(inv_encode(&p("1 2 3")), c(&[0, 0, 0]));
        assert_eq!(inv_encode(&p("4 3 2 1")), c(&[0, 1, 2, 3]));
    }

    #[test]
    fn inv_decode_examples() {
        assert_eq!(inv_decode(&c(&[0, 0, 0])), p("1 2 3"));
        assert_eq!(inv_decode(&c(&[0, 1, 1])), p("2 3 1"));
        // the worked insertion step: 4 1 2 3 with c(5) = 3 gives 4 5 1 2 3
        assert_eq!(inv_encode(&p("4 1 2 3")), c(&[0, 0, 0, 3]));
        assert_eq!(inv_decode(&c(&[0, 0, 0, 3, 3])), p("4 5 1 2 3"));
        assert_eq!(inv_encode(&inv_decode(&c(&[0, 0, 0, 3, 3]))), c(&[0, 0, 0, 3, 3]));
    }

    #[test]
    fn a_profile_worked_example() {
        let profile = a_profile(&p("5 2 1 3 4"), 2);
        assert_eq!(profile.a_set(), &[1, 2, 4]);
        assert_eq!(profile.sequence(), &[4, 2, 1, 3, 5, 6]);
        assert!(profile.contains(2));
        assert!(!profile.contains(3));
    }

    #[test]
    fn a_profile_small_cases() {
        let profile = a_profile(&p("1"), 1);
        assert_eq!(profile.a_set(), &[1]);
        assert_eq!(profile.sequence(), &[1, 2]);
        // large k admits every position
        let profile = a_profile(&p("1 2 3"), 5);
        assert_eq!(profile.a_set(), &[1, 2, 3, 4]);
    }

    #[test]
    fn a_tilde_profile_cases() {
        // first entry above m - k: position 1 drops out
        let tilde = a_tilde_profile(&p("5 2 1 3 4"), 3);
        let plain = a_profile(&p("5 2 1 3 4"), 3);
        assert_eq!(plain.a_set(), &[1, 2, 3, 4]);
        assert_eq!(tilde.a_set(), &[2, 3, 4]);
        assert_eq!(tilde.a_set().len(), stats::destilde_k(&p("5 2 1 3 4"), 3) + 2);
        // small first entry: the set is untouched
        let sigma = p("1 2 3 4 5");
        let tilde = a_tilde_profile(&sigma, 3);
        assert_eq!(tilde.a_set(), a_profile(&sigma, 3).a_set());
        assert_eq!(tilde.a_set().len(), stats::destilde_k(&sigma, 3) + 2);
    }

    #[test]
    fn insert_delta_matches_direct_differencing() {
        for s in ["5 2 1 3 4", "1", "2 1", "3 1 2", "1 4 2 3"] {
            let sigma = p(s);
            for k in 1..=4 {
                for i in 1..=sigma.n() + 1 {
                    let direct = stats::majhat_k(&sigma.insert(i).unwrap(), k)
                        - stats::majhat_k(&sigma, k);
                    assert_eq!(
                        insert_delta(&sigma, i, k),
                        direct,
                        "sigma={s} i={i} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn insert_delta_hits_each_value_once() {
        let sigma = p("5 2 1 3 4");
        for k in 1..=3 {
            let mut deltas: Vec<usize> = (1..=6).map(|i| insert_delta(&sigma, i, k)).collect();
            deltas.sort_unstable();
            assert_eq!(deltas, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn maj_encode_examples() {
        assert_eq!(maj_encode(&p("3 2 1"), 1), c(&[0, 1, 2]));
        assert_eq!(maj_encode(&p("3 2 1"), 2), c(&[0, 0, 0]));
        assert_eq!(maj_encode(&p("1 2 3 4"), 1), c(&[0, 0, 0, 0]));
        // for k >= 2 the identity has close pairs, so its code is not zero:
        // majhat_3 of the prefixes 1, 12, 123, 1234 is 0, 1, 3, 5
        assert_eq!(maj_encode(&p("1 2 3 4"), 3), c(&[0, 1, 2, 2]));
    }

    #[test]
    fn maj_decode_examples() {
        assert_eq!(maj_decode(&c(&[0, 1, 2]), 1), p("3 2 1"));
        assert_eq!(maj_decode(&c(&[0, 0, 0]), 1), p("1 2 3"));
        // the all-zero code decodes to the identity only at k = 1; at
        // k = 2 a zero increment means inserting 1 right after each
        // running maximum, giving the reversal
        assert_eq!(maj_decode(&c(&[0, 0, 0, 0]), 2), p("4 3 2 1"));
        assert_eq!(maj_encode(&p("4 3 2 1"), 2), c(&[0, 0, 0, 0]));
    }

    #[test]
    fn maj_round_trip_exhaustive_small() {
        // every code of length 4, every k in 1..=3
        for k in 1..=3 {
            for c2 in 0..2 {
                for c3 in 0..3 {
                    for c4 in 0..4 {
                        let code = c(&[0, c2, c3, c4]);
                        let sigma = maj_decode(&code, k);
                        assert_eq!(maj_encode(&sigma, k), code, "k={k}");
                    }
                }
            }
        }
    }
}
