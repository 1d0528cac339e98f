//! Permutations in one-line notation and their structural transformations.
//!
//! A [`Permutation`] is a bijection on `{1, ..., n}`. Positions and values
//! are 1-indexed everywhere in the public interface. Besides the basic
//! rearrangements (inverse, flip, prime, cut, insert) this module carries
//! the two cycle-notation bijections:
//!
//! - [`Permutation::cycle0`] writes the inverse in standard cycle notation
//!   and erases the parentheses; it sends exceedances to descents.
//! - [`Permutation::cycle_neg1`] decomposes the graph with an edge
//!   `sigma(i) -> i-1` on vertices `{0, ..., n}` into cycles plus a path
//!   from `n` to `0`, then erases the parentheses; it sends `exc_k` to
//!   `bdestilde_{k+1}` and unexceedances to ascents.
//!
//! Both maps are inverted by splitting at left-to-right maxima.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Error raised when constructing or transforming a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// The input described a zero-length permutation.
    Empty,
    /// A token in the text form could not be read as a positive integer.
    BadToken(String),
    /// A value fell outside `1..=n`.
    ValueOutOfRange { value: usize, n: usize },
    /// A value occurred more than once.
    DuplicateValue { value: usize },
    /// `cut` was applied to a single-entry permutation.
    CutOfSingleton,
    /// An insertion position fell outside `1..=n+1`.
    PositionOutOfRange { position: usize, max: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::Empty => write!(f, "permutation must have at least one entry"),
            PermError::BadToken(tok) => write!(f, "cannot read token {tok:?} as a value"),
            PermError::ValueOutOfRange { value, n } => {
                write!(f, "value {value} out of range 1..={n}")
            }
            PermError::DuplicateValue { value } => write!(f, "value {value} appears twice"),
            PermError::CutOfSingleton => {
                write!(f, "cut requires at least two entries")
            }
            PermError::PositionOutOfRange { position, max } => {
                write!(f, "insertion position {position} out of range 1..={max}")
            }
        }
    }
}

impl core::error::Error for PermError {}

/// A permutation of `{1, ..., n}` in one-line notation, `n >= 1`.
///
/// `at(i)` is the image of position `i`; both run over `1..=n`.
///
/// ```
/// use permstat_core::Permutation;
///
/// let sigma: Permutation = "3 1 4 2".parse().unwrap();
/// assert_eq!(sigma.at(1), 3);
/// assert_eq!(sigma.inverse().to_string(), "2 4 1 3");
/// ```
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.values.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        Permutation::parse(s)
    }
}

impl Permutation {
    /// Builds a permutation from one-line values, checking that they are a
    /// rearrangement of `{1, ..., n}` with `n >= 1`.
    pub fn from_values(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = alloc::vec![false; n + 1];
        for &v in &values {
            if v < 1 || v > n {
                return Err(PermError::ValueOutOfRange { value: v, n });
            }
            if seen[v] {
                return Err(PermError::DuplicateValue { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `1 2 ... n`.
    ///
    /// Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation size must be at least 1");
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Reads the spaced text form (`"3 1 4 2"`). A compact digit string
    /// (`"3142"`) is also accepted; it can only describe `n <= 9`.
    pub fn parse(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Empty);
        }
        if s.contains(char::is_whitespace) {
            let values = s
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| PermError::BadToken(String::from(tok)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Permutation::from_values(values);
        }
        if s.len() >= 2 && s.bytes().all(|b| b.is_ascii_digit()) {
            let values = s.bytes().map(|b| (b - b'0') as usize).collect();
            return Permutation::from_values(values);
        }
        let v = s
            .parse::<usize>()
            .map_err(|_| PermError::BadToken(String::from(s)))?;
        Permutation::from_values(alloc::vec![v])
    }

    /// The size `n`.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// The image of position `i`, 1-indexed. Panics if `i` is out of range.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// One-line values as a slice, `as_slice()[i]` being the image of `i + 1`.
    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    /// The inverse permutation: `inverse().at(self.at(i)) == i`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0usize; self.n()];
        for (idx, &v) in self.values.iter().enumerate() {
            inv[v - 1] = idx + 1;
        }
        Permutation { values: inv }
    }

    /// The reverse-complement involution `i -> n+1 - sigma(n+1-i)`.
    pub fn flip(&self) -> Permutation {
        let n = self.n();
        let values = (1..=n).map(|i| n + 1 - self.at(n + 1 - i)).collect();
        Permutation { values }
    }

    /// The map `i -> n+1 - sigma^{-1}(i)` (inverse followed by value
    /// complement). Conjugates `cover` into `destilde_2`.
    pub fn prime(&self) -> Permutation {
        let n = self.n();
        let inv = self.inverse();
        let values = (1..=n).map(|i| n + 1 - inv.at(i)).collect();
        Permutation { values }
    }

    /// Deletes the entry `1` and decrements every remaining entry, producing
    /// a permutation of size `n - 1`. Fails on `n = 1`.
    pub fn cut(&self) -> Result<Permutation, PermError> {
        if self.n() < 2 {
            return Err(PermError::CutOfSingleton);
        }
        let values = self
            .values
            .iter()
            .filter(|&&v| v != 1)
            .map(|&v| v - 1)
            .collect();
        Ok(Permutation { values })
    }

    /// Increments every entry and places the value `1` at position `i`, so
    /// that `insert(i).at(i) == 1` and `insert(i).cut()` recovers `self`.
    /// Valid positions are `1..=n+1`; position `n + 1` appends.
    pub fn insert(&self, i: usize) -> Result<Permutation, PermError> {
        let n = self.n();
        if i < 1 || i > n + 1 {
            return Err(PermError::PositionOutOfRange {
                position: i,
                max: n + 1,
            });
        }
        let mut values = Vec::with_capacity(n + 1);
        values.extend(self.values[..i - 1].iter().map(|&v| v + 1));
        values.push(1);
        values.extend(self.values[i - 1..].iter().map(|&v| v + 1));
        Ok(Permutation { values })
    }

    /// Positions of the left-to-right maxima (entries larger than every
    /// entry before them), 1-indexed and ascending. Position 1 is always one.
    fn left_to_right_maxima(&self) -> Vec<usize> {
        let mut maxima = Vec::new();
        let mut best = 0;
        for (idx, &v) in self.values.iter().enumerate() {
            if v > best {
                maxima.push(idx + 1);
                best = v;
            }
        }
        maxima
    }

    /// Standard cycle notation: each cycle is written starting from its
    /// maximum, reading forward along `sigma`, and cycles are ordered by
    /// ascending first element.
    pub fn standard_cycle_notation(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = alloc::vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut max = start;
            let mut v = self.at(start);
            while v != start {
                if v > max {
                    max = v;
                }
                v = self.at(v);
            }
            let mut cycle = Vec::new();
            let mut v = max;
            loop {
                seen[v] = true;
                cycle.push(v);
                v = self.at(v);
                if v == max {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c[0]);
        cycles
    }

    /// The parenthesis-erasing (Foata) bijection: write the standard cycle
    /// notation of the inverse and concatenate the cycles. Sends `exc` to
    /// `des`.
    pub fn cycle0(&self) -> Permutation {
        let values = self
            .inverse()
            .standard_cycle_notation()
            .into_iter()
            .flatten()
            .collect();
        Permutation { values }
    }

    /// Inverse of [`Permutation::cycle0`]: split before each left-to-right
    /// maximum, read the pieces as cycles of the inverse, and invert.
    pub fn cycle0_inverse(&self) -> Permutation {
        let n = self.n();
        let mut sigma = alloc::vec![0usize; n];
        for piece in self.split_at_lr_maxima() {
            // piece is a cycle of sigma^{-1}: inverting turns each link
            // u -> w into sigma(w) = u.
            for pair in piece.windows(2) {
                sigma[pair[1] - 1] = pair[0];
            }
            sigma[piece[0] - 1] = piece[piece.len() - 1];
        }
        Permutation { values: sigma }
    }

    fn split_at_lr_maxima(&self) -> Vec<&[usize]> {
        let maxima = self.left_to_right_maxima();
        let mut pieces = Vec::with_capacity(maxima.len());
        for (idx, &start) in maxima.iter().enumerate() {
            let end = if idx + 1 < maxima.len() {
                maxima[idx + 1] - 1
            } else {
                self.n()
            };
            pieces.push(&self.values[start - 1..end]);
        }
        pieces
    }

    /// Decomposes the functional graph on `{0, ..., n}` with an edge
    /// `sigma(i) -> i - 1` for every position `i` into its cycles and the
    /// unique path from `n` to `0`, in standard cycle-path order.
    pub fn cycle_path_notation(&self) -> CyclePathNotation {
        let n = self.n();
        let inv = self.inverse();
        // successor of vertex v >= 1 along the edge sigma(i) -> i-1
        let next = |v: usize| inv.at(v) - 1;
        let mut on_path = alloc::vec![false; n + 1];
        let mut path = Vec::new();
        let mut v = n;
        loop {
            on_path[v] = true;
            path.push(v);
            if v == 0 {
                break;
            }
            v = next(v);
        }
        let mut seen = alloc::vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..n {
            if seen[start] || on_path[start] {
                continue;
            }
            let mut max = start;
            let mut v = next(start);
            while v != start {
                if v > max {
                    max = v;
                }
                v = next(v);
            }
            let mut cycle = Vec::new();
            let mut v = max;
            loop {
                seen[v] = true;
                cycle.push(v);
                v = next(v);
                if v == max {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c[0]);
        CyclePathNotation { cycles, path }
    }

    /// The graph bijection of the cycle-path decomposition: concatenate the
    /// standard cycle-path notation and drop the trailing `0`. Sends
    /// `exc_k` to `bdestilde_{k+1}` and `unexc` to `asc`.
    pub fn cycle_neg1(&self) -> Permutation {
        let notation = self.cycle_path_notation();
        let mut values: Vec<usize> = notation.cycles.into_iter().flatten().collect();
        values.extend_from_slice(&notation.path[..notation.path.len() - 1]);
        Permutation { values }
    }

    /// Inverse of [`Permutation::cycle_neg1`]: split before each
    /// left-to-right maximum; the final piece (led by `n`) extended by `0`
    /// is the path, earlier pieces are cycles; rebuild from the edges.
    pub fn cycle_neg1_inverse(&self) -> Permutation {
        let n = self.n();
        let mut sigma = alloc::vec![0usize; n];
        // Each edge u -> w of the graph means sigma(w + 1) = u.
        let mut add_edge = |u: usize, w: usize| sigma[w] = u;
        let pieces = self.split_at_lr_maxima();
        let (path_piece, cycle_pieces) = pieces.split_last().expect("n >= 1");
        for piece in cycle_pieces {
            for pair in piece.windows(2) {
                add_edge(pair[0], pair[1]);
            }
            add_edge(piece[piece.len() - 1], piece[0]);
        }
        for pair in path_piece.windows(2) {
            add_edge(pair[0], pair[1]);
        }
        add_edge(path_piece[path_piece.len() - 1], 0);
        Permutation { values: sigma }
    }
}

/// The standard cycle-path notation produced by
/// [`Permutation::cycle_path_notation`]: the cycles of the edge graph plus
/// the path from `n` down to `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePathNotation {
    /// Cycles, each led by its maximum, ordered by ascending leader.
    pub cycles: Vec<Vec<usize>>,
    /// The path; its first element is `n` and its last is `0`.
    pub path: Vec<usize>,
}

impl CyclePathNotation {
    /// Checks the structural invariants: the cycles and path partition
    /// `{0, ..., n}`, each cycle leads with its maximum, leaders strictly
    /// increase and stay below the path's first element `n`, and the path
    /// runs from `n` to `0`.
    pub fn is_well_formed(&self) -> bool {
        if self.path.is_empty() {
            return false;
        }
        let n = self.path[0];
        if *self.path.last().unwrap() != 0 {
            return false;
        }
        let mut seen = alloc::vec![false; n + 1];
        let mut total = 0usize;
        for v in self.cycles.iter().flatten().chain(self.path.iter()) {
            if *v > n || seen[*v] {
                return false;
            }
            seen[*v] = true;
            total += 1;
        }
        if total != n + 1 {
            return false;
        }
        let mut prev_leader = 0;
        for (idx, cycle) in self.cycles.iter().enumerate() {
            let leader = cycle[0];
            if cycle.iter().any(|&v| v > leader) {
                return false;
            }
            if leader >= n || (idx > 0 && leader <= prev_leader) {
                return false;
            }
            prev_leader = leader;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn construction_rejects_bad_values() {
        assert_eq!(
            Permutation::from_values(vec![]).unwrap_err(),
            PermError::Empty
        );
        assert_eq!(
            Permutation::from_values(vec![1, 3]).unwrap_err(),
            PermError::ValueOutOfRange { value: 3, n: 2 }
        );
        assert_eq!(
            Permutation::from_values(vec![2, 2, 1]).unwrap_err(),
            PermError::DuplicateValue { value: 2 }
        );
    }

    #[test]
    fn parse_spaced_and_compact() {
        assert_eq!(p("3 1 4 2").as_slice(), &[3, 1, 4, 2]);
        assert_eq!(p("3142").as_slice(), &[3, 1, 4, 2]);
        assert_eq!(p("  2   1 ").as_slice(), &[2, 1]);
        assert_eq!(p("1").as_slice(), &[1]);
        assert!(matches!(
            Permutation::parse("3 x 1").unwrap_err(),
            PermError::BadToken(_)
        ));
        assert!(Permutation::parse("").is_err());
        // compact form digit 0 is not a value
        assert!(Permutation::parse("120").is_err());
    }

    #[test]
    fn display_uses_spaced_form() {
        assert_eq!(p("3142").to_string(), "3 1 4 2");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("3 1 4 2").inverse(), p("2 4 1 3"));
        assert_eq!(p("1 2 3").inverse(), p("1 2 3"));
        assert_eq!(p("2 1").inverse(), p("2 1"));
        // composition with the inverse is the identity
        let sigma = p("3 1 4 2");
        let inv = sigma.inverse();
        for i in 1..=4 {
            assert_eq!(inv.at(sigma.at(i)), i);
        }
    }

    #[test]
    fn flip_examples() {
        assert_eq!(p("5 3 2 8 1 4 6 9 7").flip(), p("3 1 4 6 9 2 8 7 5"));
        assert_eq!(p("1").flip(), p("1"));
        assert_eq!(p("2 1").flip(), p("2 1"));
    }

    #[test]
    fn prime_examples() {
        assert_eq!(p("3 1 4 2").prime(), p("3 1 4 2"));
        assert_eq!(p("1 2 3 4").prime(), p("4 3 2 1"));
        assert_eq!(p("2 4 3 1").prime(), p("1 4 2 3"));
    }

    #[test]
    fn cut_examples() {
        assert_eq!(p("4 1 5 2 3").cut().unwrap(), p("3 4 1 2"));
        assert_eq!(p("1 2").cut().unwrap(), p("1"));
        assert_eq!(p("2 1").cut().unwrap(), p("1"));
        assert_eq!(p("1").cut().unwrap_err(), PermError::CutOfSingleton);
    }

    #[test]
    fn insert_examples() {
        assert_eq!(p("3 4 1 2").insert(2).unwrap(), p("4 1 5 2 3"));
        assert_eq!(p("1").insert(1).unwrap(), p("1 2"));
        assert_eq!(p("1").insert(2).unwrap(), p("2 1"));
        assert!(p("1").insert(3).is_err());
        assert!(p("1").insert(0).is_err());
    }

    #[test]
    fn standard_cycle_notation_example() {
        assert_eq!(
            p("4 5 6 1 2 7 8 3").standard_cycle_notation(),
            vec![vec![4, 1], vec![5, 2], vec![8, 3, 6, 7]]
        );
        assert_eq!(
            p("1 2 3").standard_cycle_notation(),
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(p("2 1").standard_cycle_notation(), vec![vec![2, 1]]);
    }

    #[test]
    fn cycle0_examples() {
        assert_eq!(p("3 4 1 5 2").cycle0(), p("3 1 5 4 2"));
        assert_eq!(p("1 2 3 4").cycle0(), p("1 2 3 4"));
        assert_eq!(p("2 4 3 1 5").cycle0(), p("3 4 2 1 5"));
    }

    #[test]
    fn cycle0_inverse_examples() {
        assert_eq!(p("3 4 2 1 5").cycle0_inverse(), p("2 4 3 1 5"));
        assert_eq!(p("1 2 3").cycle0_inverse(), p("1 2 3"));
        assert_eq!(p("3 1 5 4 2").cycle0_inverse(), p("3 4 1 5 2"));
    }

    #[test]
    fn cycle_neg1_worked_example() {
        let sigma = p("7 8 3 5 1 2 4 9 6");
        let notation = sigma.cycle_path_notation();
        assert_eq!(notation.cycles, vec![vec![5, 3, 2], vec![8, 1, 4, 6]]);
        assert_eq!(notation.path, vec![9, 7, 0]);
        assert!(notation.is_well_formed());
        assert_eq!(sigma.cycle_neg1(), p("5 3 2 8 1 4 6 9 7"));
    }

    #[test]
    fn cycle_neg1_small_cases() {
        assert_eq!(p("1 2 3 4").cycle_neg1(), p("4 3 2 1"));
        assert_eq!(p("2 1").cycle_neg1(), p("1 2"));
        assert_eq!(p("1").cycle_neg1(), p("1"));
    }

    #[test]
    fn cycle_neg1_inverse_examples() {
        assert_eq!(p("5 3 2 8 1 4 6 9 7").cycle_neg1_inverse(), p("7 8 3 5 1 2 4 9 6"));
        assert_eq!(p("4 3 2 1").cycle_neg1_inverse(), p("1 2 3 4"));
        assert_eq!(p("1 2").cycle_neg1_inverse(), p("2 1"));
    }
}
