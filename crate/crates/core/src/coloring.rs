//! Balanced red/blue colorings of `K_{2n,2n}` and the values built on top of them.
//!
//! Vertices are indexed from 0 internally. Everything that is printed or parsed
//! (see [`crate::io`]) uses 1-based indices, so `x_1` is row 0 here.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color matrix is empty")]
    Empty,
    #[error("color matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("color matrix side {0} is odd")]
    OddSize(usize),
    /// Row index is 1-based in the message and 0-based in the payload.
    #[error("row {} has {red} red entries, expected {expected}", .row + 1)]
    UnbalancedRow { row: usize, red: usize, expected: usize },
    #[error("column {} has {red} red entries, expected {expected}", .column + 1)]
    UnbalancedColumn { column: usize, red: usize, expected: usize },
}

/// A red/blue coloring of `K_{2n,2n}` where every vertex meets exactly `n` red
/// and `n` blue edges. Entry `(i, j)` is the color of the edge `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BalancedColoring {
    n: usize,
    colors: Vec<Color>,
}

/// Checks the balance invariant and wraps the matrix.
pub fn validate_coloring(raw: Vec<Vec<Color>>) -> Result<BalancedColoring, ColoringError> {
    let side = raw.len();
    if side == 0 {
        return Err(ColoringError::Empty);
    }
    for (row, r) in raw.iter().enumerate() {
        if r.len() != side {
            return Err(ColoringError::NotSquare { row, len: r.len(), expected: side });
        }
    }
    if !side.is_multiple_of(2) {
        return Err(ColoringError::OddSize(side));
    }
    let n = side / 2;
    for (row, r) in raw.iter().enumerate() {
        let red = r.iter().filter(|&&c| c == Color::Red).count();
        if red != n {
            return Err(ColoringError::UnbalancedRow { row, red, expected: n });
        }
    }
    for column in 0..side {
        let red = raw.iter().filter(|r| r[column] == Color::Red).count();
        if red != n {
            return Err(ColoringError::UnbalancedColumn { column, red, expected: n });
        }
    }
    Ok(BalancedColoring { n, colors: raw.into_iter().flatten().collect() })
}

impl BalancedColoring {
    /// Builds a coloring from rows over the alphabet `{R, B}`. Mostly useful in tests.
    ///
    /// Panics on characters other than `R` and `B`; balance errors are returned.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<BalancedColoring, ColoringError> {
        let raw = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|ch| Color::from_char(ch).unwrap_or_else(|| panic!("bad color {ch:?}")))
                    .collect()
            })
            .collect();
        validate_coloring(raw)
    }

    /// Builds a coloring from a per-edge rule, validating the result.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Color,
    ) -> Result<BalancedColoring, ColoringError> {
        let side = 2 * n;
        let raw = (0..side).map(|i| (0..side).map(|j| f(i, j)).collect()).collect();
        validate_coloring(raw)
    }

    /// Half-degree: each vertex has `n` red and `n` blue edges.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices on each side, `2n`.
    pub fn side(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn color(&self, left: usize, right: usize) -> Color {
        self.colors[left * self.side() + right]
    }

    #[inline]
    pub fn is_red(&self, left: usize, right: usize) -> bool {
        self.color(left, right) == Color::Red
    }

    #[inline]
    pub fn is_blue(&self, left: usize, right: usize) -> bool {
        self.color(left, right) == Color::Blue
    }

    pub fn row(&self, left: usize) -> &[Color] {
        let side = self.side();
        &self.colors[left * side..(left + 1) * side]
    }

    /// The same graph with red and blue exchanged. Balance is preserved.
    pub fn swapped(&self) -> BalancedColoring {
        BalancedColoring {
            n: self.n,
            colors: self.colors.iter().map(|c| c.flipped()).collect(),
        }
    }

    /// Rows as `R`/`B` strings.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.side())
            .map(|i| self.row(i).iter().map(|c| c.as_char()).collect())
            .collect()
    }

    pub(crate) fn to_raw(&self) -> Vec<Vec<Color>> {
        (0..self.side()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Flips the four entries of an alternating rectangle in place.
    /// Returns false (and leaves the matrix untouched) if the minor is not alternating.
    pub(crate) fn flip_rectangle(&mut self, i: usize, i2: usize, j: usize, j2: usize) -> bool {
        let a = self.color(i, j);
        if a != self.color(i2, j2) || a == self.color(i, j2) || self.color(i, j2) != self.color(i2, j) {
            return false;
        }
        let side = self.side();
        for (r, c) in [(i, j), (i, j2), (i2, j), (i2, j2)] {
            let e = &mut self.colors[r * side + c];
            *e = e.flipped();
        }
        true
    }

    /// Applies row and column relabelings: new row `i` is old row `rows[i]`.
    pub(crate) fn permuted(&self, rows: &[usize], cols: &[usize]) -> BalancedColoring {
        let side = self.side();
        let mut colors = Vec::with_capacity(side * side);
        for &r in rows {
            for &c in cols {
                colors.push(self.color(r, c));
            }
        }
        BalancedColoring { n: self.n, colors }
    }
}

impl fmt::Display for BalancedColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_strings() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("not a permutation: right vertex {} is used twice", .0 + 1)]
    RepeatedRight(usize),
    #[error("not a permutation: left vertex {} is used twice", .0 + 1)]
    RepeatedLeft(usize),
    #[error("not a permutation: left vertex {} is unmatched", .0 + 1)]
    MissingLeft(usize),
    #[error("vertex index {} out of range 1..={side}", .index + 1)]
    OutOfRange { index: usize, side: usize },
    #[error("matching has {matching} vertices per side but the coloring has {coloring}")]
    SizeMismatch { matching: usize, coloring: usize },
}

/// A perfect matching stored as the permutation `left -> right`.
///
/// Equality is on the permutation, so two edge lists that differ only in order compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    right_of: Vec<usize>,
}

impl Matching {
    pub fn from_permutation(right_of: Vec<usize>) -> Result<Matching, MatchingError> {
        let side = right_of.len();
        let mut seen = vec![false; side];
        for &r in &right_of {
            if r >= side {
                return Err(MatchingError::OutOfRange { index: r, side });
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(MatchingError::RepeatedRight(r));
            }
        }
        Ok(Matching { right_of })
    }

    /// Builds a matching from `(left, right)` edges in any order.
    pub fn from_edges(side: usize, edges: &[(usize, usize)]) -> Result<Matching, MatchingError> {
        let mut right_of = vec![usize::MAX; side];
        for &(l, r) in edges {
            if l >= side {
                return Err(MatchingError::OutOfRange { index: l, side });
            }
            if r >= side {
                return Err(MatchingError::OutOfRange { index: r, side });
            }
            if right_of[l] != usize::MAX {
                return Err(MatchingError::RepeatedLeft(l));
            }
            right_of[l] = r;
        }
        if let Some(l) = right_of.iter().position(|&r| r == usize::MAX) {
            return Err(MatchingError::MissingLeft(l));
        }
        Matching::from_permutation(right_of)
    }

    pub fn side(&self) -> usize {
        self.right_of.len()
    }

    pub fn right_of(&self, left: usize) -> usize {
        self.right_of[left]
    }

    pub fn as_permutation(&self) -> &[usize] {
        &self.right_of
    }

    /// Edges sorted by left index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.right_of.iter().copied().enumerate()
    }
}

/// Red and blue edge counts of a matching under a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorCount {
    pub red: usize,
    pub blue: usize,
}

pub fn count_colors(c: &BalancedColoring, m: &Matching) -> Result<ColorCount, MatchingError> {
    if m.side() != c.side() {
        return Err(MatchingError::SizeMismatch { matching: m.side(), coloring: c.side() });
    }
    let red = m.edges().filter(|&(l, r)| c.is_red(l, r)).count();
    Ok(ColorCount { red, blue: c.side() - red })
}

/// A split of both sides into halves such that the blue graph is exactly the
/// two complete blocks `a1 x b1` and `a2 x b2`, and every edge across is red.
///
/// Index sets are 0-based and kept sorted. The canonical form puts left vertex 0 in `a1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisconnectionCertificate {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
}

impl DisconnectionCertificate {
    /// Sorts the index sets and orients the certificate so that `a1` holds left vertex 0.
    pub fn canonical(mut self) -> DisconnectionCertificate {
        for s in [&mut self.a1, &mut self.a2, &mut self.b1, &mut self.b2] {
            s.sort_unstable();
        }
        if self.a2.first() == Some(&0) {
            std::mem::swap(&mut self.a1, &mut self.a2);
            std::mem::swap(&mut self.b1, &mut self.b2);
        }
        self
    }

    /// The certificate for the color-swapped coloring: its blue blocks are our red ones.
    pub fn for_swapped_colors(&self) -> DisconnectionCertificate {
        DisconnectionCertificate {
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            b1: self.b2.clone(),
            b2: self.b1.clone(),
        }
    }
}

fn is_half_partition(side: usize, first: &[usize], second: &[usize]) -> bool {
    if first.len() * 2 != side || second.len() * 2 != side {
        return false;
    }
    let mut seen = vec![false; side];
    for &v in first.iter().chain(second) {
        if v >= side || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

/// True iff the certificate partitions both sides into halves and all `4n^2`
/// edges follow its block pattern.
pub fn verify_certificate(c: &BalancedColoring, cert: &DisconnectionCertificate) -> bool {
    let side = c.side();
    if !is_half_partition(side, &cert.a1, &cert.a2) || !is_half_partition(side, &cert.b1, &cert.b2) {
        return false;
    }
    let block = |rows: &[usize], cols: &[usize], want: Color| {
        rows.iter().all(|&i| cols.iter().all(|&j| c.color(i, j) == want))
    };
    block(&cert.a1, &cert.b1, Color::Blue)
        && block(&cert.a2, &cert.b2, Color::Blue)
        && block(&cert.a1, &cert.b2, Color::Red)
        && block(&cert.a2, &cert.b1, Color::Red)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure1() -> BalancedColoring {
        BalancedColoring::from_rows(&["RRBB", "RRBB", "BBRR", "BBRR"]).unwrap()
    }

    fn one_based(edges: &[(usize, usize)]) -> Matching {
        let e: Vec<_> = edges.iter().map(|&(l, r)| (l - 1, r - 1)).collect();
        Matching::from_edges(edges.len(), &e).unwrap()
    }

    fn set(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn validates_figure1_and_n1() {
        let c = figure1();
        assert_eq!(c.n(), 2);
        assert!(BalancedColoring::from_rows(&["RB", "BR"]).is_ok());
    }

    #[test]
    fn rejects_unbalanced_row() {
        let err = BalancedColoring::from_rows(&["RRRB", "RBBB", "BBRR", "BRRB"]).unwrap_err();
        assert_eq!(err, ColoringError::UnbalancedRow { row: 0, red: 3, expected: 2 });
    }

    #[test]
    fn rejects_unbalanced_column() {
        let err = BalancedColoring::from_rows(&["RRBB", "RRBB", "RRBB", "BBRR"]).unwrap_err();
        assert!(matches!(err, ColoringError::UnbalancedColumn { column: 0, .. }));
    }

    #[test]
    fn rejects_shape_errors() {
        use Color::*;
        assert_eq!(validate_coloring(vec![]), Err(ColoringError::Empty));
        assert!(matches!(
            validate_coloring(vec![vec![Red, Blue], vec![Blue]]),
            Err(ColoringError::NotSquare { row: 1, .. })
        ));
        assert_eq!(
            validate_coloring(vec![vec![Red; 3], vec![Red; 3], vec![Red; 3]]),
            Err(ColoringError::OddSize(3))
        );
    }

    #[test]
    fn counts_figure1_matchings() {
        let c = figure1();
        let diag = one_based(&[(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(count_colors(&c, &diag).unwrap(), ColorCount { red: 4, blue: 0 });
        let anti = one_based(&[(1, 3), (2, 4), (3, 1), (4, 2)]);
        assert_eq!(count_colors(&c, &anti).unwrap(), ColorCount { red: 0, blue: 4 });
        let mixed = one_based(&[(1, 1), (2, 3), (3, 2), (4, 4)]);
        assert_eq!(count_colors(&c, &mixed).unwrap(), ColorCount { red: 2, blue: 2 });
    }

    #[test]
    fn count_rejects_size_mismatch() {
        let m = Matching::from_permutation(vec![1, 0]).unwrap();
        assert!(matches!(count_colors(&figure1(), &m), Err(MatchingError::SizeMismatch { .. })));
    }

    #[test]
    fn matching_rejects_repeats() {
        assert_eq!(Matching::from_permutation(vec![0, 0]), Err(MatchingError::RepeatedRight(0)));
        assert_eq!(
            Matching::from_edges(2, &[(0, 1), (0, 0)]),
            Err(MatchingError::RepeatedLeft(0))
        );
        assert_eq!(Matching::from_edges(2, &[(1, 1)]), Err(MatchingError::MissingLeft(0)));
    }

    #[test]
    fn matching_equality_ignores_edge_order() {
        let a = Matching::from_edges(3, &[(2, 0), (0, 1), (1, 2)]).unwrap();
        let b = Matching::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn figure1_certificate() {
        let c = figure1();
        let good = DisconnectionCertificate {
            a1: set(&[1, 2]),
            a2: set(&[3, 4]),
            b1: set(&[3, 4]),
            b2: set(&[1, 2]),
        };
        assert!(verify_certificate(&c, &good));
        let bad = DisconnectionCertificate {
            a1: set(&[1, 3]),
            a2: set(&[2, 4]),
            b1: set(&[1, 2]),
            b2: set(&[3, 4]),
        };
        assert!(!verify_certificate(&c, &bad));
        assert!(verify_certificate(&c.swapped(), &good.for_swapped_colors()));
    }

    #[test]
    fn certificate_rejects_non_partition() {
        let c = figure1();
        let overlapping = DisconnectionCertificate {
            a1: set(&[1, 2]),
            a2: set(&[2, 4]),
            b1: set(&[3, 4]),
            b2: set(&[1, 2]),
        };
        assert!(!verify_certificate(&c, &overlapping));
    }

    #[test]
    fn canonical_orients_on_left_zero() {
        let cert = DisconnectionCertificate {
            a1: vec![3, 2],
            a2: vec![1, 0],
            b1: vec![1, 0],
            b2: vec![3, 2],
        }
        .canonical();
        assert_eq!(cert.a1, vec![0, 1]);
        assert_eq!(cert.b1, vec![2, 3]);
    }

    #[test]
    fn flip_rectangle_only_on_alternating_minor() {
        let mut c = figure1();
        // rows 1,3 x cols 1,3: R B / B R
        assert!(c.flip_rectangle(0, 2, 0, 2));
        assert_eq!(c.row_strings(), vec!["BRRB", "RRBB", "RBBR", "BBRR"]);
        // rows 1,2 x cols 2,3 after flip: R R / R B -> not alternating
        assert!(!c.flip_rectangle(0, 1, 1, 2));
    }
}
