//! Zero-entry selection on balanced 0/1 matrices.
//!
//! A `2n x 2n` 0/1 matrix with every row and column summing to `n` is read as
//! a balanced coloring with **1 = blue** and 0 = red. A perfect matching with
//! `k` red edges then selects `k` zero entries in distinct rows and columns,
//! and its `2n - k` blue edges are a nonzero term of the permanent of the
//! minor left after deleting those rows and columns.

use thiserror::Error;

use crate::blue_matcher::{perfect_blue_matching, BipartiteSubgraph};
use crate::coloring::{BalancedColoring, Color};
use crate::solver::{solve, SolveError, SolveResult};

/// Largest size accepted by [`ryser_permanent`].
pub const RYSER_MAX_SIZE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermanentError {
    #[error("matrix is not square or has entries other than 0 and 1")]
    Malformed,
    #[error("matrix is not balanced: every row and column of a {size}x{size} matrix must sum to {}", .size / 2)]
    Unbalanced { size: usize },
    #[error("k = {k} must be even and at most {n}")]
    KOddOrOutOfRange { k: usize, n: usize },
    #[error("matrix of size {size} is too large for Ryser's formula (limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    size: usize,
    entries: Vec<u8>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<BinaryMatrix, PermanentError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size || r.iter().any(|&x| x > 1)) {
            return Err(PermanentError::Malformed);
        }
        Ok(BinaryMatrix { size, entries: rows.into_iter().flatten().collect() })
    }

    /// Parses rows such as `"0110"`. Panics on malformed input; meant for tests.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> BinaryMatrix {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().bytes().map(|b| b - b'0').collect())
            .collect();
        BinaryMatrix::new(rows).expect("well-formed 0/1 rows")
    }

    /// 1 where the coloring is blue.
    pub fn from_coloring(c: &BalancedColoring) -> BinaryMatrix {
        let size = c.side();
        let entries = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .map(|(i, j)| c.is_blue(i, j) as u8)
            .collect();
        BinaryMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.size + col]
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.entries[row * self.size..(row + 1) * self.size].iter().map(|&x| x as usize).sum()
    }

    pub fn col_sum(&self, col: usize) -> usize {
        (0..self.size).map(|r| self.get(r, col) as usize).sum()
    }

    /// Every row and column sums to half the size.
    pub fn is_balanced(&self) -> bool {
        let half = self.size / 2;
        self.size.is_multiple_of(2)
            && self.size > 0
            && (0..self.size).all(|i| self.row_sum(i) == half && self.col_sum(i) == half)
    }

    /// The matrix with the given rows and columns deleted.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BinaryMatrix {
        let keep_rows: Vec<usize> = (0..self.size).filter(|r| !rows.contains(r)).collect();
        let keep_cols: Vec<usize> = (0..self.size).filter(|c| !cols.contains(c)).collect();
        assert_eq!(keep_rows.len(), keep_cols.len(), "minor must be square");
        let entries = keep_rows
            .iter()
            .flat_map(|&r| keep_cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        BinaryMatrix { size: keep_rows.len(), entries }
    }

    /// The bipartite graph whose edges are the 1 entries.
    pub fn support(&self) -> BipartiteSubgraph {
        let adjacency = (0..self.size)
            .map(|r| (0..self.size).filter(|&c| self.get(r, c) == 1).collect())
            .collect();
        BipartiteSubgraph::new(self.size, adjacency)
    }
}

pub fn coloring_from_matrix(m: &BinaryMatrix) -> Result<BalancedColoring, PermanentError> {
    if !m.is_balanced() {
        return Err(PermanentError::Unbalanced { size: m.size });
    }
    let n = m.size / 2;
    BalancedColoring::from_fn(n, |i, j| if m.get(i, j) == 1 { Color::Blue } else { Color::Red })
        .map_err(|_| PermanentError::Unbalanced { size: m.size })
}

/// Selected zeros plus the 1 entries (in original coordinates) of a perfect
/// matching of the remaining minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSelection {
    pub zeros: Vec<(usize, usize)>,
    pub witness: Vec<(usize, usize)>,
}

impl ZeroSelection {
    pub fn rows(&self) -> Vec<usize> {
        self.zeros.iter().map(|&(r, _)| r).collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        self.zeros.iter().map(|&(_, c)| c).collect()
    }
}

/// `k` zero entries in distinct rows and columns whose deletion leaves a minor
/// with nonzero permanent, together with the witnessing diagonal.
pub fn select_zero_entries_with_witness(m: &BinaryMatrix, k: usize) -> Result<ZeroSelection, PermanentError> {
    let c = coloring_from_matrix(m)?;
    if k % 2 == 1 || k > c.n() {
        return Err(PermanentError::KOddOrOutOfRange { k, n: c.n() });
    }
    match solve(&c, k)? {
        SolveResult::Found { matching, .. } => {
            let (zeros, witness) = matching.edges().partition(|&(r, col)| m.get(r, col) == 0);
            Ok(ZeroSelection { zeros, witness })
        }
        SolveResult::Impossible { .. } => {
            Err(SolveError::Internal(format!("even k = {k} reported impossible")).into())
        }
    }
}

/// Positions `(row, col)` of the selected zeros, sorted by row.
pub fn select_zero_entries(m: &BinaryMatrix, k: usize) -> Result<Vec<(usize, usize)>, PermanentError> {
    Ok(select_zero_entries_with_witness(m, k)?.zeros)
}

/// Exact permanent by Ryser's inclusion-exclusion formula, visiting column
/// subsets in Gray-code order so each step adds or removes one column.
pub fn ryser_permanent(m: &BinaryMatrix) -> Result<u128, PermanentError> {
    let size = m.size;
    if size > RYSER_MAX_SIZE {
        return Err(PermanentError::TooLarge { size, limit: RYSER_MAX_SIZE });
    }
    if size == 0 {
        return Ok(1);
    }
    let mut row_sums = vec![0i64; size];
    let mut total: i128 = 0;
    let mut gray: u32 = 0;
    for step in 1u32..(1u32 << size) {
        let col = step.trailing_zeros() as usize;
        gray ^= 1 << col;
        let delta = if gray & (1 << col) != 0 { 1 } else { -1 };
        for (r, s) in row_sums.iter_mut().enumerate() {
            *s += delta * m.get(r, col) as i64;
        }
        if row_sums.contains(&0) {
            continue;
        }
        let product: i128 = row_sums.iter().map(|&s| s as i128).product();
        if gray.count_ones() % 2 == 1 {
            total -= product;
        } else {
            total += product;
        }
    }
    if size % 2 == 1 {
        total = -total;
    }
    u128::try_from(total).map_err(|_| PermanentError::Malformed)
}

/// `prod_i (r_i!)^(1/r_i)` over row sums `r_i`; rows summing to 0 contribute 1.
pub fn bregman_minc_bound(m: &BinaryMatrix) -> f64 {
    let log: f64 = (0..m.size)
        .map(|i| m.row_sum(i))
        .filter(|&r| r > 0)
        .map(|r| (1..=r).map(|x| (x as f64).ln()).sum::<f64>() / r as f64)
        .sum();
    log.exp()
}

/// Whether the minor has a nonzero permanent, decided by perfect-matching existence.
pub fn has_positive_permanent(m: &BinaryMatrix) -> bool {
    m.size == 0 || perfect_blue_matching(&m.support()).is_ok()
}
