//! Constructs a perfect matching with exactly `k` red edges.
//!
//! The pipeline, for `k <= n` (larger `k` is handled by exchanging the colors):
//!
//! 1. Take an all-blue perfect matching and number its edges `0..2n`. Edge `t`
//!    is `(left_order[t], right_order[t])`; consecutive positions `2s, 2s + 1`
//!    form pair `s`.
//! 2. Each pair has two *cross* edges, `(left[2s], right[2s+1])` and
//!    `(left[2s+1], right[2s])`. A pair whose cross edges are both blue is
//!    useless for adding red edges. While such a pair `l` exists, a counting
//!    argument (the `2n` red edges at `left[2l]` and `right[2l+1]` land on only
//!    `n - 1` other pairs) yields a pair `i` and a position exchange between `l`
//!    and `i` after which both have a red cross edge.
//! 3. Every pair now contributes 0 or 2 red edges (both cross edges red) or 0
//!    or 1 (one red). Even `k` is always reachable this way; odd `k` needs a
//!    single-red pair or one of the odd gadgets below.
//!
//! When every pair is double-red and odd `k` is requested we look for a
//! *breaker*: positions `i != j` with `(x_i, y_j)` blue and `(x_j, y_i)` red,
//! giving a swap with exactly one red edge. Without one, the position matrix is
//! symmetric and we look for an *interchange*: positions `i, j, l` with
//! `(x_i, y_l)` blue, `(x_l, y_j)` red and `(x_j, y_i)` blue, a 3-cycle with
//! exactly one red edge. Without either, the blue graph splits into two
//! complete blocks and we return a [`DisconnectionCertificate`].

use thiserror::Error;

use crate::blue_matcher::{blue_subgraph, perfect_blue_matching, BlueMatchError};
use crate::coloring::{
    count_colors, verify_certificate, BalancedColoring, Color, ColorCount, DisconnectionCertificate,
    Matching,
};
use crate::oracle::{blue_components, certificate_from_components, find_matching_with_red, OracleError};

/// Below this `n`, odd `k` on a connected instance is answered by exhaustive search.
pub const EXHAUSTIVE_MAX_N: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k = {k} is out of range 0..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("matching has {matching} vertices per side but the coloring has {coloring}")]
    SizeMismatch { matching: usize, coloring: usize },
    #[error("edge at position {position} is not blue")]
    NotAllBlue { position: usize },
    #[error("left and right orders must be permutations of 0..{0}")]
    NotPermutation(usize),
    #[error("pair {pair} does not have two blue cross edges")]
    NotAllBlueCross { pair: usize },
    #[error("no partner pair for all-blue-cross pair {pair}")]
    PigeonholeExhausted { pair: usize },
    #[error("pair {pair} still has two blue cross edges")]
    AllBlueCrossRemaining { pair: usize },
    #[error("cannot reach {k} red edges with the available pairs")]
    InfeasibleParity { k: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    BlueMatching(#[from] BlueMatchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Both cross edges blue.
    AllBlueCross,
    /// Exactly one cross edge red.
    SingleRed,
    /// Both cross edges red.
    DoubleRed,
}

/// The relabeled all-blue matching, grouped into pairs of consecutive positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairDecomposition {
    left_order: Vec<usize>,
    right_order: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&x| x < v.len() && !std::mem::replace(&mut seen[x], true))
}

impl PairDecomposition {
    /// Checks that both orders are permutations and every position edge is blue.
    pub fn new(
        c: &BalancedColoring,
        left_order: Vec<usize>,
        right_order: Vec<usize>,
    ) -> Result<PairDecomposition, SolveError> {
        let side = c.side();
        if left_order.len() != side || right_order.len() != side {
            return Err(SolveError::SizeMismatch { matching: left_order.len(), coloring: side });
        }
        if !is_permutation(&left_order) || !is_permutation(&right_order) {
            return Err(SolveError::NotPermutation(side));
        }
        let d = PairDecomposition { left_order, right_order };
        if let Some(position) = (0..side).find(|&t| !d.is_blue(c, t, t)) {
            return Err(SolveError::NotAllBlue { position });
        }
        Ok(d)
    }

    pub fn side(&self) -> usize {
        self.left_order.len()
    }

    pub fn pair_count(&self) -> usize {
        self.side() / 2
    }

    pub fn left_order(&self) -> &[usize] {
        &self.left_order
    }

    pub fn right_order(&self) -> &[usize] {
        &self.right_order
    }

    pub fn left(&self, position: usize) -> usize {
        self.left_order[position]
    }

    pub fn right(&self, position: usize) -> usize {
        self.right_order[position]
    }

    /// Positions `(2s, 2s + 1)` of pair `s`.
    pub fn positions(&self, pair: usize) -> (usize, usize) {
        (2 * pair, 2 * pair + 1)
    }

    /// Color of the edge from the left vertex at position `p` to the right vertex at position `q`.
    #[inline]
    pub fn color(&self, c: &BalancedColoring, p: usize, q: usize) -> Color {
        c.color(self.left_order[p], self.right_order[q])
    }

    #[inline]
    fn is_red(&self, c: &BalancedColoring, p: usize, q: usize) -> bool {
        self.color(c, p, q) == Color::Red
    }

    #[inline]
    fn is_blue(&self, c: &BalancedColoring, p: usize, q: usize) -> bool {
        self.color(c, p, q) == Color::Blue
    }

    /// All position edges are blue.
    pub fn position_edges_blue(&self, c: &BalancedColoring) -> bool {
        (0..self.side()).all(|t| self.is_blue(c, t, t))
    }

    fn swap_positions(&mut self, u: usize, v: usize) {
        self.left_order.swap(u, v);
        self.right_order.swap(u, v);
    }
}

/// Numbers the edges of an all-blue matching by left vertex.
pub fn decompose(c: &BalancedColoring, blue: &Matching) -> Result<PairDecomposition, SolveError> {
    if blue.side() != c.side() {
        return Err(SolveError::SizeMismatch { matching: blue.side(), coloring: c.side() });
    }
    let (left_order, right_order) = blue.edges().unzip();
    PairDecomposition::new(c, left_order, right_order)
}

pub fn classify_pair(c: &BalancedColoring, d: &PairDecomposition, pair: usize) -> PairClass {
    let (a, b) = d.positions(pair);
    match (d.is_red(c, a, b), d.is_red(c, b, a)) {
        (false, false) => PairClass::AllBlueCross,
        (true, true) => PairClass::DoubleRed,
        _ => PairClass::SingleRed,
    }
}

pub fn classify_all(c: &BalancedColoring, d: &PairDecomposition) -> Vec<PairClass> {
    (0..d.pair_count()).map(|s| classify_pair(c, d, s)).collect()
}

/// Which position of pair `l` is exchanged with which position of pair `i`.
///
/// Each variant names two red edges (see [`SwapPattern::red_edges`]); exchanging
/// the named positions turns one of them into a cross edge of `l` and the other
/// into a cross edge of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapPattern {
    /// Red `(x[2l], y[2i])` and `(x[2l+1], y[2i+1])`; exchange positions `2l+1` and `2i`.
    Parallel,
    /// Red `(x[2l], y[2i+1])` and `(x[2i], y[2l+1])`; exchange positions `2l+1` and `2i+1`.
    Crossed,
    /// `Parallel` with the two positions of `l` exchanged.
    ParallelMirror,
    /// `Crossed` with the two positions of `l` exchanged.
    CrossedMirror,
}

impl SwapPattern {
    /// Order in which [`find_partner`] tries the patterns for each candidate pair.
    pub const SCAN_ORDER: [SwapPattern; 4] = [
        SwapPattern::Parallel,
        SwapPattern::Crossed,
        SwapPattern::ParallelMirror,
        SwapPattern::CrossedMirror,
    ];

    /// The two `(left position, right position)` edges that must be red.
    pub fn red_edges(self, l: usize, i: usize) -> [(usize, usize); 2] {
        let (l1, l2) = (2 * l, 2 * l + 1);
        let (i1, i2) = (2 * i, 2 * i + 1);
        match self {
            SwapPattern::Parallel => [(l1, i1), (l2, i2)],
            SwapPattern::Crossed => [(l1, i2), (i1, l2)],
            SwapPattern::ParallelMirror => [(l2, i1), (l1, i2)],
            SwapPattern::CrossedMirror => [(l2, i2), (i1, l1)],
        }
    }

    /// Positions exchanged by [`apply_swap`].
    pub fn exchanged_positions(self, l: usize, i: usize) -> (usize, usize) {
        let (l1, l2) = (2 * l, 2 * l + 1);
        let (i1, i2) = (2 * i, 2 * i + 1);
        match self {
            SwapPattern::Parallel => (l2, i1),
            SwapPattern::Crossed => (l2, i2),
            SwapPattern::ParallelMirror => (l1, i1),
            SwapPattern::CrossedMirror => (l1, i2),
        }
    }
}

/// The smallest pair `i != l` joined to pair `l` by one of the four double-red patterns.
pub fn find_partner(
    c: &BalancedColoring,
    d: &PairDecomposition,
    l: usize,
) -> Result<(usize, SwapPattern), SolveError> {
    if classify_pair(c, d, l) != PairClass::AllBlueCross {
        return Err(SolveError::NotAllBlueCross { pair: l });
    }
    (0..d.pair_count())
        .filter(|&i| i != l)
        .flat_map(|i| SwapPattern::SCAN_ORDER.into_iter().map(move |p| (i, p)))
        .find(|&(i, p)| p.red_edges(l, i).iter().all(|&(a, b)| d.is_red(c, a, b)))
        .ok_or(SolveError::PigeonholeExhausted { pair: l })
}

/// Exchanges one position of pair `l` with one of pair `i`, in both orders at once,
/// so every position edge stays the same blue edge.
pub fn apply_swap(d: &PairDecomposition, l: usize, i: usize, pattern: SwapPattern) -> PairDecomposition {
    let mut out = d.clone();
    let (u, v) = pattern.exchanged_positions(l, i);
    out.swap_positions(u, v);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    pub l: usize,
    pub i: usize,
    pub pattern: SwapPattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub decomposition: PairDecomposition,
    pub swaps: Vec<SwapRecord>,
}

/// Removes every all-blue-cross pair. Each swap fixes pair `l` and pair `i` and
/// touches nothing else, so the number of such pairs strictly drops and at most
/// `n` swaps happen.
pub fn eliminate_all_blue_pairs(
    c: &BalancedColoring,
    d: &PairDecomposition,
) -> Result<Elimination, SolveError> {
    eliminate_all_blue_pairs_traced(c, d, |_, _| {})
}

/// [`eliminate_all_blue_pairs`], calling `on_swap` with the decomposition after each swap.
pub fn eliminate_all_blue_pairs_traced(
    c: &BalancedColoring,
    d: &PairDecomposition,
    mut on_swap: impl FnMut(&PairDecomposition, &SwapRecord),
) -> Result<Elimination, SolveError> {
    let mut current = d.clone();
    let mut swaps = Vec::new();
    while let Some(l) = (0..current.pair_count()).find(|&s| classify_pair(c, &current, s) == PairClass::AllBlueCross) {
        let (i, pattern) = find_partner(c, &current, l)?;
        current = apply_swap(&current, l, i, pattern);
        let record = SwapRecord { l, i, pattern };
        debug_assert!(classify_pair(c, &current, l) != PairClass::AllBlueCross);
        debug_assert!(classify_pair(c, &current, i) != PairClass::AllBlueCross);
        on_swap(&current, &record);
        swaps.push(record);
        if swaps.len() > current.pair_count() {
            return Err(SolveError::Internal(format!("elimination exceeded {} swaps", current.pair_count())));
        }
    }
    Ok(Elimination { decomposition: current, swaps })
}

/// Outcome of a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Found { matching: Matching, count: ColorCount },
    Impossible { certificate: DisconnectionCertificate },
}

impl SolveResult {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            SolveResult::Found { matching, .. } => Some(matching),
            SolveResult::Impossible { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SolveResult::Found { .. })
    }
}

// The matching under construction, as right vertex per left vertex.
struct Assembly<'a> {
    d: &'a PairDecomposition,
    right_of: Vec<usize>,
    touched: Vec<bool>,
}

impl<'a> Assembly<'a> {
    fn new(d: &'a PairDecomposition) -> Self {
        let mut right_of = vec![0; d.side()];
        for t in 0..d.side() {
            right_of[d.left(t)] = d.right(t);
        }
        Assembly { d, right_of, touched: vec![false; d.pair_count()] }
    }

    /// Matches the left vertex at position `p` to the right vertex at position `q`.
    fn link(&mut self, p: usize, q: usize) {
        self.right_of[self.d.left(p)] = self.d.right(q);
        self.touched[p / 2] = true;
        self.touched[q / 2] = true;
    }

    fn cross(&mut self, pair: usize) {
        let (a, b) = self.d.positions(pair);
        self.link(a, b);
        self.link(b, a);
    }

    fn finish(self, c: &BalancedColoring, k: usize) -> Result<SolveResult, SolveError> {
        let matching = Matching::from_permutation(self.right_of)
            .map_err(|e| SolveError::Internal(format!("assembled matching invalid: {e}")))?;
        let count = count_colors(c, &matching).expect("sizes agree");
        if count.red != k {
            return Err(SolveError::Internal(format!("assembled {} red edges, wanted {k}", count.red)));
        }
        Ok(SolveResult::Found { matching, count })
    }
}

/// Positions `i != j` with `(x_i, y_j)` blue and `(x_j, y_i)` red, lexicographically smallest.
pub fn find_odd_breaker(c: &BalancedColoring, d: &PairDecomposition) -> Option<(usize, usize)> {
    let side = d.side();
    (0..side)
        .flat_map(|i| (0..side).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && d.is_blue(c, i, j) && d.is_red(c, j, i))
}

/// Positions for a 3-cycle `x_i - y_l`, `x_l - y_j`, `x_j - y_i` with exactly
/// one red edge (the middle one).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interchange {
    pub i: usize,
    pub j: usize,
    pub l: usize,
}

fn is_interchange(c: &BalancedColoring, d: &PairDecomposition, x: Interchange) -> bool {
    x.i != x.j
        && x.j != x.l
        && x.i != x.l
        && d.is_blue(c, x.i, x.l)
        && d.is_red(c, x.l, x.j)
        && d.is_blue(c, x.j, x.i)
}

/// Searches for an [`Interchange`]. Ones where `j` and `l` form a pair are
/// preferred since they leave more pairs untouched.
pub fn find_interchange(c: &BalancedColoring, d: &PairDecomposition) -> Option<Interchange> {
    let side = d.side();
    for i in 0..side {
        for s in (0..d.pair_count()).filter(|&s| s != i / 2) {
            let (a, b) = d.positions(s);
            for (j, l) in [(a, b), (b, a)] {
                let x = Interchange { i, j, l };
                if is_interchange(c, d, x) {
                    return Some(x);
                }
            }
        }
    }
    for i in 0..side {
        for l in (0..side).filter(|&l| l != i && d.is_blue(c, i, l)) {
            for j in (0..side).filter(|&j| j != i && j != l && d.is_blue(c, j, i)) {
                if d.is_red(c, l, j) {
                    return Some(Interchange { i, j, l });
                }
            }
        }
    }
    None
}

// Adds `extra` red edges (even) on top of an odd gadget: first from untouched
// pairs, then by crossing two leftover positions of touched pairs whose edges
// are both red.
fn fill_even(
    c: &BalancedColoring,
    asm: &mut Assembly<'_>,
    leftovers: &[usize],
    extra: usize,
    k: usize,
) -> Result<(), SolveError> {
    let d = asm.d;
    let mut units = extra / 2;
    for s in 0..d.pair_count() {
        if units == 0 {
            break;
        }
        if !asm.touched[s] {
            debug_assert_eq!(classify_pair(c, d, s), PairClass::DoubleRed);
            asm.cross(s);
            units -= 1;
        }
    }
    let mut used = vec![false; leftovers.len()];
    for a in 0..leftovers.len() {
        for b in a + 1..leftovers.len() {
            if units == 0 || used[a] || used[b] {
                continue;
            }
            let (p, q) = (leftovers[a], leftovers[b]);
            if d.is_red(c, p, q) && d.is_red(c, q, p) {
                asm.link(p, q);
                asm.link(q, p);
                used[a] = true;
                used[b] = true;
                units -= 1;
            }
        }
    }
    if units > 0 {
        return Err(SolveError::InfeasibleParity { k });
    }
    Ok(())
}

// When no breaker and no interchange exist, blue adjacency between positions is
// an equivalence relation; its two classes are the two blue blocks.
fn certificate_from_positions(
    c: &BalancedColoring,
    d: &PairDecomposition,
) -> Result<DisconnectionCertificate, SolveError> {
    let side = d.side();
    let mut class = vec![usize::MAX; side];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for p in 0..side {
        if class[p] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..side).filter(|&q| d.is_blue(c, p, q)).collect();
        for &q in &members {
            class[q] = classes.len();
        }
        classes.push(members);
    }
    let [first, second] = classes.as_slice() else {
        return Err(SolveError::Internal(format!("expected 2 blue blocks, found {}", classes.len())));
    };
    let cert = DisconnectionCertificate {
        a1: first.iter().map(|&p| d.left(p)).collect(),
        a2: second.iter().map(|&p| d.left(p)).collect(),
        b1: first.iter().map(|&p| d.right(p)).collect(),
        b2: second.iter().map(|&p| d.right(p)).collect(),
    }
    .canonical();
    if !verify_certificate(c, &cert) {
        return Err(SolveError::Internal("blue blocks do not form a certificate".into()));
    }
    Ok(cert)
}

/// Assembles a matching with exactly `k <= n` red edges from an eliminated decomposition.
///
/// Double-red pairs are crossed first (2 red each), then single-red pairs (1
/// red each). Odd `k` with no single-red pair goes through a breaker, then an
/// interchange; if neither exists the result is `Impossible`.
pub fn select_matching(
    c: &BalancedColoring,
    d: &PairDecomposition,
    k: usize,
) -> Result<SolveResult, SolveError> {
    let n = d.pair_count();
    if k > n {
        return Err(SolveError::KOutOfRange { k, max: n });
    }
    let classes = classify_all(c, d);
    if let Some(pair) = classes.iter().position(|&p| p == PairClass::AllBlueCross) {
        return Err(SolveError::AllBlueCrossRemaining { pair });
    }
    let double: Vec<usize> = (0..n).filter(|&s| classes[s] == PairClass::DoubleRed).collect();
    let single: Vec<usize> = (0..n).filter(|&s| classes[s] == PairClass::SingleRed).collect();

    let from_double = double.len().min(k / 2);
    let from_single = k - 2 * from_double;
    let mut asm = Assembly::new(d);
    if from_single <= single.len() {
        for &s in double.iter().take(from_double) {
            asm.cross(s);
        }
        for &s in single.iter().take(from_single) {
            asm.cross(s);
        }
        return asm.finish(c, k);
    }
    if k.is_multiple_of(2) || !single.is_empty() {
        return Err(SolveError::InfeasibleParity { k });
    }

    // Odd k, every pair double-red.
    if let Some((i, j)) = find_odd_breaker(c, d) {
        asm.link(j, i);
        asm.link(i, j);
        let leftovers = [i ^ 1, j ^ 1];
        fill_even(c, &mut asm, &leftovers, k - 1, k)?;
        return asm.finish(c, k);
    }
    if let Some(x) = find_interchange(c, d) {
        asm.link(x.i, x.l);
        asm.link(x.l, x.j);
        asm.link(x.j, x.i);
        let mut leftovers: Vec<usize> = [x.i ^ 1, x.j ^ 1, x.l ^ 1]
            .into_iter()
            .filter(|&p| p != x.i && p != x.j && p != x.l)
            .collect();
        leftovers.sort_unstable();
        fill_even(c, &mut asm, &leftovers, k - 1, k)?;
        return asm.finish(c, k);
    }
    Ok(SolveResult::Impossible { certificate: certificate_from_positions(c, d)? })
}

fn check_k(c: &BalancedColoring, k: usize) -> Result<(), SolveError> {
    if k > c.side() {
        return Err(SolveError::KOutOfRange { k, max: c.side() });
    }
    Ok(())
}

fn solve_at_most_n(c: &BalancedColoring, k: usize) -> Result<SolveResult, SolveError> {
    let blue = perfect_blue_matching(&blue_subgraph(c))?;
    let d = decompose(c, &blue)?;
    let e = eliminate_all_blue_pairs(c, &d)?;
    select_matching(c, &e.decomposition, k)
}

/// The constructive pipeline alone: no connectivity shortcut and no exhaustive
/// fallback. `k > n` is solved as `2n - k` with the colors exchanged.
pub fn solve_constructive(c: &BalancedColoring, k: usize) -> Result<SolveResult, SolveError> {
    check_k(c, k)?;
    if k <= c.n() {
        return solve_at_most_n(c, k);
    }
    let swapped = c.swapped();
    Ok(match solve_at_most_n(&swapped, c.side() - k)? {
        SolveResult::Found { matching, .. } => {
            let count = count_colors(c, &matching).expect("sizes agree");
            SolveResult::Found { matching, count }
        }
        SolveResult::Impossible { certificate } => {
            SolveResult::Impossible { certificate: certificate.for_swapped_colors().canonical() }
        }
    })
}

/// A perfect matching with exactly `k` red edges, or a certificate that the
/// blue graph is two copies of `K_{n,n}` when `k` is odd.
pub fn solve(c: &BalancedColoring, k: usize) -> Result<SolveResult, SolveError> {
    check_k(c, k)?;
    let result = if k % 2 == 1 {
        let report = blue_components(c);
        if report.count() == 2 {
            SolveResult::Impossible { certificate: certificate_from_components(&report)? }
        } else if c.n() <= EXHAUSTIVE_MAX_N {
            let matching = find_matching_with_red(c, k)?.ok_or_else(|| {
                SolveError::Internal(format!("connected instance has no matching with {k} red edges"))
            })?;
            let count = count_colors(c, &matching).expect("sizes agree");
            SolveResult::Found { matching, count }
        } else {
            solve_constructive(c, k)?
        }
    } else {
        solve_constructive(c, k)?
    };
    match &result {
        SolveResult::Found { count, .. } if count.red != k => {
            Err(SolveError::Internal(format!("found {} red edges, wanted {k}", count.red)))
        }
        SolveResult::Impossible { certificate } if k.is_multiple_of(2) || !verify_certificate(c, certificate) => {
            Err(SolveError::Internal("impossibility claimed without a valid certificate".into()))
        }
        _ => Ok(result),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{make_circulant_instance, make_lemma1_instance};

    fn figure1() -> BalancedColoring {
        make_lemma1_instance(2)
    }

    fn figure1_decomposition() -> PairDecomposition {
        let c = figure1();
        let blue = Matching::from_permutation(vec![2, 3, 0, 1]).unwrap();
        decompose(&c, &blue).unwrap()
    }

    #[test]
    fn decompose_transcribes_blue_matching() {
        let d = figure1_decomposition();
        assert_eq!(d.left_order(), &[0, 1, 2, 3]);
        assert_eq!(d.right_order(), &[2, 3, 0, 1]);
        assert_eq!(d.pair_count(), 2);
    }

    #[test]
    fn decompose_rejects_red_edge() {
        let diag = Matching::from_permutation(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(decompose(&figure1(), &diag), Err(SolveError::NotAllBlue { position: 0 }));
    }

    #[test]
    fn decompose_n1_single_pair() {
        let c = make_lemma1_instance(1);
        let d = decompose(&c, &Matching::from_permutation(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(d.pair_count(), 1);
        assert_eq!(d.positions(0), (0, 1));
        assert_eq!(classify_pair(&c, &d, 0), PairClass::DoubleRed);
    }

    #[test]
    fn figure1_classification() {
        let c = figure1();
        let d = figure1_decomposition();
        assert_eq!(classify_pair(&c, &d, 0), PairClass::AllBlueCross);
        // pairs (x1,y3),(x3,y1)
        let d2 = PairDecomposition::new(&c, vec![0, 2, 1, 3], vec![2, 0, 3, 1]).unwrap();
        assert_eq!(classify_pair(&c, &d2, 0), PairClass::DoubleRed);
    }

    #[test]
    fn figure1_partner_and_swap() {
        let c = figure1();
        let d = figure1_decomposition();
        let (i, pattern) = find_partner(&c, &d, 0).unwrap();
        assert_eq!((i, pattern), (1, SwapPattern::Parallel));
        let swapped = apply_swap(&d, 0, i, pattern);
        assert!(swapped.position_edges_blue(&c));
        // pair 0 now holds (x1,y3),(x3,y1): cross edges (x1,y1), (x3,y3)
        assert_eq!(swapped.left_order(), &[0, 2, 1, 3]);
        assert!(c.is_red(0, 0) && c.is_red(2, 2));
        assert_eq!(classify_all(&c, &swapped), vec![PairClass::DoubleRed; 2]);
        assert_eq!(apply_swap(&swapped, 0, i, pattern), d);
    }

    #[test]
    fn elimination_noop_without_all_blue_pairs() {
        let c = figure1();
        let d = PairDecomposition::new(&c, vec![0, 2, 1, 3], vec![2, 0, 3, 1]).unwrap();
        let e = eliminate_all_blue_pairs(&c, &d).unwrap();
        assert!(e.swaps.is_empty());
        assert_eq!(e.decomposition, d);
    }

    #[test]
    fn find_partner_requires_all_blue_cross() {
        let c = figure1();
        let d = PairDecomposition::new(&c, vec![0, 2, 1, 3], vec![2, 0, 3, 1]).unwrap();
        assert_eq!(find_partner(&c, &d, 0), Err(SolveError::NotAllBlueCross { pair: 0 }));
    }

    #[test]
    fn figure1_selection() {
        let c = figure1();
        let e = eliminate_all_blue_pairs(&c, &figure1_decomposition()).unwrap();
        let d = &e.decomposition;
        assert_eq!(e.swaps.len(), 1);
        for k in [0, 2] {
            let r = select_matching(&c, d, k).unwrap();
            assert_eq!(count_colors(&c, r.matching().unwrap()).unwrap().red, k);
        }
        assert_eq!(find_odd_breaker(&c, d), None);
        assert_eq!(find_interchange(&c, d), None);
        let SolveResult::Impossible { certificate } = select_matching(&c, d, 1).unwrap() else {
            panic!("k = 1 must be impossible");
        };
        assert_eq!(certificate.a1, vec![0, 1]);
        assert_eq!(certificate.a2, vec![2, 3]);
        assert_eq!(certificate.b1, vec![2, 3]);
        assert_eq!(certificate.b2, vec![0, 1]);
    }

    #[test]
    fn select_rejects_large_k_and_uneliminated() {
        let c = figure1();
        assert!(matches!(select_matching(&c, &figure1_decomposition(), 0), Err(SolveError::AllBlueCrossRemaining { pair: 0 })));
        let d = PairDecomposition::new(&c, vec![0, 2, 1, 3], vec![2, 0, 3, 1]).unwrap();
        assert_eq!(select_matching(&c, &d, 3), Err(SolveError::KOutOfRange { k: 3, max: 2 }));
    }

    #[test]
    fn n1_odd_is_impossible() {
        let c = make_lemma1_instance(1);
        let d = decompose(&c, &Matching::from_permutation(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(find_odd_breaker(&c, &d), None);
        assert!(!select_matching(&c, &d, 1).unwrap().is_found());
    }

    // Blue iff positions are equal or adjacent on a 6-cycle, with the pairs
    // placed on antipodal positions: all pairs double-red, the position matrix
    // symmetric (no breaker), yet the blue graph is connected.
    fn hexagon() -> (BalancedColoring, PairDecomposition) {
        let order = [0usize, 3, 1, 4, 2, 5];
        let c = BalancedColoring::from_fn(3, |a, b| {
            let diff = (a + 6 - b) % 6;
            if diff == 0 || diff == 1 || diff == 5 {
                Color::Blue
            } else {
                Color::Red
            }
        })
        .unwrap();
        let d = PairDecomposition::new(&c, order.to_vec(), order.to_vec()).unwrap();
        (c, d)
    }

    #[test]
    fn interchange_covers_symmetric_connected_case() {
        let (c, d) = hexagon();
        assert_eq!(classify_all(&c, &d), vec![PairClass::DoubleRed; 3]);
        assert_eq!(find_odd_breaker(&c, &d), None);
        assert!(find_interchange(&c, &d).is_some());
        for k in 0..=3 {
            let r = select_matching(&c, &d, k).unwrap();
            assert_eq!(count_colors(&c, r.matching().unwrap()).unwrap().red, k, "k = {k}");
        }
    }

    #[test]
    fn solve_figure1_all_k() {
        let c = figure1();
        for k in 0..=4 {
            let r = solve(&c, k).unwrap();
            assert_eq!(r.is_found(), k % 2 == 0, "k = {k}");
            if let SolveResult::Found { count, .. } = r {
                assert_eq!(count.red, k);
            }
        }
        assert_eq!(solve(&c, 5), Err(SolveError::KOutOfRange { k: 5, max: 4 }));
    }

    #[test]
    fn constructive_path_agrees_on_figure1() {
        let c = figure1();
        for k in [1, 3] {
            let SolveResult::Impossible { certificate } = solve_constructive(&c, k).unwrap() else {
                panic!("k = {k}");
            };
            assert!(verify_certificate(&c, &certificate));
            assert_eq!(certificate.a1, vec![0, 1]);
            assert_eq!(certificate.b1, vec![2, 3]);
        }
    }

    #[test]
    fn k_two_n_is_all_red() {
        let c = make_circulant_instance(4);
        let r = solve(&c, 8).unwrap();
        assert_eq!(r.matching().unwrap().edges().filter(|&(l, r)| c.is_blue(l, r)).count(), 0);
    }
}
