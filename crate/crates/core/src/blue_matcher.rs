//! All-blue perfect matchings.
//!
//! The blue graph of a balanced coloring is `n`-regular on `2n + 2n` vertices, so
//! Hall's condition holds for every left subset and a perfect matching always
//! exists. We find one with Hopcroft-Karp. Neighbors are scanned in ascending
//! order everywhere, so the result is deterministic.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coloring::{BalancedColoring, Matching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlueMatchError {
    #[error("no perfect matching: maximum matching has {found} of {side} edges")]
    NoPerfectMatching { found: usize, side: usize },
}

/// A bipartite graph with the same number of vertices on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSubgraph {
    side: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteSubgraph {
    /// Adjacency lists are sorted and deduplicated.
    pub fn new(side: usize, mut adjacency: Vec<Vec<usize>>) -> BipartiteSubgraph {
        assert_eq!(adjacency.len(), side, "one adjacency list per left vertex");
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            assert!(list.last().is_none_or(|&r| r < side), "right index out of range");
        }
        BipartiteSubgraph { side, adjacency }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adjacency[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adjacency[left].binary_search(&right).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// `Some(d)` if every vertex on both sides has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        if self.adjacency.iter().any(|l| l.len() != d) {
            return None;
        }
        let mut right_deg = vec![0usize; self.side];
        for &r in self.adjacency.iter().flatten() {
            right_deg[r] += 1;
        }
        right_deg.iter().all(|&x| x == d).then_some(d)
    }

    /// Size of the neighborhood of a set of left vertices.
    pub fn neighborhood_size(&self, s: &[usize]) -> usize {
        let mut hit = vec![false; self.side];
        let mut count = 0;
        for &l in s {
            for &r in &self.adjacency[l] {
                if !std::mem::replace(&mut hit[r], true) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// The spanning subgraph of blue edges.
pub fn blue_subgraph(c: &BalancedColoring) -> BipartiteSubgraph {
    let side = c.side();
    let adjacency = (0..side)
        .map(|i| (0..side).filter(|&j| c.is_blue(i, j)).collect())
        .collect();
    BipartiteSubgraph { side, adjacency }
}

/// `|N(s)| >= |s|` for a set of distinct left vertices.
pub fn check_hall_condition(g: &BipartiteSubgraph, s: &[usize]) -> bool {
    g.neighborhood_size(s) >= s.len()
}

const UNMATCHED: usize = usize::MAX;

struct HopcroftKarp<'a> {
    g: &'a BipartiteSubgraph,
    right_of: Vec<usize>,
    left_of: Vec<usize>,
    dist: Vec<u32>,
    // Next neighbor to try for each left vertex during a DFS phase.
    cursor: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(g: &'a BipartiteSubgraph) -> Self {
        let side = g.side;
        HopcroftKarp {
            g,
            right_of: vec![UNMATCHED; side],
            left_of: vec![UNMATCHED; side],
            dist: vec![0; side],
            cursor: vec![0; side],
        }
    }

    fn greedy(&mut self) -> usize {
        let mut size = 0;
        for l in 0..self.g.side {
            if let Some(&r) = self.g.adjacency[l].iter().find(|&&r| self.left_of[r] == UNMATCHED) {
                self.right_of[l] = r;
                self.left_of[r] = l;
                size += 1;
            }
        }
        size
    }

    /// Layers left vertices by alternating distance from the free ones.
    /// Returns true if some free right vertex is reachable.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.g.side {
            if self.right_of[l] == UNMATCHED {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.g.adjacency[l] {
                let next = self.left_of[r];
                if next == UNMATCHED {
                    found = true;
                } else if self.dist[next] == u32::MAX {
                    self.dist[next] = self.dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    // Iterative DFS along the layered graph; augments and returns true on success.
    fn augment_from(&mut self, root: usize) -> bool {
        let mut path: Vec<usize> = vec![root];
        while let Some(&l) = path.last() {
            let adj = &self.g.adjacency[l];
            let mut advanced = false;
            while self.cursor[l] < adj.len() {
                let r = adj[self.cursor[l]];
                let next = self.left_of[r];
                if next == UNMATCHED {
                    // Flip the path root..l, ending on r.
                    let mut r = r;
                    for &pl in path.iter().rev() {
                        let prev = self.right_of[pl];
                        self.right_of[pl] = r;
                        self.left_of[r] = pl;
                        r = prev;
                    }
                    return true;
                }
                if self.dist[next] == self.dist[l] + 1 {
                    path.push(next);
                    advanced = true;
                    break;
                }
                self.cursor[l] += 1;
            }
            if !advanced {
                self.dist[l] = u32::MAX;
                path.pop();
                if let Some(&parent) = path.last() {
                    self.cursor[parent] += 1;
                }
            }
        }
        false
    }

    fn run(mut self) -> (usize, Vec<usize>) {
        let mut size = self.greedy();
        while size < self.g.side && self.bfs() {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            for l in 0..self.g.side {
                if self.right_of[l] == UNMATCHED && self.augment_from(l) {
                    size += 1;
                }
            }
        }
        (size, self.right_of)
    }
}

/// Maximum matching of `g` as `right_of[left]`, `usize::MAX` where unmatched.
pub fn maximum_matching(g: &BipartiteSubgraph) -> (usize, Vec<usize>) {
    HopcroftKarp::new(g).run()
}

/// A perfect matching using only edges of `g`.
///
/// On graphs extracted from a balanced coloring this never fails; the error
/// signals a caller passing a graph that is not regular.
pub fn perfect_blue_matching(g: &BipartiteSubgraph) -> Result<Matching, BlueMatchError> {
    let (found, right_of) = maximum_matching(g);
    if found < g.side {
        return Err(BlueMatchError::NoPerfectMatching { found, side: g.side });
    }
    Ok(Matching::from_permutation(right_of).expect("Hopcroft-Karp produced a permutation"))
}
