//! Brute-force ground truth for small instances, and blue-graph connectivity.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coloring::{BalancedColoring, DisconnectionCertificate, Matching};

/// Largest `n` accepted by the enumerators; `(2n)! = 3_628_800` at `n = 5`.
pub const MAX_ENUMERATION_N: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} is too large for enumeration (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("blue graph has {0} components, expected exactly 2")]
    NotTwoComponents(usize),
}

/// Number of perfect matchings with exactly `k` red edges, for every `k` in `0..=2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    counts: Vec<u64>,
}

impl Spectrum {
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn achievable(&self, k: usize) -> bool {
        self.count(k) > 0
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

fn check_size(c: &BalancedColoring) -> Result<(), OracleError> {
    if c.n() > MAX_ENUMERATION_N {
        return Err(OracleError::TooLarge { n: c.n(), limit: MAX_ENUMERATION_N });
    }
    Ok(())
}

// Depth-first walk over permutations in lexicographic order. `visit` gets the
// partial permutation and red count at each leaf and returns false to stop.
fn walk(
    c: &BalancedColoring,
    row: usize,
    used: u32,
    red: usize,
    perm: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], usize) -> bool,
) -> bool {
    let side = c.side();
    if row == side {
        return visit(perm, red);
    }
    for col in 0..side {
        if used & (1 << col) != 0 {
            continue;
        }
        perm.push(col);
        let go_on = walk(c, row + 1, used | (1 << col), red + c.is_red(row, col) as usize, perm, visit);
        perm.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Tallies red counts over all `(2n)!` perfect matchings.
pub fn enumerate_spectrum(c: &BalancedColoring) -> Result<Spectrum, OracleError> {
    check_size(c)?;
    let mut counts = vec![0u64; c.side() + 1];
    walk(c, 0, 0, 0, &mut Vec::with_capacity(c.side()), &mut |_, red| {
        counts[red] += 1;
        true
    });
    Ok(Spectrum { counts })
}

/// The lexicographically first perfect matching with exactly `k` red edges.
pub fn find_matching_with_red(c: &BalancedColoring, k: usize) -> Result<Option<Matching>, OracleError> {
    check_size(c)?;
    let mut found = None;
    walk(c, 0, 0, 0, &mut Vec::with_capacity(c.side()), &mut |perm, red| {
        if red == k {
            found = Some(perm.to_vec());
            false
        } else {
            true
        }
    });
    Ok(found.map(|p| Matching::from_permutation(p).expect("enumerated a permutation")))
}

/// One connected component of the blue graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Components in order of their smallest left vertex, vertex lists sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Connected components of the blue subgraph, by breadth-first search.
pub fn blue_components(c: &BalancedColoring) -> ComponentReport {
    let side = c.side();
    // Vertices 0..side are left, side..2*side are right.
    let mut label = vec![usize::MAX; 2 * side];
    let mut components = Vec::new();
    for start in 0..2 * side {
        if label[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut comp = Component { left: Vec::new(), right: Vec::new() };
        let mut queue = VecDeque::from([start]);
        label[start] = id;
        while let Some(v) = queue.pop_front() {
            if v < side {
                comp.left.push(v);
                for j in (0..side).filter(|&j| c.is_blue(v, j)) {
                    if label[side + j] == usize::MAX {
                        label[side + j] = id;
                        queue.push_back(side + j);
                    }
                }
            } else {
                let j = v - side;
                comp.right.push(j);
                for i in (0..side).filter(|&i| c.is_blue(i, j)) {
                    if label[i] == usize::MAX {
                        label[i] = id;
                        queue.push_back(i);
                    }
                }
            }
        }
        comp.left.sort_unstable();
        comp.right.sort_unstable();
        components.push(comp);
    }
    ComponentReport { components }
}

/// Reads `A1/B1` off the component holding left vertex 0 and `A2/B2` off the other one.
pub fn certificate_from_components(r: &ComponentReport) -> Result<DisconnectionCertificate, OracleError> {
    let [first, second] = r.components.as_slice() else {
        return Err(OracleError::NotTwoComponents(r.count()));
    };
    Ok(DisconnectionCertificate {
        a1: first.left.clone(),
        a2: second.left.clone(),
        b1: first.right.clone(),
        b2: second.right.clone(),
    }
    .canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_certificate;
    use crate::generator::{make_circulant_instance, make_lemma1_instance};

    #[test]
    fn figure1_spectrum() {
        let s = enumerate_spectrum(&make_lemma1_instance(2)).unwrap();
        assert_eq!(s.counts(), &[4, 0, 16, 0, 4]);
        assert_eq!(s.total(), 24);
    }

    #[test]
    fn n1_spectrum() {
        let s = enumerate_spectrum(&make_lemma1_instance(1)).unwrap();
        assert_eq!(s.counts(), &[1, 0, 1]);
    }

    #[test]
    fn circulant2_full_spectrum() {
        let s = enumerate_spectrum(&make_circulant_instance(2)).unwrap();
        assert!((0..=4).all(|k| s.achievable(k)), "{:?}", s.counts());
    }

    #[test]
    fn guard_is_hard_error() {
        let c = make_circulant_instance(6);
        assert_eq!(enumerate_spectrum(&c), Err(OracleError::TooLarge { n: 6, limit: 5 }));
        assert!(find_matching_with_red(&c, 0).is_err());
    }

    #[test]
    fn first_matching_is_lexicographic() {
        let c = make_lemma1_instance(2);
        let m = find_matching_with_red(&c, 4).unwrap().unwrap();
        assert_eq!(m.as_permutation(), &[0, 1, 2, 3]);
        assert_eq!(find_matching_with_red(&c, 3).unwrap(), None);
    }

    #[test]
    fn figure1_components() {
        let r = blue_components(&make_lemma1_instance(2));
        assert_eq!(r.count(), 2);
        assert_eq!(r.components[0], Component { left: vec![0, 1], right: vec![2, 3] });
        assert_eq!(r.components[1], Component { left: vec![2, 3], right: vec![0, 1] });
        let cert = certificate_from_components(&r).unwrap();
        assert_eq!(cert.a1, vec![0, 1]);
        assert_eq!(cert.b1, vec![2, 3]);
        assert!(verify_certificate(&make_lemma1_instance(2), &cert));
    }

    #[test]
    fn circulant_is_connected() {
        // n = 1 has only the diagonal as blue graph: two copies of K_{1,1}.
        assert_eq!(blue_components(&make_circulant_instance(1)).count(), 2);
        for n in 2..=6 {
            let r = blue_components(&make_circulant_instance(n));
            assert!(r.is_connected(), "n = {n}");
            assert_eq!(certificate_from_components(&r), Err(OracleError::NotTwoComponents(1)));
        }
    }
}
