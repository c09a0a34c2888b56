//! Instance generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, which is portable across platforms, so an instance is a
//! pure function of `(base, seed, steps)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{BalancedColoring, Color};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSeed {
    pub seed: u64,
    /// Number of attempted alternating-rectangle moves.
    pub steps: u64,
}

impl GeneratorSeed {
    pub fn new(seed: u64, steps: u64) -> Self {
        GeneratorSeed { seed, steps }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Red on `{0..n} x {0..n}` and `{n..2n} x {n..2n}`, blue elsewhere. The blue
/// graph is two disjoint copies of `K_{n,n}`, so no perfect matching has an odd
/// number of red edges.
pub fn make_lemma1_instance(n: usize) -> BalancedColoring {
    assert!(n >= 1, "n must be positive");
    BalancedColoring::from_fn(n, |i, j| if (i < n) == (j < n) { Color::Red } else { Color::Blue })
        .expect("block instance is balanced")
}

/// Edge `(x_i, y_j)` is blue iff `(j - i) mod 2n < n`. The blue graph is
/// connected for `n >= 2`; at `n = 1` it is the diagonal.
pub fn make_circulant_instance(n: usize) -> BalancedColoring {
    assert!(n >= 1, "n must be positive");
    let side = 2 * n;
    BalancedColoring::from_fn(n, |i, j| {
        if (j + side - i) % side < n {
            Color::Blue
        } else {
            Color::Red
        }
    })
    .expect("circulant instance is balanced")
}

fn distinct_pair(rng: &mut ChaCha8Rng, side: usize) -> (usize, usize) {
    let a = rng.gen_range(0..side);
    let mut b = rng.gen_range(0..side - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Attempts `steps` random alternating-rectangle flips. Each move draws two
/// distinct rows and two distinct columns; if the 2x2 minor reads `RB/BR` or
/// `BR/RB` all four entries are flipped. Row and column counts never change.
pub fn randomize(c: &BalancedColoring, seed: GeneratorSeed) -> BalancedColoring {
    randomize_counted(c, seed).0
}

/// Like [`randomize`], also returning the number of moves actually applied.
pub fn randomize_counted(c: &BalancedColoring, seed: GeneratorSeed) -> (BalancedColoring, u64) {
    let mut out = c.clone();
    let side = out.side();
    let mut rng = rng_for(seed.seed);
    let mut applied = 0;
    for _ in 0..seed.steps {
        let (i, i2) = distinct_pair(&mut rng, side);
        let (j, j2) = distinct_pair(&mut rng, side);
        if out.flip_rectangle(i, i2, j, j2) {
            applied += 1;
        }
    }
    debug_assert!(crate::coloring::validate_coloring(out.to_raw()).is_ok());
    (out, applied)
}

/// A random instance: the circulant instance after `steps` random flips.
pub fn make_random_instance(n: usize, seed: GeneratorSeed) -> BalancedColoring {
    randomize(&make_circulant_instance(n), seed)
}

/// A random instance whose blue graph is two copies of `K_{n,n}`.
///
/// Such colorings are exactly the relabelings of [`make_lemma1_instance`], and
/// no alternating rectangle stays inside a single-colored block, so the
/// randomization shuffles the left and the right vertices independently.
pub fn make_random_disconnected_instance(n: usize, seed: u64) -> BalancedColoring {
    let base = make_lemma1_instance(n);
    let mut rng = rng_for(seed);
    let mut rows: Vec<usize> = (0..2 * n).collect();
    let mut cols = rows.clone();
    rows.shuffle(&mut rng);
    cols.shuffle(&mut rng);
    base.permuted(&rows, &cols)
}
