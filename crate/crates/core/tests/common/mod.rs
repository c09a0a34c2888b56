#![allow(dead_code)]

use exact_matching::generator::{
    make_circulant_instance, make_lemma1_instance, make_random_disconnected_instance, make_random_instance,
    randomize, GeneratorSeed,
};
use exact_matching::permanent::BinaryMatrix;
use exact_matching::BalancedColoring;

pub struct Instance {
    pub label: String,
    pub coloring: BalancedColoring,
}

fn inst(label: String, coloring: BalancedColoring) -> Instance {
    Instance { label, coloring }
}

/// Seeded random instances with `n` in {2, 3, 4}; walk lengths vary from a
/// handful of flips (close to the circulant or block structure) to thoroughly mixed.
pub fn random_corpus(count: u64) -> Vec<Instance> {
    const STEPS: [u64; 4] = [3, 20, 150, 2000];
    (0..count)
        .map(|seed| {
            let n = 2 + (seed % 3) as usize;
            let steps = STEPS[((seed / 3) % 4) as usize];
            if seed % 5 == 4 {
                // Start next to the disconnected block instance.
                let c = randomize(&make_lemma1_instance(n), GeneratorSeed::new(seed, steps.min(8)));
                inst(format!("lemma1-walk n={n} seed={seed}"), c)
            } else {
                let c = make_random_instance(n, GeneratorSeed::new(seed, steps));
                inst(format!("random n={n} seed={seed} steps={steps}"), c)
            }
        })
        .collect()
}

pub fn fixtures() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(inst(format!("lemma1 n={n}"), make_lemma1_instance(n)));
        out.push(inst(format!("circulant n={n}"), make_circulant_instance(n)));
    }
    for n in 2..=4 {
        for seed in 0..4 {
            out.push(inst(format!("random-disconnected n={n} seed={seed}"), make_random_disconnected_instance(n, seed)));
        }
    }
    out
}

/// The desk-scale corpus: 200 random instances plus all fixtures.
pub fn corpus() -> Vec<Instance> {
    let mut out = random_corpus(200);
    out.extend(fixtures());
    out
}

/// Permanent as a sum over all permutations.
pub fn naive_permanent(m: &BinaryMatrix) -> u128 {
    fn go(m: &BinaryMatrix, row: usize, used: &mut Vec<bool>) -> u128 {
        if row == m.size() {
            return 1;
        }
        let mut total = 0;
        for col in 0..m.size() {
            if !used[col] && m.get(row, col) == 1 {
                used[col] = true;
                total += go(m, row + 1, used);
                used[col] = false;
            }
        }
        total
    }
    go(m, 0, &mut vec![false; m.size()])
}

/// True iff the rows of `a` restricted to `b` are all `want`.
pub fn block_is(c: &BalancedColoring, rows: &[usize], cols: &[usize], want: exact_matching::Color) -> bool {
    rows.iter().all(|&i| cols.iter().all(|&j| c.color(i, j) == want))
}
