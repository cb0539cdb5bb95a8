#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewbrace::{GroupTable, YbeMap};

/// Braid-relation check that materializes `R×id` and `id×R` as maps on
/// `B³` (triples indexed `a*n² + b*n + c`) and composes them as arrays,
/// rightmost factor first. Returns the first failing triple.
pub fn ybe_oracle(r: &YbeMap) -> Option<(usize, usize, usize)> {
    let n = r.order();
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let split = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let mut r12 = vec![0; n * n * n];
    let mut r23 = vec![0; n * n * n];
    for i in 0..n * n * n {
        let (a, b, c) = split(i);
        let (s, t) = r.entries()[a * n + b];
        r12[i] = idx(s, t, c);
        let (s, t) = r.entries()[b * n + c];
        r23[i] = idx(a, s, t);
    }
    let then = |first: &[usize], second: &[usize]| -> Vec<usize> { first.iter().map(|&i| second[i]).collect() };
    let lhs = then(&then(&r12, &r23), &r12);
    let rhs = then(&then(&r23, &r12), &r23);
    (0..n * n * n).find(|&i| lhs[i] != rhs[i]).map(split)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_map(rng: &mut impl Rng, n: usize) -> YbeMap {
    YbeMap::from_fn(n, |_, _| (rng.gen_range(0..n), rng.gen_range(0..n))).unwrap()
}

pub fn random_pair<'a>(rng: &mut impl Rng, tables: &'a [GroupTable]) -> (&'a GroupTable, &'a GroupTable) {
    (tables.choose(rng).unwrap(), tables.choose(rng).unwrap())
}

/// Every map `B×B → B×B` for `n = 2`, indexed by the 4 output pairs.
pub fn all_maps_order_two() -> Vec<YbeMap> {
    let outs = [(0, 0), (0, 1), (1, 0), (1, 1)];
    (0..256)
        .map(|code: usize| {
            let entries = (0..4).map(|k| outs[(code >> (2 * k)) & 3]).collect();
            YbeMap::new(2, entries).unwrap()
        })
        .collect()
}

pub fn z4_radical_circ() -> GroupTable {
    GroupTable::from_fn(4, |x, y| (x + y + 2 * x * y) % 4).unwrap()
}
