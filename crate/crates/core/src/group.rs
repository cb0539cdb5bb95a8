//! Finite groups as Cayley tables.
//!
//! A [`GroupTable`] stores the full multiplication table of a group on the
//! carrier `0..n`. Element `0` is always the identity: tables whose identity
//! sits elsewhere are rejected rather than relabeled, so two tables are equal
//! exactly when their entries are.
//!
//! The built-in `S3` numbering used throughout the crate and its tests is
//!
//! | element | permutation of `{0,1,2}` |
//! |---------|--------------------------|
//! | 0       | identity                 |
//! | 1       | (0 1)                    |
//! | 2       | (0 2)                    |
//! | 3       | (1 2)                    |
//! | 4       | (0 1 2)                  |
//! | 5       | (0 2 1)                  |
//!
//! with `a · b` meaning "apply `b`, then `a`".

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Carrier sizes up to this bound use the plain `n!` automorphism search.
const BRUTE_FORCE_AUT_LIMIT: usize = 8;

/// First violated group axiom found while validating a raw table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table shape mismatch: expected {expected}x{expected}, {detail}")]
    Shape { expected: usize, detail: String },
    #[error("entry {value} at cell ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: i64 },
    #[error("identity violation at cell ({row}, {col}): element 0 must be the identity")]
    IdentityViolation { row: usize, col: usize },
    #[error("row {0} is not a permutation (not a Latin square)")]
    NotLatinRow(usize),
    #[error("column {0} is not a permutation (not a Latin square)")]
    NotLatinColumn(usize),
    #[error("not associative: ({0}·{1})·{2} != {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
}

/// Validated Cayley table of a finite group with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupTable {
    n: usize,
    // row-major, entry a*n+b is a·b
    table: Vec<usize>,
    inv: Vec<usize>,
}

/// Validates an `n×n` array of integers as a group table.
///
/// Checks run in a fixed order (shape, range, identity, rows, columns,
/// associativity) and report the first failure, with associativity
/// witnesses being the lexicographically first failing triple.
pub fn validate_table(n: usize, raw: &[Vec<i64>]) -> Result<GroupTable, TableError> {
    if n == 0 {
        return Err(TableError::Shape { expected: 0, detail: "carrier must be non-empty".into() });
    }
    if raw.len() != n {
        return Err(TableError::Shape { expected: n, detail: format!("found {} rows", raw.len()) });
    }
    if let Some((r, row)) = raw.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(TableError::Shape {
            expected: n,
            detail: format!("row {} has {} entries", r, row.len()),
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for (row, entries) in raw.iter().enumerate() {
        for (col, &value) in entries.iter().enumerate() {
            if value < 0 || value as u64 >= n as u64 {
                return Err(TableError::OutOfRange { row, col, value });
            }
            table.push(value as usize);
        }
    }
    validate_flat(n, table)
}

fn validate_flat(n: usize, table: Vec<usize>) -> Result<GroupTable, TableError> {
    debug_assert_eq!(table.len(), n * n);
    let at = |a: usize, b: usize| table[a * n + b];
    for b in 0..n {
        if at(0, b) != b {
            return Err(TableError::IdentityViolation { row: 0, col: b });
        }
    }
    for a in 0..n {
        if at(a, 0) != a {
            return Err(TableError::IdentityViolation { row: a, col: 0 });
        }
    }
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            if std::mem::replace(&mut seen[at(a, b)], true) {
                return Err(TableError::NotLatinRow(a));
            }
        }
    }
    for b in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for a in 0..n {
            if std::mem::replace(&mut seen[at(a, b)], true) {
                return Err(TableError::NotLatinColumn(b));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(TableError::NotAssociative(a, b, c));
                }
            }
        }
    }
    // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
    let inv = (0..n)
        .map(|a| (0..n).find(|&b| at(a, b) == 0).expect("Latin row contains the identity"))
        .collect();
    Ok(GroupTable { n, table, inv })
}

impl GroupTable {
    /// Builds and validates the table `a·b = op(a, b)`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let raw: Vec<Vec<i64>> =
            (0..n).map(|a| (0..n).map(|b| op(a, b) as i64).collect()).collect();
        validate_table(n, &raw)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let raw: Vec<Vec<i64>> =
            rows.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        validate_table(rows.len(), &raw)
    }

    /// The cyclic group `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("Z/n is a group")
    }

    /// The Klein four-group, realised as bitwise xor on `{0,1,2,3}`.
    pub fn klein_four() -> Self {
        Self::from_fn(4, |a, b| a ^ b).expect("Klein four-group is a group")
    }

    /// The symmetric group on three points, numbered as in the module docs.
    pub fn symmetric3() -> Self {
        const PERMS: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).unwrap();
        Self::from_fn(6, |a, b| {
            let (pa, pb) = (PERMS[a], PERMS[b]);
            index([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
        })
        .expect("S3 is a group")
    }

    /// Direct product `G × H`, with `(g, h)` numbered `g * |H| + h`.
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |a, b| {
            self.multiply(a / m, b / m) * m + other.multiply(a % m, b % m)
        })
        .expect("direct product of groups is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.multiply(a, b) == self.multiply(b, a)))
    }

    /// Order of `a` as a group element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.multiply(x, a);
            k += 1;
        }
        k
    }

    /// The table with every element renamed by `relabel` (old label to new
    /// label): the result satisfies `p(a)·'p(b) = p(a·b)`.
    pub fn relabel(&self, relabel: &PermMap) -> GroupTable {
        relabel_flat(self.n, &self.table, relabel)
            .map(|table| {
                let mut inv = vec![0; self.n];
                for a in 0..self.n {
                    inv[relabel.apply(a)] = relabel.apply(self.inv[a]);
                }
                GroupTable { n: self.n, table, inv }
            })
            .expect("relabeling must fix the identity")
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.multiply(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    /// Greedy generating set: scans elements in increasing order and keeps
    /// each one not already in the span of those kept before it.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for x in 1..self.n {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Whether `p` is an automorphism of this group.
    pub fn is_automorphism(&self, p: &PermMap) -> bool {
        p.len() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| p.apply(self.multiply(a, b)) == self.multiply(p.apply(a), p.apply(b)))
            })
    }
}

/// Relabels a flat `n×n` table; `None` if `relabel` moves `0`.
pub(crate) fn relabel_flat(n: usize, table: &[usize], relabel: &PermMap) -> Option<Vec<usize>> {
    if relabel.apply(0) != 0 {
        return None;
    }
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[relabel.apply(a) * n + relabel.apply(b)] = relabel.apply(table[a * n + b]);
        }
    }
    Some(out)
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("n", &self.n).field("rows", &self.rows()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image {value} at position {index} is out of range")]
    OutOfRange { index: usize, value: usize },
    #[error("not a bijection: {0} is hit twice")]
    NotBijective(usize),
}

/// A bijection on `0..n`, stored as its image array.
///
/// Ordering is lexicographic on the image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermMap {
    image: Vec<usize>,
}

impl PermMap {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (index, &value) in image.iter().enumerate() {
            if value >= n {
                return Err(PermError::OutOfRange { index, value });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(PermError::NotBijective(value));
            }
        }
        Ok(PermMap { image })
    }

    pub fn identity(n: usize) -> Self {
        PermMap { image: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PermMap) -> PermMap {
        PermMap { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    pub fn inverse(&self) -> PermMap {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        PermMap { image }
    }

    /// All permutations of `0..n` fixing `0`, in lexicographic order.
    pub fn fixing_zero(n: usize) -> impl Iterator<Item = PermMap> {
        (1..n).permutations(n.saturating_sub(1)).map(|tail| {
            let mut image = Vec::with_capacity(tail.len() + 1);
            image.push(0);
            image.extend(tail);
            PermMap { image }
        })
    }
}

impl fmt::Display for PermMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.image.iter().join(","))
    }
}

/// All automorphisms of `g`, sorted lexicographically by image array.
///
/// Small carriers are searched over every permutation fixing `0`; larger
/// ones backtrack over generator images of matching element order.
pub fn automorphisms(g: &GroupTable) -> Vec<PermMap> {
    if g.order() <= BRUTE_FORCE_AUT_LIMIT {
        automorphisms_brute_force(g)
    } else {
        automorphisms_by_generators(g)
    }
}

pub(crate) fn automorphisms_brute_force(g: &GroupTable) -> Vec<PermMap> {
    PermMap::fixing_zero(g.order()).filter(|p| g.is_automorphism(p)).collect()
}

pub(crate) fn automorphisms_by_generators(g: &GroupTable) -> Vec<PermMap> {
    let gens = g.generators();
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut images = Vec::with_capacity(gens.len());
    let mut found = Vec::new();
    extend_generator_images(g, &gens, &orders, &mut images, &mut found);
    found.sort();
    found
}

fn extend_generator_images(
    g: &GroupTable,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    found: &mut Vec<PermMap>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(p) = extend_to_homomorphism(g, gens, images) {
            found.push(p);
        }
        return;
    }
    for h in 1..g.order() {
        if orders[h] != orders[gens[depth]] || images.contains(&h) {
            continue;
        }
        images.push(h);
        extend_generator_images(g, gens, orders, images, found);
        images.pop();
    }
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph; `None` if the
/// extension is inconsistent or not injective.
fn extend_to_homomorphism(g: &GroupTable, gens: &[usize], images: &[usize]) -> Option<PermMap> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.multiply(x, s), g.multiply(map[x], t));
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    PermMap::new(map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(rows: &[&[i64]]) -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn z2_is_valid() {
        let g = validate_table(2, &raw(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let err = validate_table(2, &raw(&[&[0, 1], &[1, 1]])).unwrap_err();
        assert_eq!(err, TableError::NotLatinRow(1));
    }

    #[test]
    fn column_violation_is_reported_after_rows() {
        // rows are permutations, column 1 repeats 2
        let err = validate_table(3, &raw(&[&[0, 1, 2], &[1, 2, 0], &[2, 1, 0]])).unwrap_err();
        assert_eq!(err, TableError::NotLatinColumn(1));
    }

    #[test]
    fn smallest_nonassociative_loop_of_order_5() {
        // First normalized Latin square of order 5 (cell-by-cell, row-major,
        // ascending values) that fails associativity; witness recomputed below.
        let rows = raw(&[
            &[0, 1, 2, 3, 4],
            &[1, 0, 3, 4, 2],
            &[2, 3, 4, 0, 1],
            &[3, 4, 1, 2, 0],
            &[4, 2, 0, 1, 3],
        ]);
        let err = validate_table(5, &rows).unwrap_err();
        assert_eq!(err, TableError::NotAssociative(1, 1, 2));
        let t = |a: usize, b: usize| rows[a][b] as usize;
        assert_ne!(t(t(1, 1), 2), t(1, t(1, 2)));
    }

    #[test]
    fn shape_range_and_identity_errors() {
        assert!(matches!(validate_table(2, &raw(&[&[0, 1]])), Err(TableError::Shape { .. })));
        assert!(matches!(validate_table(2, &raw(&[&[0, 1], &[1]])), Err(TableError::Shape { .. })));
        assert!(matches!(validate_table(0, &[]), Err(TableError::Shape { .. })));
        assert_eq!(
            validate_table(2, &raw(&[&[0, 1], &[1, 2]])),
            Err(TableError::OutOfRange { row: 1, col: 1, value: 2 })
        );
        assert_eq!(
            validate_table(2, &raw(&[&[0, -1], &[1, 0]])),
            Err(TableError::OutOfRange { row: 0, col: 1, value: -1 })
        );
        // Z/2 with identity 1
        assert_eq!(
            validate_table(2, &raw(&[&[1, 0], &[0, 1]])),
            Err(TableError::IdentityViolation { row: 0, col: 0 })
        );
    }

    #[test]
    fn cyclic_arithmetic() {
        let z4 = GroupTable::cyclic(4);
        assert_eq!(z4.multiply(1, 3), 0);
        assert_eq!(z4.inverse(1), 3);
        assert_eq!(z4.inverse(0), 0);
        for b in 0..4 {
            assert_eq!(z4.multiply(0, b), b);
        }
    }

    #[test]
    fn s3_numbering() {
        let s3 = GroupTable::symmetric3();
        assert!(!s3.is_abelian());
        for t in 1..=3 {
            assert_eq!(s3.inverse(t), t, "transpositions are involutions");
        }
        assert_eq!(s3.inverse(4), 5);
        // (0 1)(0 2): apply (0 2) then (0 1) sends 0->2->2, 1->1->0, 2->0->1
        assert_eq!(s3.multiply(1, 2), 5);
        assert_eq!(s3.multiply(2, 1), 4);
        assert_eq!(s3.element_order(4), 3);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&GroupTable::cyclic(1)).len(), 1);
        assert_eq!(automorphisms(&GroupTable::cyclic(2)).len(), 1);
        assert_eq!(automorphisms(&GroupTable::cyclic(4)).len(), 2);
        assert_eq!(automorphisms(&GroupTable::klein_four()).len(), 6);
        assert_eq!(automorphisms(&GroupTable::symmetric3()).len(), 6);
        assert_eq!(automorphisms(&GroupTable::cyclic(7)).len(), 6);
    }

    #[test]
    fn automorphism_search_routes_agree() {
        let z2 = GroupTable::cyclic(2);
        let groups = [
            GroupTable::cyclic(4),
            GroupTable::klein_four(),
            GroupTable::symmetric3(),
            GroupTable::cyclic(8),
            z2.direct_product(&GroupTable::cyclic(4)),
            z2.direct_product(&GroupTable::klein_four()),
        ];
        for g in &groups {
            assert_eq!(automorphisms_brute_force(g), automorphisms_by_generators(g), "{g:?}");
        }
    }

    #[test]
    fn large_carrier_uses_generator_search() {
        // Aut(Z/12) ≅ (Z/12)^× has order 4; Aut(Z/3 × Z/2 × Z/2) has order 2·6 = 12.
        let auts = automorphisms(&GroupTable::cyclic(12));
        assert_eq!(auts.len(), 4);
        assert!(auts.windows(2).all(|w| w[0] < w[1]));
        let g = GroupTable::cyclic(3).direct_product(&GroupTable::klein_four());
        assert_eq!(automorphisms(&g).len(), 12);
    }

    #[test]
    fn automorphisms_form_a_group() {
        for g in [GroupTable::klein_four(), GroupTable::symmetric3(), GroupTable::cyclic(5)] {
            let auts = automorphisms(&g);
            assert!(auts[0].is_identity());
            for p in &auts {
                assert!(auts.binary_search(&p.inverse()).is_ok());
                for q in &auts {
                    assert!(auts.binary_search(&p.compose(q)).is_ok());
                }
            }
        }
    }

    #[test]
    fn generators_span_the_group() {
        for g in [GroupTable::klein_four(), GroupTable::symmetric3(), GroupTable::cyclic(6)] {
            let gens = g.generators();
            assert_eq!(g.generated_subgroup(&gens), (0..g.order()).collect::<Vec<_>>());
        }
        assert_eq!(GroupTable::klein_four().generators(), vec![1, 2]);
        assert_eq!(GroupTable::cyclic(6).generators(), vec![1]);
    }

    #[test]
    fn relabel_is_an_isomorphism() {
        let s3 = GroupTable::symmetric3();
        let p = PermMap::new(vec![0, 2, 3, 1, 5, 4]).unwrap();
        let t = s3.relabel(&p);
        for a in 0..6 {
            assert_eq!(t.inverse(p.apply(a)), p.apply(s3.inverse(a)));
            for b in 0..6 {
                assert_eq!(t.multiply(p.apply(a), p.apply(b)), p.apply(s3.multiply(a, b)));
            }
        }
    }

    #[test]
    fn perm_map_rejects_non_bijections() {
        assert_eq!(PermMap::new(vec![0, 0]), Err(PermError::NotBijective(0)));
        assert_eq!(PermMap::new(vec![0, 2]), Err(PermError::OutOfRange { index: 1, value: 2 }));
        let p = PermMap::new(vec![1, 2, 0]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.compose(&p).image(), &[2, 0, 1]);
    }

    #[test]
    fn fixing_zero_is_lexicographic() {
        let all: Vec<_> = PermMap::fixing_zero(4).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(PermMap::fixing_zero(1).count(), 1);
    }
}
