//! Set-theoretic Yang-Baxter maps `R: B×B → B×B` and their verifier.
//!
//! The braid relation is checked in the form
//!
//! ```text
//! (R×id)(id×R)(R×id)(a,b,c) = (id×R)(R×id)(id×R)(a,b,c)
//! ```
//!
//! where the rightmost factor acts first. [`check_ybe`] accepts any map, not
//! only those built from a brace.

use std::fmt;

use thiserror::Error;

use crate::brace::{SkewBrace, Verdict};
use crate::sweep::{first_pair_failure, first_triple_failure, Sweep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YbeError {
    #[error("R-map has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("R({a}, {b}) = ({first}, {second}) is out of range")]
    OutOfRange { a: usize, b: usize, first: usize, second: usize },
}

/// A map on `B×B` stored as its full table of output pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YbeMap {
    n: usize,
    // entry a*n+b is R(a, b)
    r: Vec<(usize, usize)>,
}

impl YbeMap {
    /// `entries` in row-major order: `entries[a*n + b] = R(a, b)`.
    pub fn new(n: usize, entries: Vec<(usize, usize)>) -> Result<Self, YbeError> {
        if entries.len() != n * n {
            return Err(YbeError::Shape { expected: n * n, found: entries.len() });
        }
        if let Some(i) = entries.iter().position(|&(s, t)| s >= n || t >= n) {
            let (first, second) = entries[i];
            return Err(YbeError::OutOfRange { a: i / n, b: i % n, first, second });
        }
        Ok(YbeMap { n, r: entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> (usize, usize)) -> Result<Self, YbeError> {
        Self::new(n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect())
    }

    /// The flip `R(a, b) = (b, a)`.
    pub fn swap(n: usize) -> Self {
        Self::from_fn(n, |a, b| (b, a)).expect("swap stays in range")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        self.r[a * self.n + b]
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.r
    }

    /// Left side of the braid relation; the letters follow the stepwise
    /// evaluation `(a,b,c) → (d,e,c) → (d,f,g) → (h,k,g)`.
    pub fn left_side(&self, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
        let (d, e) = self.apply(a, b);
        let (f, g) = self.apply(e, c);
        let (h, k) = self.apply(d, f);
        (h, k, g)
    }

    /// Right side: `(a,b,c) → (a,q,r) → (s,t,r) → (s,v,w)`.
    pub fn right_side(&self, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
        let (q, r) = self.apply(b, c);
        let (s, t) = self.apply(a, q);
        let (v, w) = self.apply(t, r);
        (s, v, w)
    }
}

impl fmt::Debug for YbeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YbeMap").field("n", &self.n).field("r", &self.r).finish()
    }
}

/// `R(a, b) = (σ_a(b), τ_b(a))`.
pub fn build_r(brace: &SkewBrace) -> YbeMap {
    YbeMap::from_fn(brace.order(), |a, b| (brace.sigma(a, b), brace.tau(b, a)))
        .expect("σ and τ stay in range")
}

pub fn check_ybe(r: &YbeMap) -> Verdict<(usize, usize, usize)> {
    check_ybe_with(r, &Sweep::sequential())
}

/// Exhaustive braid-relation check over all `n³` triples.
pub fn check_ybe_with(r: &YbeMap, sweep: &Sweep) -> Verdict<(usize, usize, usize)> {
    first_triple_failure(sweep, r.order(), |a, b, c| r.left_side(a, b, c) == r.right_side(a, b, c))
        .into()
}

/// Every triple where the braid relation fails, in lexicographic order.
pub fn ybe_failures(r: &YbeMap) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    let n = r.order();
    (0..n)
        .flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .filter(move |&(a, b, c)| r.left_side(a, b, c) != r.right_side(a, b, c))
}

/// Both coordinate families `b ↦ R(a,b).0` and `a ↦ R(a,b).1` are bijections.
pub fn check_nondegenerate(r: &YbeMap) -> bool {
    let n = r.order();
    (0..n).all(|a| is_bijection(n, (0..n).map(|b| r.apply(a, b).0)))
        && (0..n).all(|b| is_bijection(n, (0..n).map(|a| r.apply(a, b).1)))
}

fn is_bijection(n: usize, mut values: impl Iterator<Item = usize>) -> bool {
    let mut seen = vec![false; n];
    values.all(|v| !std::mem::replace(&mut seen[v], true))
}

/// All `n²` output pairs are distinct.
pub fn check_bijective(r: &YbeMap) -> bool {
    let n = r.order();
    let mut seen = vec![false; n * n];
    r.entries().iter().all(|&(s, t)| !std::mem::replace(&mut seen[s * n + t], true))
}

/// `s ∘ t = a ∘ b` whenever `R(a, b) = (s, t)`.
pub fn check_product_preservation(brace: &SkewBrace, r: &YbeMap) -> Verdict<(usize, usize)> {
    let circ = brace.circ();
    assert_eq!(circ.order(), r.order(), "brace and R-map carriers differ");
    first_pair_failure(&Sweep::sequential(), r.order(), |a, b| {
        let (s, t) = r.apply(a, b);
        circ.multiply(s, t) == circ.multiply(a, b)
    })
    .into()
}
