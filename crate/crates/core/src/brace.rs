//! Skew left braces, the σ and τ maps, and the identities they satisfy.
//!
//! [`BiGroup`] is any pair of group tables on one carrier. It carries the
//! σ/τ tables and can evaluate every identity of the suite, which is what
//! makes it possible to test identities on pairs that are *not* braces.
//! [`SkewBrace`] is a `BiGroup` that has passed the compatibility check.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::group::{GroupTable, PermError, PermMap};
use crate::sweep::{first_pair_failure, first_triple_failure, Sweep};

/// Outcome of an exhaustive check: either the identity holds everywhere, or
/// it fails and carries the lexicographically first failing tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(first_failure: Option<W>) -> Self {
        first_failure.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// A failing tuple of carrier elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair(a, b) => write!(f, "({a}, {b})"),
            Witness::Triple(a, b, c) => write!(f, "({a}, {b}, {c})"),
        }
    }
}

/// The identities checked on a pair of group tables.
///
/// Variables appear in witnesses in the order they are written in
/// [`Identity::formula`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Compatibility,
    InverseIdentity,
    SigmaHomomorphism,
    TauAntihomomorphism,
    SigmaTwistedProduct,
    SigmaAutomorphism,
    ProductPreservation,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Compatibility,
        Identity::InverseIdentity,
        Identity::SigmaHomomorphism,
        Identity::TauAntihomomorphism,
        Identity::SigmaTwistedProduct,
        Identity::SigmaAutomorphism,
        Identity::ProductPreservation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Compatibility => "compatibility",
            Identity::InverseIdentity => "inverse-identity",
            Identity::SigmaHomomorphism => "sigma-homomorphism",
            Identity::TauAntihomomorphism => "tau-antihomomorphism",
            Identity::SigmaTwistedProduct => "sigma-twisted-product",
            Identity::SigmaAutomorphism => "sigma-automorphism",
            Identity::ProductPreservation => "product-preservation",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Identity::Compatibility => "x∘(y·z) = (x∘y)·x⁻¹·(x∘z)",
            Identity::InverseIdentity => "a⁻¹·(a∘b⁻¹)·a⁻¹ = (a∘b)⁻¹",
            Identity::SigmaHomomorphism => "σ_{x∘y}(z) = σ_x(σ_y(z))",
            Identity::TauAntihomomorphism => "τ_{y∘z}(x) = τ_z(τ_y(x))",
            Identity::SigmaTwistedProduct => "σ_x(y∘z) = σ_x(y)∘σ_{τ_y(x)}(z)",
            Identity::SigmaAutomorphism => "σ_x(y·z) = σ_x(y)·σ_x(z)",
            Identity::ProductPreservation => "σ_a(b)∘τ_b(a) = a∘b",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::InverseIdentity | Identity::ProductPreservation => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("carrier mismatch: dot has order {dot}, circ has order {circ}")]
    CarrierMismatch { dot: usize, circ: usize },
    #[error("not a skew brace: compatibility fails at (x, y, z) = ({0}, {1}, {2})")]
    NotABrace(usize, usize, usize),
}

/// Two group tables on the same carrier, with σ and τ tabulated.
#[derive(Clone)]
pub struct BiGroup {
    dot: GroupTable,
    circ: GroupTable,
    // sigma[x*n+y] = σ_x(y), tau[y*n+x] = τ_y(x)
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

impl BiGroup {
    pub fn new(dot: GroupTable, circ: GroupTable) -> Result<Self, BraceError> {
        let n = dot.order();
        if circ.order() != n {
            return Err(BraceError::CarrierMismatch { dot: n, circ: circ.order() });
        }
        let mut sigma = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                sigma[x * n + y] = dot.multiply(dot.inverse(x), circ.multiply(x, y));
            }
        }
        let mut tau = vec![0; n * n];
        for y in 0..n {
            for x in 0..n {
                let s = circ.inverse(sigma[x * n + y]);
                tau[y * n + x] = circ.multiply(circ.multiply(s, x), y);
            }
        }
        Ok(BiGroup { dot, circ, sigma, tau })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &GroupTable {
        &self.dot
    }

    pub fn circ(&self) -> &GroupTable {
        &self.circ
    }

    /// `σ_x(y) = x⁻¹ · (x ∘ y)`.
    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.order() + y]
    }

    /// `τ_y(x) = σ_x(y)‾ ∘ x ∘ y`, multiplied left to right.
    #[inline]
    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.tau[y * self.order() + x]
    }

    pub fn sigma_perm(&self, x: usize) -> Result<PermMap, PermError> {
        let n = self.order();
        PermMap::new(self.sigma[x * n..(x + 1) * n].to_vec())
    }

    pub fn tau_perm(&self, y: usize) -> Result<PermMap, PermError> {
        let n = self.order();
        PermMap::new(self.tau[y * n..(y + 1) * n].to_vec())
    }

    /// Whether `identity` holds at `tuple`; only the first `arity` entries are read.
    pub fn holds_at(&self, identity: Identity, [x, y, z]: [usize; 3]) -> bool {
        let (dot, circ) = (&self.dot, &self.circ);
        match identity {
            Identity::Compatibility => {
                circ.multiply(x, dot.multiply(y, z))
                    == dot.multiply(
                        dot.multiply(circ.multiply(x, y), dot.inverse(x)),
                        circ.multiply(x, z),
                    )
            }
            Identity::InverseIdentity => {
                let (a, b) = (x, y);
                let ai = dot.inverse(a);
                dot.multiply(dot.multiply(ai, circ.multiply(a, dot.inverse(b))), ai)
                    == dot.inverse(circ.multiply(a, b))
            }
            Identity::SigmaHomomorphism => {
                self.sigma(circ.multiply(x, y), z) == self.sigma(x, self.sigma(y, z))
            }
            Identity::TauAntihomomorphism => {
                self.tau(circ.multiply(y, z), x) == self.tau(z, self.tau(y, x))
            }
            Identity::SigmaTwistedProduct => {
                self.sigma(x, circ.multiply(y, z))
                    == circ.multiply(self.sigma(x, y), self.sigma(self.tau(y, x), z))
            }
            Identity::SigmaAutomorphism => {
                self.sigma(x, dot.multiply(y, z))
                    == dot.multiply(self.sigma(x, y), self.sigma(x, z))
            }
            Identity::ProductPreservation => {
                let (a, b) = (x, y);
                circ.multiply(self.sigma(a, b), self.tau(b, a)) == circ.multiply(a, b)
            }
        }
    }

    /// Exhaustive check of `identity` over all pairs or triples.
    pub fn check(&self, identity: Identity, sweep: &Sweep) -> Verdict<Witness> {
        let n = self.order();
        if identity.arity() == 2 {
            first_pair_failure(sweep, n, |a, b| self.holds_at(identity, [a, b, 0]))
                .map(|(a, b)| Witness::Pair(a, b))
                .into()
        } else {
            first_triple_failure(sweep, n, |a, b, c| self.holds_at(identity, [a, b, c]))
                .map(|(a, b, c)| Witness::Triple(a, b, c))
                .into()
        }
    }

    /// Every failing tuple of `identity`, in lexicographic order.
    pub fn failures(&self, identity: Identity) -> impl Iterator<Item = Witness> + '_ {
        let n = self.order();
        let arity = identity.arity();
        let tail = if arity == 2 { 1 } else { n };
        (0..n)
            .flat_map(move |a| (0..n).flat_map(move |b| (0..tail).map(move |c| [a, b, c])))
            .filter(move |t| !self.holds_at(identity, *t))
            .map(move |[a, b, c]| {
                if arity == 2 {
                    Witness::Pair(a, b)
                } else {
                    Witness::Triple(a, b, c)
                }
            })
    }

    /// Runs every identity in [`Identity::ALL`].
    pub fn identity_suite(&self, sweep: &Sweep) -> Vec<(Identity, Verdict<Witness>)> {
        Identity::ALL.iter().map(|&id| (id, self.check(id, sweep))).collect()
    }
}

impl fmt::Debug for BiGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiGroup").field("dot", &self.dot).field("circ", &self.circ).finish()
    }
}

/// Checks the compatibility condition on all `n³` triples.
pub fn check_compatibility(
    dot: &GroupTable,
    circ: &GroupTable,
) -> Result<Verdict<(usize, usize, usize)>, BraceError> {
    check_compatibility_with(dot, circ, &Sweep::sequential())
}

pub fn check_compatibility_with(
    dot: &GroupTable,
    circ: &GroupTable,
    sweep: &Sweep,
) -> Result<Verdict<(usize, usize, usize)>, BraceError> {
    let n = dot.order();
    if circ.order() != n {
        return Err(BraceError::CarrierMismatch { dot: n, circ: circ.order() });
    }
    Ok(first_triple_failure(sweep, n, |x, y, z| {
        circ.multiply(x, dot.multiply(y, z))
            == dot.multiply(dot.multiply(circ.multiply(x, y), dot.inverse(x)), circ.multiply(x, z))
    })
    .into())
}

/// A skew left brace `(B, ·, ∘)` on the carrier `0..n`.
///
/// Equality, hashing and ordering look at the circ table first, then the
/// dot table.
#[derive(Clone)]
pub struct SkewBrace {
    pair: BiGroup,
}

impl SkewBrace {
    /// Validates compatibility and builds the brace.
    pub fn new(dot: GroupTable, circ: GroupTable) -> Result<Self, BraceError> {
        match check_compatibility(&dot, &circ)? {
            Verdict::Holds => Ok(SkewBrace { pair: BiGroup::new(dot, circ)? }),
            Verdict::Fails((x, y, z)) => Err(BraceError::NotABrace(x, y, z)),
        }
    }

    /// The brace with `∘ = ·`.
    pub fn trivial(g: &GroupTable) -> Self {
        SkewBrace::new(g.clone(), g.clone()).expect("trivial brace satisfies compatibility")
    }

    /// The brace with `x ∘ y = y · x`.
    pub fn opposite(g: &GroupTable) -> Self {
        let circ = GroupTable::from_fn(g.order(), |x, y| g.multiply(y, x))
            .expect("opposite of a group is a group");
        SkewBrace::new(g.clone(), circ).expect("opposite brace satisfies compatibility")
    }

    pub fn order(&self) -> usize {
        self.pair.order()
    }

    pub fn dot(&self) -> &GroupTable {
        self.pair.dot()
    }

    pub fn circ(&self) -> &GroupTable {
        self.pair.circ()
    }

    pub fn as_bigroup(&self) -> &BiGroup {
        &self.pair
    }

    pub fn into_bigroup(self) -> BiGroup {
        self.pair
    }

    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.pair.sigma(x, y)
    }

    #[inline]
    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.pair.tau(y, x)
    }

    pub fn sigma_perm(&self, x: usize) -> PermMap {
        self.pair.sigma_perm(x).expect("σ_x of a skew brace is a bijection")
    }

    pub fn tau_perm(&self, y: usize) -> PermMap {
        self.pair.tau_perm(y).expect("τ_y of a skew brace is a bijection")
    }

    pub fn check_lemma_inverse(&self) -> Verdict<(usize, usize)> {
        self.pair.check(Identity::InverseIdentity, &Sweep::sequential()).map(|w| match w {
            Witness::Pair(a, b) => (a, b),
            Witness::Triple(..) => unreachable!("inverse identity has arity 2"),
        })
    }

    pub fn identity_suite(&self, sweep: &Sweep) -> Vec<(Identity, Verdict<Witness>)> {
        self.pair.identity_suite(sweep)
    }

    /// The brace obtained by renaming elements with `relabel` (which must fix 0).
    pub fn relabel(&self, relabel: &PermMap) -> SkewBrace {
        let pair = BiGroup::new(self.dot().relabel(relabel), self.circ().relabel(relabel))
            .expect("relabeling preserves the carrier");
        SkewBrace { pair }
    }

    fn key(&self) -> (&[usize], &[usize]) {
        (self.circ().entries(), self.dot().entries())
    }
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for SkewBrace {}

impl Hash for SkewBrace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for SkewBrace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SkewBrace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.key().cmp(&other.key()))
    }
}

impl fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewBrace")
            .field("dot", &self.dot().rows())
            .field("circ", &self.circ().rows())
            .finish()
    }
}
