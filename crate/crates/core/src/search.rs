//! Enumeration of groups and skew braces of small order.
//!
//! Two independent enumerators are provided:
//!
//! - [`enumerate_braces`] builds each brace from its σ-map. For a dot group
//!   `G`, a skew brace on `G` is the same thing as an assignment
//!   `x ↦ σ_x ∈ Aut(G)` with `σ_{x·σ_x(y)} = σ_x σ_y` for all `x, y`; the circ
//!   operation is then `x ∘ y = x · σ_x(y)`. The search picks σ for one
//!   element at a time and closes the assignment under that constraint.
//! - [`oracle_enumerate`] generates every group table on the carrier and
//!   keeps the pairs passing the compatibility check. It is only feasible
//!   for order at most [`MAX_ORACLE_ORDER`].
//!
//! Group tables are enumerated as labeled tables with identity `0`. The
//! representative of an isomorphism class is its lexicographically smallest
//! relabeling, and raw brace catalogs range over those representatives as
//! dot groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::brace::{check_compatibility, SkewBrace};
use crate::group::{automorphisms, relabel_flat, validate_table, GroupTable, PermMap};
use crate::sweep::Sweep;

/// Largest order handled by [`enumerate_groups`] and [`enumerate_braces`].
pub const MAX_ORDER: usize = 8;
/// Largest order handled by [`oracle_enumerate`].
pub const MAX_ORACLE_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {order} is not supported (expected 1..={max})")]
    OrderTooLarge { order: usize, max: usize },
}

fn check_order(order: usize, max: usize) -> Result<(), SearchError> {
    if order == 0 || order > max {
        Err(SearchError::OrderTooLarge { order, max })
    } else {
        Ok(())
    }
}

/// Skew braces of one order, sorted by (circ, dot) tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceCatalog {
    order: usize,
    up_to_iso: bool,
    raw_count: usize,
    iso_count: usize,
    braces: Vec<SkewBrace>,
}

impl BraceCatalog {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Whether entries are canonical forms of isomorphism classes.
    pub fn up_to_iso(&self) -> bool {
        self.up_to_iso
    }

    /// Number of braces whose dot table is a canonical group representative.
    pub fn raw_count(&self) -> usize {
        self.raw_count
    }

    /// Number of isomorphism classes.
    pub fn iso_count(&self) -> usize {
        self.iso_count
    }

    pub fn braces(&self) -> &[SkewBrace] {
        &self.braces
    }

    pub fn len(&self) -> usize {
        self.braces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.braces.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

/// Partial group table, filled one left-multiplication row at a time.
#[derive(Clone)]
struct RowState {
    n: usize,
    rows: Vec<Option<Vec<usize>>>,
    // col_used[b*n + v]: some assigned row has value v in column b
    col_used: Vec<bool>,
    processed: Vec<usize>,
}

impl RowState {
    fn new(n: usize) -> Self {
        let mut state =
            RowState { n, rows: vec![None; n], col_used: vec![false; n * n], processed: Vec::new() };
        let ok = state.assign_and_close(0, (0..n).collect());
        debug_assert!(ok);
        state
    }

    fn assign(&mut self, a: usize, row: Vec<usize>, queue: &mut VecDeque<usize>) -> bool {
        let n = self.n;
        if row[0] != a || (0..n).any(|b| self.col_used[b * n + row[b]]) {
            return false;
        }
        for (b, &v) in row.iter().enumerate() {
            self.col_used[b * n + v] = true;
        }
        self.rows[a] = Some(row);
        queue.push_back(a);
        true
    }

    /// Assigns row `a` and closes under `L_{x·y} = L_x ∘ L_y`.
    fn assign_and_close(&mut self, a: usize, row: Vec<usize>) -> bool {
        let mut queue = VecDeque::new();
        if !self.assign(a, row, &mut queue) {
            return false;
        }
        while let Some(w) = queue.pop_front() {
            self.processed.push(w);
            for i in 0..self.processed.len() {
                let y = self.processed[i];
                if !self.close_pair(w, y, &mut queue) || !self.close_pair(y, w, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn close_pair(&mut self, x: usize, y: usize, queue: &mut VecDeque<usize>) -> bool {
        let (lx, ly) = (self.rows[x].as_ref().unwrap(), self.rows[y].as_ref().unwrap());
        let z = lx[y];
        let required: Vec<usize> = ly.iter().map(|&c| lx[c]).collect();
        match &self.rows[z] {
            Some(lz) => *lz == required,
            None => self.assign(z, required, queue),
        }
    }

    fn next_free(&self) -> Option<usize> {
        self.rows.iter().position(Option::is_none)
    }

    fn into_table(self) -> Vec<usize> {
        self.rows.into_iter().flat_map(|r| r.unwrap()).collect()
    }
}

fn search_rows(state: RowState, out: &mut Vec<Vec<usize>>) {
    let Some(a) = state.next_free() else {
        out.push(state.into_table());
        return;
    };
    let n = state.n;
    let mut row = vec![a; n];
    let mut in_row = vec![false; n];
    in_row[a] = true;
    fill_row(&state, a, 1, &mut row, &mut in_row, out);
    debug_assert_eq!(row.len(), n);
}

/// Latin-completes row `a` cell by cell, then closes and recurses.
fn fill_row(
    state: &RowState,
    a: usize,
    col: usize,
    row: &mut Vec<usize>,
    in_row: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = state.n;
    if col == n {
        let mut next = state.clone();
        if next.assign_and_close(a, row.clone()) {
            search_rows(next, out);
        }
        return;
    }
    for v in 0..n {
        if in_row[v] || state.col_used[col * n + v] {
            continue;
        }
        row[col] = v;
        in_row[v] = true;
        fill_row(state, a, col + 1, row, in_row, out);
        in_row[v] = false;
    }
}

/// Every group table on `0..order` with identity `0`, sorted.
pub fn all_group_tables(order: usize) -> Result<Vec<GroupTable>, SearchError> {
    check_order(order, MAX_ORDER)?;
    let mut flat = Vec::new();
    search_rows(RowState::new(order), &mut flat);
    let mut tables: Vec<GroupTable> = flat
        .into_iter()
        .map(|t| {
            let raw: Vec<Vec<i64>> =
                t.chunks(order).map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            validate_table(order, &raw).expect("row closure yields group tables")
        })
        .collect();
    tables.sort();
    Ok(tables)
}

/// One table per isomorphism class of groups of `order`: the smallest
/// relabeling in the class, listed in increasing order.
pub fn enumerate_groups(order: usize) -> Result<Vec<GroupTable>, SearchError> {
    let tables = all_group_tables(order)?;
    let mut claimed: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    // Classes are closed under relabeling, so the first unclaimed table in
    // sorted order is the minimum of its class.
    for t in tables {
        if claimed.contains(t.entries()) {
            continue;
        }
        for p in PermMap::fixing_zero(order) {
            claimed.insert(relabel_flat(order, t.entries(), &p).unwrap());
        }
        reps.push(t);
    }
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Braces via σ-maps
// ---------------------------------------------------------------------------

struct LambdaContext<'a> {
    g: &'a GroupTable,
    auts: &'a [PermMap],
    // compose[i*m + j] = index of auts[i] ∘ auts[j]
    compose: Vec<usize>,
    choice_order: Vec<usize>,
}

impl<'a> LambdaContext<'a> {
    fn new(g: &'a GroupTable, auts: &'a [PermMap]) -> Self {
        let m = auts.len();
        let mut compose = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                let c = auts[i].compose(&auts[j]);
                compose[i * m + j] = auts.binary_search(&c).expect("Aut(G) is closed");
            }
        }
        let gens = g.generators();
        let choice_order =
            gens.iter().copied().chain((1..g.order()).filter(|x| !gens.contains(x))).collect();
        LambdaContext { g, auts, compose, choice_order }
    }

    #[inline]
    fn lambda_apply(&self, aut: usize, y: usize) -> usize {
        self.auts[aut].apply(y)
    }
}

#[derive(Clone)]
struct LambdaState {
    lam: Vec<Option<usize>>,
    processed: Vec<usize>,
}

impl LambdaState {
    fn new(n: usize, ctx: &LambdaContext<'_>) -> Self {
        let mut state = LambdaState { lam: vec![None; n], processed: Vec::new() };
        // auts[0] is the identity (lexicographically smallest image)
        let ok = state.assign_and_close(ctx, 0, 0);
        debug_assert!(ok);
        state
    }

    /// Sets `σ_x = auts[aut]` and closes under `σ_{x·σ_x(y)} = σ_x σ_y`.
    fn assign_and_close(&mut self, ctx: &LambdaContext<'_>, x: usize, aut: usize) -> bool {
        self.lam[x] = Some(aut);
        let mut queue = VecDeque::from([x]);
        let m = ctx.auts.len();
        while let Some(w) = queue.pop_front() {
            self.processed.push(w);
            for i in 0..self.processed.len() {
                let y = self.processed[i];
                for (u, v) in [(w, y), (y, w)] {
                    let (lu, lv) = (self.lam[u].unwrap(), self.lam[v].unwrap());
                    let z = ctx.g.multiply(u, ctx.lambda_apply(lu, v));
                    let required = ctx.compose[lu * m + lv];
                    match self.lam[z] {
                        Some(k) if k != required => return false,
                        Some(_) => {}
                        None => {
                            self.lam[z] = Some(required);
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
        true
    }

    fn next_free(&self, ctx: &LambdaContext<'_>) -> Option<usize> {
        ctx.choice_order.iter().copied().find(|&x| self.lam[x].is_none())
    }
}

fn search_lambda(ctx: &LambdaContext<'_>, state: LambdaState, out: &mut Vec<Vec<usize>>) {
    let Some(x) = state.next_free(ctx) else {
        out.push(state.lam.into_iter().map(Option::unwrap).collect());
        return;
    };
    for aut in 0..ctx.auts.len() {
        let mut next = state.clone();
        if next.assign_and_close(ctx, x, aut) {
            search_lambda(ctx, next, out);
        }
    }
}

fn brace_from_lambda(ctx: &LambdaContext<'_>, lam: &[usize]) -> SkewBrace {
    let g = ctx.g;
    let n = g.order();
    let raw: Vec<Vec<i64>> = (0..n)
        .map(|x| (0..n).map(|y| g.multiply(x, ctx.lambda_apply(lam[x], y)) as i64).collect())
        .collect();
    let circ = validate_table(n, &raw).expect("σ-search produced a non-group circ table");
    SkewBrace::new(g.clone(), circ).expect("σ-search produced an incompatible pair")
}

/// All skew braces with dot group `g`, sorted.
pub fn enumerate_braces_on_group(g: &GroupTable) -> Vec<SkewBrace> {
    enumerate_braces_on_group_with(g, &Sweep::sequential())
}

/// As [`enumerate_braces_on_group`]; the top-level branches (the choices of
/// σ for the first free element) are distributed over `sweep`.
pub fn enumerate_braces_on_group_with(g: &GroupTable, sweep: &Sweep) -> Vec<SkewBrace> {
    let auts = automorphisms(g);
    let ctx = LambdaContext::new(g, &auts);
    let root = LambdaState::new(g.order(), &ctx);
    let lambdas: Vec<Vec<usize>> = match root.next_free(&ctx) {
        None => vec![root.lam.iter().map(|l| l.unwrap()).collect()],
        Some(x) => sweep
            .map((0..auts.len()).collect(), |aut| {
                let mut out = Vec::new();
                let mut next = root.clone();
                if next.assign_and_close(&ctx, x, aut) {
                    search_lambda(&ctx, next, &mut out);
                }
                out
            })
            .into_iter()
            .flatten()
            .collect(),
    };
    let mut braces: Vec<SkewBrace> =
        sweep.map(lambdas, |lam| brace_from_lambda(&ctx, &lam));
    braces.sort();
    braces
}

/// Splits braces sharing the dot group `g` into orbits under `Aut(g)`,
/// which are exactly their isomorphism classes; returns one member of each.
fn orbit_representatives<'b>(braces: &'b [SkewBrace], auts: &[PermMap]) -> Vec<&'b SkewBrace> {
    let mut claimed: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    for b in braces {
        if claimed.contains(b.circ().entries()) {
            continue;
        }
        for p in auts {
            claimed.insert(relabel_flat(b.order(), b.circ().entries(), p).unwrap());
        }
        reps.push(b);
    }
    reps
}

/// All skew braces of `order`, as raw tables or as canonical forms of
/// isomorphism classes.
pub fn enumerate_braces(order: usize, up_to_iso: bool) -> Result<BraceCatalog, SearchError> {
    enumerate_braces_with(order, up_to_iso, &Sweep::sequential())
}

pub fn enumerate_braces_with(
    order: usize,
    up_to_iso: bool,
    sweep: &Sweep,
) -> Result<BraceCatalog, SearchError> {
    let groups = enumerate_groups(order)?;
    let mut raw = Vec::new();
    let mut classes = Vec::new();
    for g in &groups {
        let on_g = enumerate_braces_on_group_with(g, sweep);
        let auts = automorphisms(g);
        classes.extend(orbit_representatives(&on_g, &auts).into_iter().cloned());
        raw.extend(on_g);
    }
    let (raw_count, iso_count) = (raw.len(), classes.len());
    let mut braces = if up_to_iso { sweep.map(classes, |b| canonical_form(&b)) } else { raw };
    braces.sort();
    Ok(BraceCatalog { order, up_to_iso, raw_count, iso_count, braces })
}

// ---------------------------------------------------------------------------
// Isomorphism and canonical form
// ---------------------------------------------------------------------------

/// The smallest relabeling (fixing 0) of `brace`, comparing circ tables
/// first and dot tables second.
pub fn canonical_form(brace: &SkewBrace) -> SkewBrace {
    let n = brace.order();
    let (circ, dot) = (brace.circ().entries(), brace.dot().entries());
    let entry = |p: &PermMap, inv: &[usize], k: usize| {
        let (table, k) = if k < n * n { (circ, k) } else { (dot, k - n * n) };
        p.apply(table[inv[k / n] * n + inv[k % n]])
    };
    let mut best: Option<(Vec<usize>, PermMap)> = None;
    for p in PermMap::fixing_zero(n) {
        let inv = p.inverse();
        let inv = inv.image();
        let better = match &best {
            None => true,
            Some((current, _)) => {
                // row 0 is the identity row in every relabeling
                (n..2 * n * n)
                    .map(|k| (entry(&p, inv, k), current[k]))
                    .find(|(v, c)| v != c)
                    .is_some_and(|(v, c)| v < c)
            }
        };
        if better {
            let key = (0..2 * n * n).map(|k| entry(&p, inv, k)).collect();
            best = Some((key, p));
        }
    }
    let (_, p) = best.expect("at least the identity relabeling exists");
    brace.relabel(&p)
}

/// Whether some bijection fixing 0 carries both operations of `a` onto `b`.
pub fn brace_isomorphic(a: &SkewBrace, b: &SkewBrace) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    let preserves = |p: &PermMap, from: &GroupTable, to: &GroupTable| {
        (0..n).all(|x| (0..n).all(|y| p.apply(from.multiply(x, y)) == to.multiply(p.apply(x), p.apply(y))))
    };
    if a.dot() == b.dot() {
        automorphisms(a.dot()).iter().any(|p| preserves(p, a.circ(), b.circ()))
    } else {
        PermMap::fixing_zero(n).any(|p| preserves(&p, a.dot(), b.dot()) && preserves(&p, a.circ(), b.circ()))
    }
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

/// Group tables by plain cell-by-cell Latin-square search with the identity
/// row and column fixed, filtered by a full associativity test.
fn oracle_group_tables(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let inner = n - 1;
        if k == inner * inner {
            let assoc = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
            });
            if assoc {
                out.push(t.clone());
            }
            return;
        }
        let (r, c) = (1 + k / inner, 1 + k % inner);
        for v in 0..n {
            let clash = (0..c).any(|j| t[r * n + j] == v) || (0..r).any(|i| t[i * n + c] == v);
            if !clash {
                t[r * n + c] = v;
                rec(n, k + 1, t, out);
            }
        }
        t[r * n + c] = usize::MAX;
    }
    let mut t = vec![usize::MAX; n * n];
    for i in 0..n {
        t[i] = i;
        t[i * n] = i;
    }
    let mut out = Vec::new();
    rec(n, 0, &mut t, &mut out);
    out.sort();
    out
}

fn oracle_relabel(n: usize, t: &[usize], p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = p[t[a * n + b]];
        }
    }
    out
}

fn oracle_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut vec![0], &mut out);
    out
}

/// Brute-force enumeration: every pair (dot, circ) of group tables, with
/// dot restricted to class representatives, filtered by compatibility.
pub fn oracle_enumerate(order: usize, up_to_iso: bool) -> Result<BraceCatalog, SearchError> {
    check_order(order, MAX_ORACLE_ORDER)?;
    let n = order;
    let tables = oracle_group_tables(n);
    let perms = oracle_perms(n);
    let as_group = |t: &[usize]| {
        let raw: Vec<Vec<i64>> = t.chunks(n).map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        validate_table(n, &raw).expect("oracle tables are groups")
    };
    let reps: Vec<&Vec<usize>> = tables
        .iter()
        .filter(|t| perms.iter().all(|p| oracle_relabel(n, t, p) >= **t))
        .collect();

    let mut raw = Vec::new();
    for dot in &reps {
        let dot = as_group(dot);
        for circ in &tables {
            let circ = as_group(circ);
            if check_compatibility(&dot, &circ).expect("same carrier").holds() {
                raw.push(SkewBrace::new(dot.clone(), circ).expect("compatibility holds"));
            }
        }
    }
    let canonical: BTreeSet<(Vec<usize>, Vec<usize>)> = raw
        .iter()
        .map(|b| {
            perms
                .iter()
                .map(|p| {
                    (oracle_relabel(n, b.circ().entries(), p), oracle_relabel(n, b.dot().entries(), p))
                })
                .min()
                .unwrap()
        })
        .collect();
    let (raw_count, iso_count) = (raw.len(), canonical.len());
    let mut braces = if up_to_iso {
        canonical
            .into_iter()
            .map(|(circ, dot)| SkewBrace::new(as_group(&dot), as_group(&circ)).expect("relabeled brace"))
            .collect()
    } else {
        raw
    };
    braces.sort();
    Ok(BraceCatalog { order, up_to_iso, raw_count, iso_count, braces })
}

/// Group tables from the oracle's Latin-square search, for cross-checks.
pub fn oracle_all_group_tables(order: usize) -> Result<Vec<GroupTable>, SearchError> {
    check_order(order, MAX_ORACLE_ORDER + 1)?;
    Ok(oracle_group_tables(order)
        .into_iter()
        .map(|t| GroupTable::from_rows(&t.chunks(order).map(<[usize]>::to_vec).collect::<Vec<_>>()).unwrap())
        .collect())
}
