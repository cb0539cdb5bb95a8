//! File formats.
//!
//! - Cayley table, text: a line holding `n`, then `n` lines of `n`
//!   space-separated integers. JSON: `{"n": .., "table": [[..], ..]}`.
//! - Brace, JSON: `{"n": .., "dot": [[..]], "circ": [[..]]}`. Text: the dot
//!   table block, one blank line, the circ table block.
//! - R-map, JSON: `{"n": .., "r": [[[first, second], ..], ..]}` with
//!   `r[a][b] = R(a, b)`. CSV: header `a,b,first,second`, then one row per
//!   pair in lexicographic order.
//! - Catalog, JSON: `{"metadata": {..}, "braces": [brace, ..]}`.
//! - Expectations, text: `order count_raw count_up_to_iso` per line; `#`
//!   starts a comment.
//!
//! JSON output is compact and newline-terminated, so repeated runs are
//! byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{BiGroup, BraceError, SkewBrace};
use crate::group::{validate_table, GroupTable, TableError};
use crate::search::BraceCatalog;
use crate::ybe::{YbeError, YbeMap};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group table ({which}): {source}")]
    Table { which: &'static str, source: TableError },
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Ybe(#[from] YbeError),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl FormatError {
    /// The table validation error behind this failure, if any.
    pub fn table_error(&self) -> Option<&TableError> {
        match self {
            FormatError::Table { source, .. } => Some(source),
            _ => None,
        }
    }
}

fn table_err(which: &'static str) -> impl FnOnce(TableError) -> FormatError {
    move |source| FormatError::Table { which, source }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    n: usize,
    table: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraceJson {
    n: usize,
    dot: Vec<Vec<i64>>,
    circ: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RMapJson {
    n: usize,
    r: Vec<Vec<[i64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogMetadata {
    pub order: usize,
    pub up_to_iso: bool,
    pub count: usize,
    pub raw_count: usize,
    pub iso_count: usize,
    pub version: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogJson {
    metadata: CatalogMetadata,
    braces: Vec<BraceJson>,
}

fn to_raw(g: &GroupTable) -> Vec<Vec<i64>> {
    g.rows().into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect()
}

fn brace_json(dot: &GroupTable, circ: &GroupTable) -> BraceJson {
    BraceJson { n: dot.order(), dot: to_raw(dot), circ: to_raw(circ) }
}

fn compact(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory serialization cannot fail");
    s.push('\n');
    s
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

// ---------------------------------------------------------------------------
// Text blocks
// ---------------------------------------------------------------------------

/// Splits text into blocks of non-blank lines.
fn blocks(text: &str) -> Vec<Vec<&str>> {
    let mut out: Vec<Vec<&str>> = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else {
            current.push(line);
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn parse_block(block: &[&str]) -> Result<(usize, Vec<Vec<i64>>), FormatError> {
    let (head, body) = block.split_first().ok_or_else(|| FormatError::Syntax("empty table block".into()))?;
    let n: usize = head
        .trim()
        .parse()
        .map_err(|_| FormatError::Syntax(format!("expected table size, found {:?}", head.trim())))?;
    let rows = body
        .iter()
        .map(|line| {
            line.split_whitespace()
                .map(|tok| tok.parse::<i64>().map_err(|_| FormatError::Syntax(format!("not an integer: {tok:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, rows))
}

fn table_text(g: &GroupTable) -> String {
    let mut s = format!("{}\n", g.order());
    for row in g.rows() {
        s.push_str(&row.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

// ---------------------------------------------------------------------------
// Group tables
// ---------------------------------------------------------------------------

/// Parses a Cayley table in either the text or the JSON format.
pub fn parse_table(text: &str) -> Result<GroupTable, FormatError> {
    if looks_like_json(text) {
        let t: TableJson = serde_json::from_str(text)?;
        return validate_table(t.n, &t.table).map_err(table_err("table"));
    }
    match blocks(text).as_slice() {
        [block] => {
            let (n, rows) = parse_block(block)?;
            validate_table(n, &rows).map_err(table_err("table"))
        }
        b => Err(FormatError::Syntax(format!("expected one table block, found {}", b.len()))),
    }
}

pub fn table_to_text(g: &GroupTable) -> String {
    table_text(g)
}

pub fn table_to_json(g: &GroupTable) -> String {
    compact(&TableJson { n: g.order(), table: to_raw(g) })
}

// ---------------------------------------------------------------------------
// Braces
// ---------------------------------------------------------------------------

/// Parses a brace file into its pair of group tables without checking
/// compatibility.
pub fn parse_bigroup(text: &str) -> Result<BiGroup, FormatError> {
    let (dot, circ) = if looks_like_json(text) {
        let b: BraceJson = serde_json::from_str(text)?;
        (
            validate_table(b.n, &b.dot).map_err(table_err("dot"))?,
            validate_table(b.n, &b.circ).map_err(table_err("circ"))?,
        )
    } else {
        match blocks(text).as_slice() {
            [dot, circ] => {
                let (n, rows) = parse_block(dot)?;
                let dot = validate_table(n, &rows).map_err(table_err("dot"))?;
                let (n, rows) = parse_block(circ)?;
                let circ = validate_table(n, &rows).map_err(table_err("circ"))?;
                (dot, circ)
            }
            b => return Err(FormatError::Syntax(format!("expected two table blocks, found {}", b.len()))),
        }
    };
    Ok(BiGroup::new(dot, circ)?)
}

/// Parses a brace file and checks compatibility.
pub fn parse_brace(text: &str) -> Result<SkewBrace, FormatError> {
    let pair = parse_bigroup(text)?;
    Ok(SkewBrace::new(pair.dot().clone(), pair.circ().clone())?)
}

pub fn brace_to_json(b: &BiGroup) -> String {
    compact(&brace_json(b.dot(), b.circ()))
}

pub fn brace_to_text(b: &BiGroup) -> String {
    format!("{}\n{}", table_text(b.dot()), table_text(b.circ()))
}

// ---------------------------------------------------------------------------
// R-maps
// ---------------------------------------------------------------------------

pub fn parse_rmap(text: &str) -> Result<YbeMap, FormatError> {
    let m: RMapJson = serde_json::from_str(text)?;
    if m.r.len() != m.n || m.r.iter().any(|row| row.len() != m.n) {
        return Err(FormatError::Syntax(format!("R-map must be a {0}x{0} array of pairs", m.n)));
    }
    let mut entries = Vec::with_capacity(m.n * m.n);
    for (a, row) in m.r.iter().enumerate() {
        for (b, &[s, t]) in row.iter().enumerate() {
            if s < 0 || t < 0 {
                return Err(FormatError::Syntax(format!("negative entry in R({a}, {b})")));
            }
            entries.push((s as usize, t as usize));
        }
    }
    Ok(YbeMap::new(m.n, entries)?)
}

pub fn rmap_to_json(r: &YbeMap) -> String {
    let n = r.order();
    let rows = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (s, t) = r.apply(a, b);
                    [s as i64, t as i64]
                })
                .collect()
        })
        .collect();
    compact(&RMapJson { n, r: rows })
}

pub fn rmap_to_csv(r: &YbeMap) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "first", "second"]).expect("writing to memory");
    let n = r.order();
    for a in 0..n {
        for b in 0..n {
            let (s, t) = r.apply(a, b);
            w.serialize((a, b, s, t)).expect("writing to memory");
        }
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV output is ASCII")
}

/// A file given to the YBE checker: either an R-map or a brace.
#[derive(Debug)]
pub enum YbeInput {
    Map(YbeMap),
    Brace(BiGroup),
}

/// JSON objects with an `r` field are R-maps; anything else is read as a brace.
pub fn parse_ybe_input(text: &str) -> Result<YbeInput, FormatError> {
    if looks_like_json(text) {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("r").is_some() {
            return parse_rmap(text).map(YbeInput::Map);
        }
    }
    parse_bigroup(text).map(YbeInput::Brace)
}

// ---------------------------------------------------------------------------
// Catalogs and expectations
// ---------------------------------------------------------------------------

pub fn catalog_to_json(catalog: &BraceCatalog) -> String {
    compact(&CatalogJson {
        metadata: CatalogMetadata {
            order: catalog.order(),
            up_to_iso: catalog.up_to_iso(),
            count: catalog.len(),
            raw_count: catalog.raw_count(),
            iso_count: catalog.iso_count(),
            version: crate::VERSION.to_string(),
        },
        braces: catalog.braces().iter().map(|b| brace_json(b.dot(), b.circ())).collect(),
    })
}

/// Reads a catalog back; every entry is re-validated as a skew brace.
pub fn parse_catalog(text: &str) -> Result<(CatalogMetadata, Vec<SkewBrace>), FormatError> {
    let c: CatalogJson = serde_json::from_str(text)?;
    let braces = c
        .braces
        .into_iter()
        .map(|b| {
            let dot = validate_table(b.n, &b.dot).map_err(table_err("dot"))?;
            let circ = validate_table(b.n, &b.circ).map_err(table_err("circ"))?;
            Ok(SkewBrace::new(dot, circ)?)
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok((c.metadata, braces))
}

/// One line of an expectations file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedCounts {
    pub order: usize,
    pub raw: usize,
    pub up_to_iso: usize,
}

pub fn parse_expectations(text: &str) -> Result<Vec<ExpectedCounts>, FormatError> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(|line| {
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|f| f.parse().map_err(|_| FormatError::Syntax(format!("bad count {f:?}"))))
                .collect::<Result<_, _>>()?;
            match fields[..] {
                [order, raw, up_to_iso] => Ok(ExpectedCounts { order, raw, up_to_iso }),
                _ => Err(FormatError::Syntax(format!("expected three fields: {line:?}"))),
            }
        })
        .collect()
}
