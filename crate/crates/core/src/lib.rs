//! Skew left braces on finite carriers.
//!
//! A skew left brace is a set carrying two group structures, written `·`
//! ("dot") and `∘` ("circ"), tied together by
//!
//! ```text
//! x ∘ (y · z) = (x ∘ y) · x⁻¹ · (x ∘ z)
//! ```
//!
//! Every such brace yields a nondegenerate set-theoretic solution
//! `R(a, b) = (σ_a(b), τ_b(a))` of the Yang-Baxter equation, with
//! `σ_x(y) = x⁻¹ · (x ∘ y)` and `τ_y(x) = σ_x(y)‾ ∘ x ∘ y`.
//!
//! The crate is organised as:
//!
//! - [`group`]: finite groups as validated Cayley tables, permutations and
//!   automorphism groups.
//! - [`brace`]: the brace type, the σ/τ maps and the exhaustive identity suite.
//! - [`ybe`]: the R-map and the Yang-Baxter verifier.
//! - [`search`]: enumeration of groups and skew braces of small order, with a
//!   naive oracle enumerator for cross-validation.
//! - [`io`]: text, JSON and CSV file formats.
//!
//! Elements of a carrier of size `n` are always `0..n`, and `0` is the
//! identity of every group table.

pub mod brace;
pub mod group;
pub mod io;
pub mod search;
pub mod sweep;
pub mod ybe;

pub use brace::{BiGroup, BraceError, Identity, SkewBrace, Verdict, Witness};
pub use group::{GroupTable, PermError, PermMap, TableError};
pub use search::{BraceCatalog, SearchError};
pub use sweep::Sweep;
pub use ybe::YbeMap;

/// Crate version, recorded in exported catalogs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
