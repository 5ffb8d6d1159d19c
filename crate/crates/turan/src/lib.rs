//! Construction and certification of Kővári–Sós–Turán extremal graphs.
//!
//! The library builds the graphs `G(q, t)`: vertices are the orbit classes
//! `<a, b>` of nonzero pairs over `GF(q)` under the diagonal action of the
//! multiplicative subgroup `H` of order `t`, with `<a, b> ~ <x, y>` whenever
//! `a*x + b*y` lands in `H`. For suitable `(q, t)` these graphs are extremal
//! examples avoiding a complete bipartite subgraph `K_{a,b}`, and this crate
//! certifies that avoidance by exhaustive search rather than by trusting the
//! algebra:
//!
//! * [`field`] — exact `GF(p^k)` arithmetic with canonical (smallest-encoding)
//!   modulus and generator, multiplicative subgroups, and the norm map.
//! * [`graph`] — orbit canonicalization, graph construction, and the exact
//!   vertex/edge count formulas.
//! * [`graphfile`] — a line-oriented on-disk format with byte-exact round
//!   trips, plus optional DIMACS export.
//! * [`verify`] — the `K_{a,b}`-freeness certifier (deterministic under any
//!   worker count), solution-count oracles for the two supporting lemmas, and
//!   a theorem suite bundling the published claims for a given `(q, t, r)`.
//! * [`report`] — bounds tables comparing edge counts against the asymptotic
//!   targets, as aligned text or CSV.
//!
//! Certificates and lemma reports serialize to single `key=value` lines so
//! runs can be diffed; all scans are exhaustive within an explicit budget and
//! reproducible from a seed.

pub mod bitset;
pub mod field;
pub mod graph;
pub mod graphfile;
pub mod report;
pub mod verify;

pub use bitset::Bitset;
pub use field::{FieldElement, FieldError, FieldSpec, Subgroup, DEFAULT_SIZE_LIMIT};
pub use graph::{FurediGraph, GraphError, GraphHeader, DEFAULT_VERTEX_LIMIT};
pub use graphfile::FileError;
pub use report::{bounds_row, bounds_table, csv_header, csv_line, format_table, BoundsRow, Family};
pub use verify::{
    certify_kab_free, max_common_neighbors, theorem_suite, verify_lemma_ag, verify_lemma_l,
    AgMode, FreenessCertificate, LemmaId, LemmaReport, MaxCommon, SuiteEntry, SuiteParams,
    TheoremId, Verdict, VerifyError, VerifyOptions, DEFAULT_BUDGET,
};
