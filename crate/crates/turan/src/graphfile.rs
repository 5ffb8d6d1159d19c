//! Line-oriented on-disk format for constructed graphs.
//!
//! ```text
//! # furedi p=2 k=2 q=4 t=3 n=5 m=8 loops=4
//! # vertices: 5 lines of "idx enc_a enc_b" follow
//! 0 0 1
//! ...
//! 0 2          <- m edge lines, u < v, sorted, 0-indexed
//! ```
//!
//! UTF-8, LF endings, trailing newline. Export then import reproduces both
//! the bytes and the adjacency exactly; the importer validates structure
//! (header consistency, sortedness, index ranges) rather than re-deriving
//! the graph, so hand-edited adjacency is accepted as long as it is
//! well-formed. A DIMACS rendering (`p edge n m` + 1-indexed `e u v` lines)
//! is available behind a separate call.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::graph::{FurediGraph, GraphHeader};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {reason}")]
    MalformedFile { line: usize, reason: String },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn malformed(line: usize, reason: impl Into<String>) -> FileError {
    FileError::MalformedFile { line, reason: reason.into() }
}

/// Renders the graph in the native format.
pub fn export_string(g: &FurediGraph) -> String {
    let h = g.header();
    let mut out = String::with_capacity(16 * (g.n() + g.m() as usize + 2));
    out.push_str(&format!(
        "# furedi p={} k={} q={} t={} n={} m={} loops={}\n",
        h.p, h.k, h.q, h.t, h.n, h.m, h.loops
    ));
    out.push_str(&format!(
        "# vertices: {} lines of \"idx enc_a enc_b\" follow\n",
        h.n
    ));
    for (i, &(a, b)) in g.vertices().iter().enumerate() {
        out.push_str(&format!("{i} {a} {b}\n"));
    }
    for u in 0..g.n() {
        for v in g.adjacency()[u].iter_ones() {
            if v > u {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    out
}

pub fn export_graph(g: &FurediGraph, path: &Path) -> Result<(), FileError> {
    fs::write(path, export_string(g))?;
    Ok(())
}

/// Renders the graph as DIMACS (`p edge n m`, then 1-indexed `e u v` lines
/// in the same sorted order as the native format).
pub fn export_dimacs_string(g: &FurediGraph) -> String {
    let mut out = String::with_capacity(8 * (g.m() as usize + 1));
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for u in 0..g.n() {
        for v in g.adjacency()[u].iter_ones() {
            if v > u {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
    }
    out
}

pub fn export_dimacs(g: &FurediGraph, path: &Path) -> Result<(), FileError> {
    fs::write(path, export_dimacs_string(g))?;
    Ok(())
}

pub fn import_graph(path: &Path) -> Result<FurediGraph, FileError> {
    import_str(&fs::read_to_string(path)?)
}

/// Parses the native format, validating header arithmetic, vertex and edge
/// ordering, and declared counts.
pub fn import_str(s: &str) -> Result<FurediGraph, FileError> {
    let mut lines = s.lines().enumerate();

    let (_, header_line) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty file, expected header"))?;
    let header = parse_header(header_line)?;

    let (_, vertex_note) = lines
        .next()
        .ok_or_else(|| FileError::HeaderMismatch("file ends before the vertex section".into()))?;
    let expected_note = format!(
        "# vertices: {} lines of \"idx enc_a enc_b\" follow",
        header.n
    );
    if vertex_note != expected_note {
        return Err(malformed(2, format!("expected `{expected_note}`")));
    }

    let mut vertices: Vec<(u32, u32)> = Vec::with_capacity(header.n);
    for i in 0..header.n {
        let (lineno, line) = lines.next().ok_or_else(|| {
            FileError::HeaderMismatch(format!(
                "file ends after {i} of {} declared vertex lines",
                header.n
            ))
        })?;
        let lineno = lineno + 1;
        let fields = parse_numbers(line, 3, lineno, "vertex line `idx enc_a enc_b`")?;
        let (idx, a, b) = (fields[0], fields[1], fields[2]);
        if idx != i as u64 {
            return Err(malformed(lineno, format!("vertex index {idx}, expected {i}")));
        }
        if a >= header.q || b >= header.q {
            return Err(malformed(
                lineno,
                format!("encoding out of range for field of size {}", header.q),
            ));
        }
        if (a, b) == (0, 0) {
            return Err(malformed(lineno, "the zero pair (0, 0) is not a vertex"));
        }
        let pair = (a as u32, b as u32);
        if let Some(&prev) = vertices.last() {
            if prev >= pair {
                return Err(malformed(lineno, "vertex pairs not strictly increasing"));
            }
        }
        vertices.push(pair);
    }

    let mut adj = vec![Bitset::new(header.n); header.n];
    let mut prev_edge: Option<(u64, u64)> = None;
    for e in 0..header.m {
        let (lineno, line) = lines.next().ok_or_else(|| {
            FileError::HeaderMismatch(format!(
                "file ends after {e} of {} declared edge lines",
                header.m
            ))
        })?;
        let lineno = lineno + 1;
        let fields = parse_numbers(line, 2, lineno, "edge line `u v`")?;
        let (u, v) = (fields[0], fields[1]);
        if u >= v {
            return Err(malformed(lineno, format!("edge ({u}, {v}) needs u < v")));
        }
        if v >= header.n as u64 {
            return Err(malformed(
                lineno,
                format!("vertex {v} out of range for n={}", header.n),
            ));
        }
        if prev_edge.is_some_and(|prev| prev >= (u, v)) {
            return Err(malformed(
                lineno,
                "edge lines not sorted strictly increasing (duplicate or out of order)",
            ));
        }
        prev_edge = Some((u, v));
        adj[u as usize].set(v as usize);
        adj[v as usize].set(u as usize);
    }

    if let Some((lineno, _)) = lines.next() {
        return Err(FileError::HeaderMismatch(format!(
            "trailing content at line {} after {} declared edge lines",
            lineno + 1,
            header.m
        )));
    }

    Ok(FurediGraph::from_parts(header, vertices, adj))
}

fn parse_header(line: &str) -> Result<GraphHeader, FileError> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    let keys = ["p", "k", "q", "t", "n", "m", "loops"];
    if fields.len() != keys.len() + 2 || fields[0] != "#" || fields[1] != "furedi" {
        return Err(malformed(1, "expected `# furedi p=.. k=.. q=.. t=.. n=.. m=.. loops=..`"));
    }
    let mut values = [0u64; 7];
    for (slot, (field, key)) in values.iter_mut().zip(fields[2..].iter().zip(keys)) {
        let val = field
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| malformed(1, format!("expected `{key}=<int>`, got `{field}`")))?;
        *slot = val
            .parse()
            .map_err(|_| malformed(1, format!("`{key}` is not an integer: `{val}`")))?;
    }
    let [p, k, q, t, n, m, loops] = values;
    if p < 2 || k < 1 {
        return Err(malformed(1, "need p >= 2 and k >= 1"));
    }
    let recomputed = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p));
    if recomputed != Some(q) {
        return Err(malformed(1, format!("q={q} is not p^k = {p}^{k}")));
    }
    if t < 1 || (q - 1) % t != 0 {
        return Err(malformed(1, format!("t={t} does not divide q-1={}", q - 1)));
    }
    if n != (q * q - 1) / t {
        return Err(malformed(
            1,
            format!("n={n} but (q^2-1)/t = {}", (q * q - 1) / t),
        ));
    }
    Ok(GraphHeader {
        p,
        k: k as u32,
        q,
        t,
        n: n as usize,
        m,
        loops,
    })
}

fn parse_numbers(
    line: &str,
    arity: usize,
    lineno: usize,
    what: &str,
) -> Result<Vec<u64>, FileError> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    if fields.len() != arity {
        return Err(malformed(lineno, format!("expected {what}")));
    }
    fields
        .iter()
        .map(|f| {
            f.parse()
                .map_err(|_| malformed(lineno, format!("not an integer: `{f}`")))
        })
        .collect()
}
