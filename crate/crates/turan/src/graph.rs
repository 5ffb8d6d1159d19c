//! Construction of the graphs `G(q, t)`.
//!
//! Fix `GF(q)` and the multiplicative subgroup `H` of order `t | q - 1`. The
//! nonzero pairs `(a, b)` in `GF(q)^2` split into orbits under the diagonal
//! action `h * (a, b) = (ha, hb)`; each orbit `<a, b>` has exactly `t`
//! elements, giving `n = (q^2 - 1) / t` orbit classes. Two classes are
//! adjacent when `a x + b y` lands in `H`, a condition independent of the
//! chosen representatives because `H` is closed under multiplication.
//!
//! A class may satisfy the condition against itself (`a^2 + b^2` in `H`);
//! such loops are dropped from the edge set but counted, since the paper's
//! degree bookkeeping (every degree is `q - 1` or `q`) depends on them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::{FieldElement, FieldError, FieldSpec, Subgroup};

/// Default ceiling on the number of vertices [`build_graph`] will accept.
///
/// The adjacency matrix costs `n^2` bits; this cap keeps a careless
/// `G(q, 1)` at large `q` from allocating tens of gigabytes. Override with
/// [`build_graph_with_limit`].
pub const DEFAULT_VERTEX_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("the zero pair (0, 0) has no orbit class")]
    ZeroPair,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("graph would have {n} vertices, above the limit {limit}")]
    TooManyVertices { n: u64, limit: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Identifying parameters and counts of a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHeader {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub t: u64,
    pub n: usize,
    pub m: u64,
    pub loops: u64,
}

/// An orbit-class graph `G(q, t)`, with vertices sorted by their canonical
/// representative pair and adjacency stored as bitset rows.
pub struct FurediGraph {
    header: GraphHeader,
    /// Canonical representative `(enc a, enc b)` per vertex, lexicographically
    /// increasing.
    vertices: Vec<(u32, u32)>,
    adj: Vec<Bitset>,
}

impl fmt::Debug for FurediGraph {
    /// Header only; the adjacency rows are noise at any interesting size.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FurediGraph({:?})", self.header)
    }
}

impl FurediGraph {
    pub fn header(&self) -> &GraphHeader {
        &self.header
    }

    pub fn n(&self) -> usize {
        self.header.n
    }

    pub fn m(&self) -> u64 {
        self.header.m
    }

    /// Number of orbit classes whose self-product `a^2 + b^2` lies in `H`;
    /// these contribute no edge.
    pub fn loops(&self) -> u64 {
        self.header.loops
    }

    pub fn vertices(&self) -> &[(u32, u32)] {
        &self.vertices
    }

    /// Adjacency rows; row `u` has bit `v` set iff `u ~ v`. Symmetric and
    /// loop-free.
    pub fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].get(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    /// Map from degree to the number of vertices having it.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for row in &self.adj {
            *hist.entry(row.count()).or_insert(0) += 1;
        }
        hist
    }

    pub(crate) fn from_parts(
        header: GraphHeader,
        vertices: Vec<(u32, u32)>,
        adj: Vec<Bitset>,
    ) -> Self {
        FurediGraph { header, vertices, adj }
    }
}

/// The canonical representative of the orbit class of `(a, b)`: the
/// lexicographically smallest `(h a, h b)` over `h` in `H`, compared by
/// encoding.
pub fn canonical_rep(
    h: &Subgroup,
    a: FieldElement,
    b: FieldElement,
) -> Result<(FieldElement, FieldElement), GraphError> {
    let f = h.field();
    f.check(a)?;
    f.check(b)?;
    if a.enc() == 0 && b.enc() == 0 {
        return Err(GraphError::ZeroPair);
    }
    let (ra, rb) = canonical_rep_enc(f, h, a.enc() as u32, b.enc() as u32);
    Ok((f.decode(ra as u64)?, f.decode(rb as u64)?))
}

pub(crate) fn canonical_rep_enc(f: &FieldSpec, h: &Subgroup, a: u32, b: u32) -> (u32, u32) {
    debug_assert!(a != 0 || b != 0);
    let mut best = (u32::MAX, u32::MAX);
    for &he in h.element_encs() {
        let cand = (f.mul_enc(he, a), f.mul_enc(he, b));
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Builds `G(q, t)` over the given field with the default vertex limit.
pub fn build_graph(field: &FieldSpec, t: u64) -> Result<FurediGraph, GraphError> {
    build_graph_with_limit(field, t, DEFAULT_VERTEX_LIMIT)
}

/// Builds `G(q, t)`, requiring `(q^2 - 1) / t <= max_vertices`.
pub fn build_graph_with_limit(
    field: &FieldSpec,
    t: u64,
    max_vertices: u64,
) -> Result<FurediGraph, GraphError> {
    let sub = field.subgroup(t)?;
    let q = field.q();
    let n_expected = (q * q - 1) / t;
    if n_expected > max_vertices {
        return Err(GraphError::TooManyVertices { n: n_expected, limit: max_vertices });
    }

    // A pair is kept iff it is its own canonical representative; ascending
    // scan order leaves the vertex list sorted.
    let mut vertices = Vec::with_capacity(n_expected as usize);
    for a in 0..q as u32 {
        for b in 0..q as u32 {
            if (a, b) == (0, 0) {
                continue;
            }
            if canonical_rep_enc(field, &sub, a, b) == (a, b) {
                vertices.push((a, b));
            }
        }
    }
    debug_assert_eq!(vertices.len() as u64, n_expected);

    let n = vertices.len();
    let mut adj = vec![Bitset::new(n); n];
    let mut loops = 0u64;
    for i in 0..n {
        let (a, b) = vertices[i];
        for j in i..n {
            let (x, y) = vertices[j];
            let s = field.add_enc(field.mul_enc(a, x), field.mul_enc(b, y));
            if sub.contains_enc(s) {
                if i == j {
                    loops += 1;
                } else {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
    }
    let m = adj.iter().map(|row| row.count() as u64).sum::<u64>() / 2;

    let header = GraphHeader {
        p: field.p(),
        k: field.k(),
        q,
        t,
        n,
        m,
        loops,
    };
    Ok(FurediGraph::from_parts(header, vertices, adj))
}

/// Exact edge count of `G(q^2, q + 1)` for a prime power `q`:
/// `(q^5 - q^4 + q^3 - 2 q^2 + 1) / 2` for odd `q`, and without the `+1` for
/// even `q` (the loop bookkeeping differs by characteristic).
pub fn expected_edge_count_g2(base_q: u64) -> Result<u64, GraphError> {
    if prime_power(base_q).is_none() {
        return Err(GraphError::NotPrimePower(base_q));
    }
    let q = base_q;
    let core = q * q * q * q * q - q * q * q * q + q * q * q - 2 * q * q;
    Ok(if q % 2 == 1 { core.div_ceil(2) } else { core / 2 })
}

/// Vertex count `(q^(r-1) + 1)(q - 1)` of the general family member built
/// over `GF(q^(r-1))` with subgroup order `(q^(r-1) - 1)/(q - 1)`.
///
/// Panics if `r < 2`.
pub fn expected_vertex_count_general(base_q: u64, r: u32) -> u64 {
    assert!(r >= 2, "the general family needs r >= 2");
    (base_q.pow(r - 1) + 1) * (base_q - 1)
}

/// Decomposes `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn graph(p: u64, k: u32, t: u64) -> FurediGraph {
        build_graph(&make_field(p, k).unwrap(), t).unwrap()
    }

    /// Counts and degree histograms frozen from an independent
    /// implementation.
    #[test]
    fn frozen_counts_and_degrees() {
        #[rustfmt::skip]
        #[allow(clippy::type_complexity)]
        let expected: &[(u64, u32, u64, usize, u64, u64, &[(usize, usize)])] = &[
            (2, 2, 3,   5,     8,  4, &[(3, 4), (4, 1)]),
            (3, 2, 4,   20,   86,  8, &[(8, 8), (9, 12)]),
            (2, 4, 5,   51,  400, 16, &[(15, 16), (16, 35)]),
            (5, 2, 6,  104, 1288, 24, &[(24, 24), (25, 80)]),
            (5, 1, 2,   12,   28,  4, &[(4, 4), (5, 8)]),
            (7, 1, 3,   16,   52,  8, &[(6, 8), (7, 8)]),
            (13, 1, 4,  42,  267, 12, &[(12, 12), (13, 30)]),
            (5, 1, 1,   24,   58,  4, &[(4, 4), (5, 20)]),
            (5, 2, 12,  52,  638, 24, &[(24, 24), (25, 28)]),
            (3, 3, 13,  56,  742, 28, &[(26, 28), (27, 28)]),
            (2, 3, 7,    9,   32,  8, &[(7, 8), (8, 1)]),
            (3, 2, 8,   10,   41,  8, &[(8, 8), (9, 2)]),
            (3, 2, 2,   40,  176,  8, &[(8, 8), (9, 32)]),
            (3, 2, 1,   80,  356,  8, &[(8, 8), (9, 72)]),
        ];
        for &(p, k, t, n, m, loops, hist) in expected {
            let g = graph(p, k, t);
            assert_eq!(g.n(), n, "n of G({p}^{k}, {t})");
            assert_eq!(g.m(), m, "m of G({p}^{k}, {t})");
            assert_eq!(g.loops(), loops, "loops of G({p}^{k}, {t})");
            let got: Vec<(usize, usize)> =
                g.degree_histogram().into_iter().collect();
            assert_eq!(got, hist, "degrees of G({p}^{k}, {t})");
        }
    }

    #[test]
    fn vertex_count_formula() {
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (11, 1)] {
            let f = make_field(p, k).unwrap();
            let q = f.q();
            let mut t = 1;
            while t < q {
                if (q - 1).is_multiple_of(t) {
                    let g = build_graph(&f, t).unwrap();
                    assert_eq!(g.n() as u64, (q * q - 1) / t, "G({q}, {t})");
                }
                t += 1;
            }
        }
        assert_eq!(expected_vertex_count_general(3, 3), 20);
        assert_eq!(expected_vertex_count_general(2, 4), 9);
        assert_eq!(expected_vertex_count_general(3, 4), 56);
        assert_eq!(expected_vertex_count_general(9, 3), 656);
    }

    #[test]
    fn edge_count_formula_matches_construction() {
        let cases: &[(u64, u64, u32)] = &[(2, 2, 2), (3, 3, 2), (4, 2, 4), (5, 5, 2)];
        for &(base_q, p, k) in cases {
            let g = graph(p, k, base_q + 1);
            assert_eq!(
                g.m(),
                expected_edge_count_g2(base_q).unwrap(),
                "edge formula at q = {base_q}"
            );
        }
        assert_eq!(expected_edge_count_g2(7).unwrap(), 7326);
        assert!(matches!(
            expected_edge_count_g2(6).unwrap_err(),
            GraphError::NotPrimePower(6)
        ));
    }

    #[test]
    fn orbit_classes_partition_nonzero_pairs() {
        // Every nonzero pair maps to an actual vertex, orbits have exactly t
        // elements, and the representative is orbit-invariant.
        let f = make_field(3, 2).unwrap();
        let sub = f.subgroup(4).unwrap();
        let g = build_graph(&f, 4).unwrap();
        let mut seen = 0usize;
        for a in 0..9u32 {
            for b in 0..9u32 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let rep = canonical_rep_enc(&f, &sub, a, b);
                assert!(g.vertices().binary_search(&rep).is_ok(), "({a},{b})");
                for &h in sub.element_encs() {
                    let moved = (f.mul_enc(h, a), f.mul_enc(h, b));
                    assert_eq!(
                        canonical_rep_enc(&f, &sub, moved.0, moved.1),
                        rep,
                        "invariance at ({a},{b}) * {h}"
                    );
                }
                seen += 1;
            }
        }
        assert_eq!(seen, 80);
        assert_eq!(g.n() * 4, 80, "orbits partition into classes of size t");
    }

    #[test]
    fn canonical_rep_typed_api() {
        let f = make_field(3, 2).unwrap();
        let sub = f.subgroup(4).unwrap();
        let zero = f.zero();
        let one = f.one();
        let two = f.decode(2).unwrap();
        let (ra, rb) = canonical_rep(&sub, zero, two).unwrap();
        assert_eq!((ra.enc(), rb.enc()), (0, 1));
        assert_eq!(canonical_rep(&sub, zero, one).unwrap(), (ra, rb));
        assert!(matches!(
            canonical_rep(&sub, zero, zero).unwrap_err(),
            GraphError::ZeroPair
        ));
        let foreign = make_field(2, 2).unwrap().one();
        assert!(matches!(
            canonical_rep(&sub, foreign, one).unwrap_err(),
            GraphError::Field(FieldError::FieldMismatch)
        ));
    }

    #[test]
    fn adjacency_is_symmetric_and_loop_free() {
        let g = graph(3, 2, 4);
        for u in 0..g.n() {
            assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        // Spot-check adjacency against the defining condition.
        let f = make_field(3, 2).unwrap();
        let sub = f.subgroup(4).unwrap();
        for u in 0..g.n() {
            let (a, b) = g.vertices()[u];
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let (x, y) = g.vertices()[v];
                let s = f.add_enc(f.mul_enc(a, x), f.mul_enc(b, y));
                assert_eq!(g.has_edge(u, v), sub.contains_enc(s));
            }
        }
    }

    #[test]
    fn build_errors() {
        let f = make_field(3, 2).unwrap();
        assert!(matches!(
            build_graph(&f, 5).unwrap_err(),
            GraphError::Field(FieldError::OrderDoesNotDivide { t: 5, group_order: 8 })
        ));
        assert!(matches!(
            build_graph_with_limit(&f, 1, 10).unwrap_err(),
            GraphError::TooManyVertices { n: 80, limit: 10 }
        ));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }
}
