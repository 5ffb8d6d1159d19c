//! Exhaustive freeness certification and the supporting lemma oracles.
//!
//! The central quantity is the maximum, over all `a`-subsets `S` of the
//! vertices, of the common-neighborhood size `|∩_{v in S} N(v)|`. Since the
//! graphs are loop-free, a common neighbor of `S` never lies in `S`, so
//! `K_{a,b}` exists iff some `a`-subset has at least `b` common neighbors;
//! the maximum therefore decides freeness and its witness is re-checkable.
//!
//! Subsets are enumerated in colexicographic order (largest element in the
//! outermost loop), which makes range partitioning across workers natural.
//! The running intersection is abandoned as soon as its size drops strictly
//! below the best count seen so far; a subset attaining the global maximum
//! can never be pruned by that rule, and neither can any subset tying it, so
//! every maximizing subset is visited. Workers keep their local
//! `(count, lexicographically-least witness)` and merge by count first, then
//! witness; the merge is associative and commutative, so the certificate is
//! identical for any worker count.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::field::{make_field, FieldError};
use crate::graph::{build_graph, prime_power, FurediGraph, GraphError, GraphHeader};

/// Default ceiling on subsets (freeness) or systems (lemmas) per scan.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("subset arity must be at least 1 (got {0})")]
    BadArity(usize),
    #[error("scan needs {needed} candidates, over the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of a freeness certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Free,
    NotFree,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Free => "free",
            Verdict::NotFree => "not_free",
        })
    }
}

/// Scan controls shared by the certifier and the lemma oracles.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Worker threads for subset scans; clamped up to 1. Results never
    /// depend on this.
    pub workers: usize,
    /// Maximum subsets / systems a single scan may enumerate.
    pub budget: u64,
    /// Seed recorded in reports; drives sampled lemma mode only.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { workers: 1, budget: DEFAULT_BUDGET, seed: 0 }
    }
}

/// Result of an exhaustive max-common-neighborhood scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCommon {
    /// Maximum common-neighborhood size over all `a`-subsets.
    pub value: usize,
    /// Lexicographically smallest `a`-subset attaining `value`, as sorted
    /// vertex indices. Empty only when there are no `a`-subsets at all.
    pub witness: Vec<usize>,
    pub subsets_scanned: u64,
}

/// An exhaustive-search record establishing `K_{a,b}`-freeness or exhibiting
/// a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    /// Record tag: `freeness` for direct runs, `theoremN` inside a suite.
    pub kind: String,
    pub graph: GraphHeader,
    pub a: usize,
    pub b: u64,
    pub max_common: usize,
    pub witness: Vec<usize>,
    pub verdict: Verdict,
    pub subsets_scanned: u64,
    pub seed: u64,
}

impl FreenessCertificate {
    /// One-line `key=value` record with the fixed key set.
    pub fn record(&self) -> String {
        format!(
            "kind={} p={} k={} t={} a={} b={} n={} m={} max_common={} verdict={} witness={} subsets_scanned={} seed={}",
            self.kind,
            self.graph.p,
            self.graph.k,
            self.graph.t,
            self.a,
            self.b,
            self.graph.n,
            self.graph.m,
            self.max_common,
            self.verdict,
            format_witness(&self.witness),
            self.subsets_scanned,
            self.seed,
        )
    }
}

fn format_witness(witness: &[usize]) -> String {
    if witness.is_empty() {
        return "-".to_owned();
    }
    witness
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `|∩_{v in subset} N(v)|`, for re-checking witnesses independently.
pub fn common_neighborhood_size(adj: &[Bitset], subset: &[usize]) -> usize {
    let mut it = subset.iter();
    let Some(&first) = it.next() else {
        return 0;
    };
    let mut acc = adj[first].clone();
    let mut tmp = Bitset::new(adj.len());
    for &v in it {
        tmp.assign_and(&acc, &adj[v]);
        std::mem::swap(&mut acc, &mut tmp);
    }
    acc.count()
}

/// Exact maximum common-neighborhood size over all `a`-subsets of the graph
/// behind `adj`, with the lexicographically smallest maximizing subset.
///
/// Exhaustive within `opts.budget` (the `C(n, a)` subset count is checked
/// up front); deterministic for any `opts.workers`.
pub fn max_common_neighbors(
    adj: &[Bitset],
    a: usize,
    opts: &VerifyOptions,
) -> Result<MaxCommon, VerifyError> {
    if a < 1 {
        return Err(VerifyError::BadArity(a));
    }
    let n = adj.len();
    let needed = binomial(n, a);
    if needed > opts.budget as u128 {
        return Err(VerifyError::BudgetExceeded { needed, budget: opts.budget });
    }
    let subsets_scanned = needed as u64;
    if a > n {
        return Ok(MaxCommon { value: 0, witness: Vec::new(), subsets_scanned });
    }

    let workers = opts.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| VerifyError::ThreadPool(e.to_string()))?;

    let floor = AtomicUsize::new(0);
    let best = pool.install(|| {
        if a == 1 {
            return (0..n)
                .into_par_iter()
                .map(|v| Local { value: adj[v].count(), witness: vec![v] })
                .reduce(Local::default, Local::merge);
        }
        // Colex blocks: all subsets sharing their largest element `top`.
        (a - 1..n)
            .into_par_iter()
            .map(|top| {
                let mut scan = Scan {
                    adj,
                    a,
                    floor: &floor,
                    local: Local::default(),
                    stack: vec![Bitset::new(n); a - 1],
                    chosen: Vec::with_capacity(a),
                };
                scan.stack[0] = adj[top].clone();
                scan.chosen.push(top);
                scan.descend(top);
                scan.local
            })
            .reduce(Local::default, Local::merge)
    });

    Ok(MaxCommon {
        value: best.value,
        witness: best.witness,
        subsets_scanned,
    })
}

/// Per-worker scan result: best count plus its lexicographically smallest
/// witness. An empty witness means "nothing scanned yet" and loses every
/// merge against a real one.
#[derive(Clone, Debug, Default)]
struct Local {
    value: usize,
    witness: Vec<usize>,
}

impl Local {
    fn merge(a: Local, b: Local) -> Local {
        if a.witness.is_empty() {
            return b;
        }
        if b.witness.is_empty() {
            return a;
        }
        if a.value != b.value {
            return if a.value > b.value { a } else { b };
        }
        if a.witness <= b.witness {
            a
        } else {
            b
        }
    }
}

struct Scan<'s> {
    adj: &'s [Bitset],
    a: usize,
    floor: &'s AtomicUsize,
    local: Local,
    /// `stack[d]` holds the intersection of the adjacency rows of
    /// `chosen[0..=d]`.
    stack: Vec<Bitset>,
    /// Chosen indices, strictly decreasing (colex picks the largest first).
    chosen: Vec<usize>,
}

impl Scan<'_> {
    /// Extends the current prefix with every element strictly below `hi`,
    /// ascending (colexicographic order within the block).
    fn descend(&mut self, hi: usize) {
        let depth = self.chosen.len();
        let remaining = self.a - depth;
        if remaining == 1 {
            for v in 0..hi {
                let cnt = self.stack[depth - 1].and_count(&self.adj[v]);
                self.offer(cnt, v);
            }
            return;
        }
        for v in remaining - 1..hi {
            // Abandon strictly-worse prefixes: extensions only shrink the
            // intersection, so nothing reaching the current floor is lost.
            let cnt = self.stack[depth - 1].and_count(&self.adj[v]);
            let floor = self.local.value.max(self.floor.load(Ordering::Relaxed));
            if cnt < floor {
                continue;
            }
            let (done, rest) = self.stack.split_at_mut(depth);
            rest[0].assign_and(&done[depth - 1], &self.adj[v]);
            self.chosen.push(v);
            self.descend(v);
            self.chosen.pop();
        }
    }

    /// Records a completed subset (`chosen` plus `v`) counting `cnt`.
    fn offer(&mut self, cnt: usize, v: usize) {
        let take = self.local.witness.is_empty()
            || cnt > self.local.value
            || (cnt == self.local.value && self.candidate(v) < self.local.witness);
        if take {
            self.local.value = cnt;
            self.local.witness = self.candidate(v);
            self.floor.fetch_max(cnt, Ordering::Relaxed);
        }
    }

    /// The subset `chosen + v` in ascending index order; `v` is strictly
    /// below everything in `chosen`.
    fn candidate(&self, v: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.a);
        w.push(v);
        w.extend(self.chosen.iter().rev());
        w
    }
}

/// Certifies whether the graph contains `K_{a,b}`.
///
/// `(a, b)` is normalized to `a <= b` (the subgraph is symmetric in its two
/// sides); the scan then computes the full maximum over `a`-subsets, so the
/// certificate carries the exact extremal quantity and is reproducible under
/// any worker count.
pub fn certify_kab_free(
    g: &FurediGraph,
    a: usize,
    b: u64,
    opts: &VerifyOptions,
) -> Result<FreenessCertificate, VerifyError> {
    let (a, b) = if (a as u64) > b { (b as usize, a as u64) } else { (a, b) };
    if a < 1 {
        return Err(VerifyError::BadArity(a));
    }
    let mc = max_common_neighbors(g.adjacency(), a, opts)?;
    let verdict = if (mc.value as u64) < b { Verdict::Free } else { Verdict::NotFree };
    Ok(FreenessCertificate {
        kind: "freeness".to_owned(),
        graph: g.header().clone(),
        a,
        b,
        max_common: mc.value,
        witness: mc.witness,
        verdict,
        subsets_scanned: mc.subsets_scanned,
        seed: opts.seed,
    })
}

/// Which lemma a [`LemmaReport`] covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaId {
    /// `ax + by = 1` with `x, y` in the subgroup of order `q + 1` of
    /// `GF(q^2)` has at most 2 solutions.
    L,
    /// The norm system `N(x + d_i) = c_i`, `i = 1..r`, with distinct `d_i`
    /// has at most `r!` solutions in `GF(q^r)`.
    Ag,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaId::L => "lemma_l",
            LemmaId::Ag => "lemma_ag",
        })
    }
}

/// How [`verify_lemma_ag`] picks the systems it scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgMode {
    /// Every ordered tuple of distinct shifts against every `c`-tuple.
    Exhaustive,
    /// `samples` systems drawn from a ChaCha stream seeded by
    /// `VerifyOptions::seed`.
    Sampled { samples: u64 },
}

/// Outcome of a lemma scan: observed maximum solution count against the
/// paper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    /// Base parameter `q`; the scan itself runs in `GF(q^2)` (L) or
    /// `GF(q^r)` (AG), recorded as `p^k`.
    pub base_q: u64,
    pub p: u64,
    pub k: u32,
    /// Subgroup order `q + 1` (lemma L only).
    pub t: Option<u64>,
    /// Number of norm equations (lemma AG only).
    pub r: Option<u32>,
    pub bound: u64,
    pub max_solutions: u64,
    pub exhaustive: bool,
    pub systems_scanned: u64,
    /// Lemma L only: whether the quadratic-root route agreed with brute
    /// force on every scanned pair.
    pub cross_check: Option<bool>,
    pub seed: u64,
    /// First input exceeding the bound, if any.
    pub counterexample: Option<String>,
}

impl LemmaReport {
    pub fn within_bound(&self) -> bool {
        self.max_solutions <= self.bound
    }

    /// One-line `key=value` record.
    pub fn record(&self) -> String {
        let mut s = format!("kind={} p={} k={} q={}", self.lemma, self.p, self.k, self.base_q);
        if let Some(t) = self.t {
            s.push_str(&format!(" t={t}"));
        }
        if let Some(r) = self.r {
            s.push_str(&format!(" r={r}"));
        }
        s.push_str(&format!(
            " bound={} max_solutions={} exhaustive={} systems_scanned={}",
            self.bound, self.max_solutions, self.exhaustive, self.systems_scanned
        ));
        if let Some(ok) = self.cross_check {
            s.push_str(&format!(" cross_check={}", if ok { "ok" } else { "failed" }));
        }
        s.push_str(&format!(
            " seed={} counterexample={}",
            self.seed,
            self.counterexample.as_deref().unwrap_or("-")
        ));
        s
    }
}

/// Exhaustively counts solutions of `ax + by = 1` with `x, y` in the
/// subgroup `H` of order `q + 1` of `GF(q^2)`, over every pair `a, b != 0`,
/// and cross-checks each count against the quadratic
/// `a x^2 - (a^{q+1} - b^{q+1} + 1) x + a^q = 0` (roots filtered by `x` in
/// `H` and `y = (1 - ax)/b` in `H`). The paper bound is 2.
pub fn verify_lemma_l(base_q: u64, opts: &VerifyOptions) -> Result<LemmaReport, VerifyError> {
    let (p, j) = prime_power(base_q).ok_or(GraphError::NotPrimePower(base_q))?;
    let field = make_field(p, 2 * j)?;
    let q2 = field.q() as u32;
    let h = field.subgroup(base_q + 1)?;
    let pairs = (q2 as u128 - 1) * (q2 as u128 - 1);
    if pairs > opts.budget as u128 {
        return Err(VerifyError::BudgetExceeded { needed: pairs, budget: opts.budget });
    }

    let hs = h.element_encs();
    let mut max_solutions = 0u64;
    let mut cross_ok = true;
    let mut counterexample = None;
    for a in 1..q2 {
        let na = field.pow_enc(a, base_q + 1);
        let aq = field.pow_enc(a, base_q);
        for b in 1..q2 {
            let mut brute = 0u64;
            for &x in hs {
                let ax = field.mul_enc(a, x);
                for &y in hs {
                    if field.add_enc(ax, field.mul_enc(b, y)) == 1 {
                        brute += 1;
                    }
                }
            }

            let nb = field.pow_enc(b, base_q + 1);
            let coeff = field.add_enc(field.sub_enc(na, nb), 1);
            let binv = field.inv_enc(b);
            let mut quad = 0u64;
            for x in 0..q2 {
                let v = field.add_enc(
                    field.sub_enc(
                        field.mul_enc(a, field.mul_enc(x, x)),
                        field.mul_enc(coeff, x),
                    ),
                    aq,
                );
                if v == 0 && h.contains_enc(x) {
                    let y = field.mul_enc(field.sub_enc(1, field.mul_enc(a, x)), binv);
                    if h.contains_enc(y) {
                        quad += 1;
                    }
                }
            }

            if quad != brute {
                cross_ok = false;
            }
            if brute > max_solutions {
                max_solutions = brute;
                if brute > 2 && counterexample.is_none() {
                    counterexample = Some(format!("a={a},b={b},count={brute}"));
                }
            }
        }
    }

    Ok(LemmaReport {
        lemma: LemmaId::L,
        base_q,
        p,
        k: 2 * j,
        t: Some(base_q + 1),
        r: None,
        bound: 2,
        max_solutions,
        exhaustive: true,
        systems_scanned: pairs as u64,
        cross_check: Some(cross_ok),
        seed: opts.seed,
        counterexample,
    })
}

/// `r!`, saturating at `u64::MAX` (which the suite's checked arithmetic then
/// rejects as an overflow of the derived bound).
pub(crate) fn factorial(r: u32) -> u64 {
    (2..=r as u64)
        .try_fold(1u64, |acc, i| acc.checked_mul(i))
        .unwrap_or(u64::MAX)
}

/// Counts solutions `x` of the norm system `N(x + d_i) = c_i` for distinct
/// shifts `d_i` in `GF(q^r)` and targets `c_i` in the embedded `GF(q)`;
/// reports the maximum over all scanned systems against the bound `r!`.
///
/// Exhaustive mode scans every ordered distinct `d`-tuple and, via
/// norm-vector bucketing, every `c`-tuple at once (targets outside the norm
/// image have zero solutions). Sampled mode draws systems from a seeded
/// ChaCha stream.
pub fn verify_lemma_ag(
    base_q: u64,
    r: u32,
    mode: AgMode,
    opts: &VerifyOptions,
) -> Result<LemmaReport, VerifyError> {
    if r < 2 {
        return Err(VerifyError::HypothesisViolated(format!(
            "lemma AG needs r >= 2 (got {r})"
        )));
    }
    let (p, j) = prime_power(base_q).ok_or(GraphError::NotPrimePower(base_q))?;
    let field = make_field(p, j * r)?;
    let big_q = field.q() as u32;
    let norm: Vec<u32> = (0..big_q).map(|x| field.norm_enc(x, j)).collect();
    // Embedded subfield GF(q): the fixed points of x -> x^q.
    let subfield: Vec<u32> = (0..big_q)
        .filter(|&x| field.pow_enc(x, base_q) == x)
        .collect();
    debug_assert_eq!(subfield.len() as u64, base_q);
    let bound = factorial(r);

    let report = |max_solutions,
                  exhaustive,
                  systems_scanned,
                  counterexample: Option<String>| LemmaReport {
        lemma: LemmaId::Ag,
        base_q,
        p,
        k: j * r,
        t: None,
        r: Some(r),
        bound,
        max_solutions,
        exhaustive,
        systems_scanned,
        cross_check: None,
        seed: opts.seed,
        counterexample,
    };

    match mode {
        AgMode::Exhaustive => {
            // Ordered distinct d-tuples times all c-tuples from GF(q).
            let mut systems: u128 = 1;
            for i in 0..r as u128 {
                systems = systems.saturating_mul(big_q as u128 - i);
            }
            systems = systems.saturating_mul((base_q as u128).saturating_pow(r));
            if systems > opts.budget as u128 {
                return Err(VerifyError::BudgetExceeded {
                    needed: systems,
                    budget: opts.budget,
                });
            }

            let mut max_solutions = 0u64;
            let mut counterexample = None;
            let mut ds = Vec::with_capacity(r as usize);
            let mut keys: Vec<Vec<u32>> = vec![Vec::new(); big_q as usize];
            scan_d_tuples(big_q, r as usize, &mut ds, &mut |ds| {
                for (x, key) in keys.iter_mut().enumerate() {
                    key.clear();
                    key.extend(
                        ds.iter()
                            .map(|&d| norm[field.add_enc(x as u32, d) as usize]),
                    );
                }
                keys.sort_unstable();
                let mut run = 1u64;
                let mut best_run = 1u64;
                let mut best_key = 0usize;
                for i in 1..keys.len() {
                    if keys[i] == keys[i - 1] {
                        run += 1;
                        if run > best_run {
                            best_run = run;
                            best_key = i;
                        }
                    } else {
                        run = 1;
                    }
                }
                if best_run > max_solutions {
                    max_solutions = best_run;
                    if best_run > bound && counterexample.is_none() {
                        counterexample = Some(format!(
                            "d={},c={},count={best_run}",
                            join(ds, ":"),
                            join(&keys[best_key], ":"),
                        ));
                    }
                }
            });
            Ok(report(max_solutions, true, systems as u64, counterexample))
        }
        AgMode::Sampled { samples } => {
            if samples as u128 > opts.budget as u128 {
                return Err(VerifyError::BudgetExceeded {
                    needed: samples as u128,
                    budget: opts.budget,
                });
            }
            let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
            let mut max_solutions = 0u64;
            let mut counterexample = None;
            let mut ds: Vec<u32> = Vec::with_capacity(r as usize);
            let mut cs: Vec<u32> = Vec::with_capacity(r as usize);
            for _ in 0..samples {
                ds.clear();
                while ds.len() < r as usize {
                    let d = rng.random_range(0..big_q);
                    if !ds.contains(&d) {
                        ds.push(d);
                    }
                }
                cs.clear();
                cs.extend((0..r).map(|_| subfield[rng.random_range(0..subfield.len())]));
                let mut count = 0u64;
                for x in 0..big_q {
                    if ds
                        .iter()
                        .zip(&cs)
                        .all(|(&d, &c)| norm[field.add_enc(x, d) as usize] == c)
                    {
                        count += 1;
                    }
                }
                if count > max_solutions {
                    max_solutions = count;
                    if count > bound && counterexample.is_none() {
                        counterexample = Some(format!(
                            "d={},c={},count={count}",
                            join(&ds, ":"),
                            join(&cs, ":"),
                        ));
                    }
                }
            }
            Ok(report(max_solutions, false, samples, counterexample))
        }
    }
}

/// Calls `visit` with every ordered tuple of `r` distinct values from
/// `0..n`, in lexicographic order.
fn scan_d_tuples(n: u32, r: usize, prefix: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if prefix.len() == r {
        visit(prefix);
        return;
    }
    for d in 0..n {
        if !prefix.contains(&d) {
            prefix.push(d);
            scan_d_tuples(n, r, prefix, visit);
            prefix.pop();
        }
    }
}

fn join(xs: &[u32], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Which claim a suite entry certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    T1,
    T2,
    T4,
    T5,
    T6,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::T1 => "theorem1",
            TheoremId::T2 => "theorem2",
            TheoremId::T4 => "theorem4",
            TheoremId::T5 => "theorem5",
            TheoremId::T6 => "theorem6",
        })
    }
}

/// Parameters for [`theorem_suite`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    /// Base prime power `q`.
    pub base_q: u64,
    /// Subgroup scale `t` (must divide `q - 1`).
    pub t: u64,
    /// Uniformity `r >= 3` for the general-family theorems.
    pub r: u32,
    pub opts: VerifyOptions,
    /// Sample count when lemma AG falls back to sampled mode.
    pub ag_samples: u64,
}

/// One line of suite output.
#[derive(Clone, Debug)]
pub enum SuiteEntry {
    Certificate(FreenessCertificate),
    Lemma(LemmaReport),
    /// Instance whose exhaustive scan would exceed the budget.
    Skipped { kind: String, needed: u128, budget: u64 },
}

impl SuiteEntry {
    pub fn record(&self) -> String {
        match self {
            SuiteEntry::Certificate(c) => c.record(),
            SuiteEntry::Lemma(l) => l.record(),
            SuiteEntry::Skipped { kind, needed, budget } => format!(
                "kind=skipped claim={kind} reason=budget_exceeded needed={needed} budget={budget}"
            ),
        }
    }

    /// False only for a `not_free` certificate or an out-of-bound lemma.
    pub fn passed(&self) -> bool {
        match self {
            SuiteEntry::Certificate(c) => c.verdict == Verdict::Free,
            SuiteEntry::Lemma(l) => l.within_bound(),
            SuiteEntry::Skipped { .. } => true,
        }
    }
}

/// Builds and certifies every published claim at `(q, t, r)`:
///
/// * Theorem 1: `G(q, t)` is `K_{2, t+1}`-free;
/// * Theorem 2: `G(q^2, q+1)` is `K_{3,3}`-free;
/// * Theorem 4: `G(q^2, t(q+1))` is `K_{3, 2t^2+1}`-free;
/// * Theorem 5: `G(q^{r-1}, (q^{r-1}-1)/(q-1))` is `K_{r, (r-1)!+1}`-free;
/// * Theorem 6: `G(q^{r-1}, t(q^{r-2}+...+q+1))` is
///   `K_{r, t^{r-1}(r-1)!+1}`-free;
/// * lemmas L and AG at the same base `q` (AG exhaustive when the budget
///   allows, sampled otherwise).
///
/// Instances whose scan would exceed the budget become `Skipped` entries;
/// a `not_free` verdict is a hard failure surfaced in the entry list.
pub fn theorem_suite(params: &SuiteParams) -> Result<Vec<SuiteEntry>, VerifyError> {
    let q = params.base_q;
    let t = params.t;
    let r = params.r;
    let opts = &params.opts;
    let (p, j) = prime_power(q).ok_or_else(|| {
        VerifyError::HypothesisViolated(format!("{q} is not a prime power"))
    })?;
    if t == 0 || !(q - 1).is_multiple_of(t) {
        return Err(VerifyError::HypothesisViolated(format!(
            "t={t} does not divide q-1={}",
            q - 1
        )));
    }
    if r < 3 {
        return Err(VerifyError::HypothesisViolated(format!(
            "the general family needs r >= 3 (got {r})"
        )));
    }

    let too_large = || {
        VerifyError::HypothesisViolated(format!(
            "parameters q={q}, t={t}, r={r} overflow the derived bounds"
        ))
    };
    // (q^(r-1) - 1)/(q - 1) = q^(r-2) + ... + q + 1.
    let mut geom: u64 = 0;
    let mut power: u64 = 1;
    for i in 0..r - 1 {
        geom = geom.checked_add(power).ok_or_else(too_large)?;
        if i + 1 < r - 1 {
            power = power.checked_mul(q).ok_or_else(too_large)?;
        }
    }
    let t5_bound = factorial(r - 1).checked_add(1).ok_or_else(too_large)?;
    let t6_bound = t
        .checked_pow(r - 1)
        .and_then(|v| v.checked_mul(factorial(r - 1)))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(too_large)?;

    let mut entries = Vec::new();
    let freeness = |entries: &mut Vec<SuiteEntry>,
                        id: TheoremId,
                        field_k: u32,
                        sub_t: u64,
                        a: usize,
                        b: u64|
     -> Result<(), VerifyError> {
        let field = make_field(p, field_k)?;
        let graph = build_graph(&field, sub_t)?;
        match certify_kab_free(&graph, a, b, opts) {
            Ok(mut cert) => {
                cert.kind = id.to_string();
                entries.push(SuiteEntry::Certificate(cert));
                Ok(())
            }
            Err(VerifyError::BudgetExceeded { needed, budget }) => {
                entries.push(SuiteEntry::Skipped { kind: id.to_string(), needed, budget });
                Ok(())
            }
            Err(e) => Err(e),
        }
    };

    freeness(&mut entries, TheoremId::T1, j, t, 2, t + 1)?;
    freeness(&mut entries, TheoremId::T2, 2 * j, q + 1, 3, 3)?;
    freeness(&mut entries, TheoremId::T4, 2 * j, t * (q + 1), 3, 2 * t * t + 1)?;
    freeness(&mut entries, TheoremId::T5, j * (r - 1), geom, r as usize, t5_bound)?;
    freeness(&mut entries, TheoremId::T6, j * (r - 1), t * geom, r as usize, t6_bound)?;

    match verify_lemma_l(q, opts) {
        Ok(report) => entries.push(SuiteEntry::Lemma(report)),
        Err(VerifyError::BudgetExceeded { needed, budget }) => {
            entries.push(SuiteEntry::Skipped { kind: LemmaId::L.to_string(), needed, budget });
        }
        Err(e) => return Err(e),
    }
    match verify_lemma_ag(q, r, AgMode::Exhaustive, opts) {
        Ok(report) => entries.push(SuiteEntry::Lemma(report)),
        Err(VerifyError::BudgetExceeded { .. }) => {
            let sampled = AgMode::Sampled { samples: params.ag_samples };
            entries.push(SuiteEntry::Lemma(verify_lemma_ag(q, r, sampled, opts)?));
        }
        Err(e) => return Err(e),
    }
    Ok(entries)
}

/// `C(n, k)`, saturating at `u128::MAX` (far beyond any budget).
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 1..=k as u128 {
        let f = (n as u128) - (k as u128) + i;
        match res.checked_mul(f) {
            Some(v) => res = v / i,
            None => return u128::MAX,
        }
    }
    res
}
