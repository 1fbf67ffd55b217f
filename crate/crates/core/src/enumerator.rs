//! Bounded enumeration of dual graphs and the classification audit.
//!
//! Work is split into chunks, one per sorted multiset of vertex types.
//! Isomorphic graphs share their multiset, so duplicate removal by
//! canonical key never crosses a chunk, and chunks can be processed in any
//! order or in parallel. Within a chunk, edge assignments are generated
//! with per-pair multiplicities restricted by divisibility and by the 2x2
//! minors (`m^2 < a_i a_j`); connectivity is checked before definiteness.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::classifier::{cross_check, Consistency};
use crate::discrepancy::NumericClass;
use crate::exact::is_negative_definite;
use crate::graph::{DualGraph, IntersectionMatrix, Vertex};
use crate::{Error, Result};

/// Largest number of candidate graphs (before filtering) an audit may visit.
pub const CANDIDATE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBounds {
    pub max_vertices: u32,
    pub max_a: u32,
    pub max_r: u32,
    pub max_g: u32,
    pub max_edge_mult: u32,
}

impl EnumBounds {
    /// `max_r >= 1` and `max_a >= 2 max_r`; zero vertices, genus or edge
    /// multiplicity bounds are allowed and shrink the search.
    pub fn check(&self) -> Result<()> {
        if self.max_r == 0 {
            return Err(Error::InvalidBounds("max_r must be >= 1".into()));
        }
        if self.max_a < 2 * self.max_r {
            return Err(Error::InvalidBounds(format!(
                "max_a = {} must be >= 2 max_r = {}",
                self.max_a,
                2 * self.max_r
            )));
        }
        if self.max_vertices > 12 {
            return Err(Error::InvalidBounds("max_vertices must be <= 12".into()));
        }
        Ok(())
    }

    /// Vertex types `(r, g, a)` allowed in minimal mode, sorted.
    fn vertex_types(&self) -> Vec<(u32, u32, u32)> {
        let mut types = Vec::new();
        for r in 1..=self.max_r {
            for g in 0..=self.max_g {
                for a in (2 * r..=self.max_a).step_by(r as usize) {
                    types.push((r, g, a));
                }
            }
        }
        types.sort_unstable();
        types
    }

    /// Allowed nonzero multiplicities between two vertex types.
    fn multiplicities(&self, s: (u32, u32, u32), t: (u32, u32, u32)) -> Vec<u32> {
        let step = s.0.lcm(&t.0);
        let bound = u64::from(s.2) * u64::from(t.2);
        (step..=self.max_edge_mult)
            .step_by(step as usize)
            .filter(|&m| u64::from(m) * u64::from(m) < bound)
            .collect()
    }

    /// Chunks in order: by size, then lexicographically by type index.
    fn chunks(&self) -> Chunks {
        Chunks::new(self.vertex_types(), self.max_vertices as usize)
    }

    /// Number of candidate graphs visited (every edge assignment of every
    /// chunk). Exact, so slow for bounds far beyond the audit budget.
    pub fn candidate_count(&self) -> u64 {
        self.count_up_to(u64::MAX)
    }

    /// The candidate count, or some value above `limit` once it is clear
    /// the count exceeds it.
    fn count_up_to(&self, limit: u64) -> u64 {
        let types = self.vertex_types().len() as u128;
        // every chunk holds at least the edgeless candidate
        let chunk_count: u128 = (1..=u128::from(self.max_vertices))
            .map(|n| binomial(types + n - 1, n))
            .fold(0, u128::saturating_add);
        if chunk_count > u128::from(limit) {
            return limit.saturating_add(1);
        }
        let mut total = 0u64;
        for chunk in self.chunks() {
            let here = pair_options(self, &chunk)
                .iter()
                .fold(1u64, |acc, opts| acc.saturating_mul(opts.len() as u64 + 1));
            total = total.saturating_add(here);
            if total > limit {
                break;
            }
        }
        total
    }
}

/// `C(m, k)`, saturating.
fn binomial(m: u128, k: u128) -> u128 {
    (1..=k).fold(1u128, |acc, i| {
        acc.checked_mul(m - k + i).map_or(u128::MAX, |x| x / i)
    })
}

/// Sorted type multisets of sizes `1..=max_len`, as an odometer over
/// non-decreasing index vectors.
struct Chunks {
    types: Vec<(u32, u32, u32)>,
    max_len: usize,
    cur: Vec<usize>,
}

impl Chunks {
    fn new(types: Vec<(u32, u32, u32)>, max_len: usize) -> Self {
        Self {
            types,
            max_len,
            cur: Vec::new(),
        }
    }
}

impl Iterator for Chunks {
    type Item = Vec<(u32, u32, u32)>;

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.types.len();
        if t == 0 {
            return None;
        }
        match self.cur.iter().rposition(|&k| k + 1 < t) {
            Some(p) => {
                let k = self.cur[p] + 1;
                self.cur[p..].iter_mut().for_each(|x| *x = k);
            }
            None => {
                if self.cur.len() == self.max_len {
                    return None;
                }
                self.cur = vec![0; self.cur.len() + 1];
            }
        }
        Some(self.cur.iter().map(|&k| self.types[k]).collect())
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn pair_options(bounds: &EnumBounds, chunk: &[(u32, u32, u32)]) -> Vec<Vec<u32>> {
    pairs(chunk.len())
        .into_iter()
        .map(|(i, j)| bounds.multiplicities(chunk[i], chunk[j]))
        .collect()
}

fn connected(n: usize, adj: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let next = adj[..n]
            .iter()
            .enumerate()
            .filter(|&(v, _)| frontier & (1 << v) != 0)
            .fold(0, |acc, (_, &row)| acc | row);
        frontier = next & !seen;
        seen |= next;
    }
    seen == (1u32 << n) - 1
}

/// Connected negative definite graphs on one type multiset, one per
/// isomorphism class, in canonical key order. Also returns the number of
/// candidates visited.
fn chunk_graphs(bounds: &EnumBounds, chunk: &[(u32, u32, u32)]) -> (u64, Vec<(String, DualGraph)>) {
    let n = chunk.len();
    let pair_list = pairs(n);
    let options = pair_options(bounds, chunk);
    let mut choice = vec![0usize; pair_list.len()];
    let mut found: BTreeMap<String, DualGraph> = BTreeMap::new();
    let mut visited = 0u64;
    let mut entries = vec![0i64; n * n];
    loop {
        visited += 1;
        let mut adj = vec![0u32; n];
        for (p, &(i, j)) in pair_list.iter().enumerate() {
            if choice[p] > 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        if connected(n, &adj) {
            for (i, t) in chunk.iter().enumerate() {
                entries[i * n + i] = -i64::from(t.2);
            }
            for (p, &(i, j)) in pair_list.iter().enumerate() {
                let m = if choice[p] == 0 {
                    0
                } else {
                    i64::from(options[p][choice[p] - 1])
                };
                entries[i * n + j] = m;
                entries[j * n + i] = m;
            }
            if is_negative_definite(&IntersectionMatrix::from_entries(n, entries.clone())) {
                let g = build(chunk, &pair_list, &options, &choice);
                found.entry(canonical_form(&g)).or_insert(g);
            }
        }
        // odometer
        let mut p = 0;
        loop {
            if p == choice.len() {
                return (visited, found.into_iter().collect());
            }
            choice[p] += 1;
            if choice[p] <= options[p].len() {
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

fn build(
    chunk: &[(u32, u32, u32)],
    pair_list: &[(usize, usize)],
    options: &[Vec<u32>],
    choice: &[usize],
) -> DualGraph {
    let vertices = chunk
        .iter()
        .enumerate()
        .map(|(i, &(r, g, a))| Vertex::new(format!("E{}", i + 1), r, g, a))
        .collect();
    let mut g = DualGraph::new(vertices).expect("enumerated vertices are valid");
    for (p, &(i, j)) in pair_list.iter().enumerate() {
        if choice[p] > 0 {
            g.set_edge(i, j, options[p][choice[p] - 1]);
        }
    }
    g
}

/// Lazy stream of enumerated graphs, chunk by chunk.
pub struct GraphStream {
    bounds: EnumBounds,
    chunks: Chunks,
    pending: std::vec::IntoIter<(String, DualGraph)>,
}

impl Iterator for GraphStream {
    type Item = DualGraph;

    fn next(&mut self) -> Option<DualGraph> {
        loop {
            if let Some((_, g)) = self.pending.next() {
                return Some(g);
            }
            let chunk = self.chunks.next()?;
            self.pending = chunk_graphs(&self.bounds, &chunk).1.into_iter();
        }
    }
}

/// One representative per isomorphism class of connected, negative
/// definite graphs that satisfy every minimal-mode validation rule within
/// the bounds. Ordered by vertex count, then type multiset, then canonical
/// key.
pub fn enumerate_graphs(bounds: &EnumBounds) -> Result<GraphStream> {
    bounds.check()?;
    Ok(GraphStream {
        bounds: *bounds,
        chunks: bounds.chunks(),
        pending: Vec::new().into_iter(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnmatchedEntry {
    pub key: String,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InconsistentEntry {
    pub key: String,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub bounds: EnumBounds,
    /// Candidate graphs visited before any filtering.
    pub total_enumerated: u64,
    /// Isomorphism classes that are connected and negative definite.
    pub negative_definite_count: u64,
    /// Counts keyed by `klt`, `lc` (with `Delta_Y != E`), `lc_delta_e` and
    /// `not_lc`.
    pub class_counts: BTreeMap<String, u64>,
    pub consistent_count: u64,
    /// Unmatched graphs that are numerically lc; sorted by key.
    pub unmatched: Vec<UnmatchedEntry>,
    /// Unmatched graphs that are not numerically lc; only counted.
    pub unmatched_not_lc: u64,
    pub inconsistent: Vec<InconsistentEntry>,
}

fn class_key(class: NumericClass) -> &'static str {
    match class {
        NumericClass::Klt => "klt",
        NumericClass::LcNotKlt {
            delta_equals_e: false,
        } => "lc",
        NumericClass::LcNotKlt {
            delta_equals_e: true,
        } => "lc_delta_e",
        NumericClass::NotLc => "not_lc",
    }
}

impl AuditReport {
    fn empty(bounds: EnumBounds) -> Self {
        let class_counts = ["klt", "lc", "lc_delta_e", "not_lc"]
            .into_iter()
            .map(|k| (k.to_string(), 0))
            .collect();
        Self {
            bounds,
            total_enumerated: 0,
            negative_definite_count: 0,
            class_counts,
            consistent_count: 0,
            unmatched: Vec::new(),
            unmatched_not_lc: 0,
            inconsistent: Vec::new(),
        }
    }

    fn record(&mut self, key: String, g: &DualGraph) {
        let check = cross_check(g).expect("enumerated graphs are negative definite");
        self.negative_definite_count += 1;
        *self
            .class_counts
            .get_mut(class_key(check.result.class))
            .expect("all classes present") += 1;
        match check.verdict {
            Consistency::Consistent => self.consistent_count += 1,
            Consistency::Unmatched {
                class: NumericClass::NotLc,
            } => self.unmatched_not_lc += 1,
            Consistency::Unmatched { class } => self.unmatched.push(UnmatchedEntry {
                key,
                class: class_key(class).into(),
            }),
            Consistency::Inconsistent { details } => {
                self.inconsistent.push(InconsistentEntry { key, details })
            }
        }
    }

    /// Associative, order-independent merge.
    fn merge(mut self, other: Self) -> Self {
        self.total_enumerated += other.total_enumerated;
        self.negative_definite_count += other.negative_definite_count;
        for (k, v) in other.class_counts {
            *self.class_counts.entry(k).or_insert(0) += v;
        }
        self.consistent_count += other.consistent_count;
        self.unmatched.extend(other.unmatched);
        self.unmatched_not_lc += other.unmatched_not_lc;
        self.inconsistent.extend(other.inconsistent);
        self.unmatched.sort();
        self.inconsistent.sort();
        self
    }

    /// Passes when nothing is inconsistent.
    pub fn passed(&self) -> bool {
        self.inconsistent.is_empty()
    }

    pub fn allowlist(&self) -> Allowlist {
        Allowlist {
            schema: crate::json::SCHEMA.into(),
            bounds: Some(self.bounds),
            unmatched: self.unmatched.clone(),
        }
    }

    /// Differences between this run's unmatched set and a pinned one.
    pub fn diff(&self, pinned: &Allowlist) -> AllowlistDiff {
        let now: BTreeSet<&UnmatchedEntry> = self.unmatched.iter().collect();
        let before: BTreeSet<&UnmatchedEntry> = pinned.unmatched.iter().collect();
        AllowlistDiff {
            added: now.difference(&before).map(|e| (*e).clone()).collect(),
            removed: before.difference(&now).map(|e| (*e).clone()).collect(),
        }
    }
}

/// Pinned unmatched graphs from an earlier audit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allowlist {
    #[serde(default)]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<EnumBounds>,
    pub unmatched: Vec<UnmatchedEntry>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AllowlistDiff {
    /// Unmatched now but not pinned.
    pub added: Vec<UnmatchedEntry>,
    /// Pinned but no longer unmatched.
    pub removed: Vec<UnmatchedEntry>,
}

impl AllowlistDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty()
    }
}

fn audit_chunk(bounds: &EnumBounds, chunk: &[(u32, u32, u32)]) -> AuditReport {
    let (visited, graphs) = chunk_graphs(bounds, chunk);
    let mut report = AuditReport::empty(*bounds);
    report.total_enumerated = visited;
    for (key, g) in graphs {
        report.record(key, &g);
    }
    report
}

/// Cross-checks every enumerated graph. `jobs` caps the worker threads
/// (`None` uses all cores); without the `parallel` feature it is ignored.
pub fn audit(bounds: &EnumBounds, jobs: Option<usize>) -> Result<AuditReport> {
    bounds.check()?;
    let candidates = bounds.count_up_to(CANDIDATE_BUDGET);
    if candidates > CANDIDATE_BUDGET {
        return Err(Error::BudgetExceeded {
            candidates,
            limit: CANDIDATE_BUDGET,
        });
    }
    let chunks: Vec<_> = bounds.chunks().collect();
    Ok(run_chunks(bounds, &chunks, jobs))
}

#[cfg(feature = "parallel")]
fn run_chunks(
    bounds: &EnumBounds,
    chunks: &[Vec<(u32, u32, u32)>],
    jobs: Option<usize>,
) -> AuditReport {
    use rayon::prelude::*;
    let work = || {
        chunks
            .par_iter()
            .map(|chunk| audit_chunk(bounds, chunk))
            .reduce(|| AuditReport::empty(*bounds), AuditReport::merge)
    };
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work()),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_chunks(
    bounds: &EnumBounds,
    chunks: &[Vec<(u32, u32, u32)>],
    _jobs: Option<usize>,
) -> AuditReport {
    chunks
        .iter()
        .map(|chunk| audit_chunk(bounds, chunk))
        .fold(AuditReport::empty(*bounds), AuditReport::merge)
}
