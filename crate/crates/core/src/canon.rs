//! Isomorphism-class keys for weighted multigraphs.
//!
//! Canonical labeling by color refinement plus individualization: the
//! search tree depends only on isomorphism-invariant data, and the key is
//! the lexicographically least encoding over all of its leaves. The graphs
//! handled here are small and sparse, so no automorphism pruning is done.

use std::fmt::Write as _;

use crate::graph::DualGraph;

/// Key equal for two graphs iff they are isomorphic as weighted multigraphs
/// (vertex weights `(r, g, a)`, edge multiplicities). Vertex ids and the
/// minimal-mode flag are ignored.
pub fn canonical_form(g: &DualGraph) -> String {
    let code = canonical_code(g);
    let n = g.len();
    let mut key = format!("n={n}|v=");
    for (k, w) in code.weights.iter().enumerate() {
        if k > 0 {
            key.push(',');
        }
        let _ = write!(key, "{}.{}.{}", w.0, w.1, w.2);
    }
    key.push_str("|e=");
    for (k, (i, j, m)) in code.edges.iter().enumerate() {
        if k > 0 {
            key.push(',');
        }
        let _ = write!(key, "{i}-{j}x{m}");
    }
    key
}

/// The canonical ordering's encoding: weights in canonical order, then
/// sorted `(i, j, m)` edges in canonical positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub weights: Vec<(u32, u32, u32)>,
    pub edges: Vec<(usize, usize, u32)>,
}

pub fn canonical_code(g: &DualGraph) -> CanonicalCode {
    let n = g.len();
    let adj: Vec<Vec<(usize, u32)>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    let weights: Vec<(u32, u32, u32)> = g.vertices().iter().map(|v| v.weight()).collect();
    let initial = rank(&weights);
    let mut best = None;
    search(g, &adj, initial, &mut best);
    best.unwrap_or(CanonicalCode {
        weights: Vec::new(),
        edges: Vec::new(),
    })
}

/// Dense ranks of the keys, in sorted key order.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn refine(adj: &[Vec<(usize, u32)>], mut colors: Vec<u32>) -> Vec<u32> {
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(u32, Vec<(u32, u32)>)> = adj
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let mut sig: Vec<(u32, u32)> = nbrs.iter().map(|&(u, m)| (colors[u], m)).collect();
                sig.sort_unstable();
                (colors[v], sig)
            })
            .collect();
        let next = rank(&signatures);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

fn search(
    g: &DualGraph,
    adj: &[Vec<(usize, u32)>],
    colors: Vec<u32>,
    best: &mut Option<CanonicalCode>,
) {
    let colors = refine(adj, colors);
    let n = colors.len();
    if count_classes(&colors) == n {
        let code = encode(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    // first non-singleton cell
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let target = sizes
        .iter()
        .position(|&s| s > 1)
        .expect("non-discrete coloring") as u32;
    for v in (0..n).filter(|&v| colors[v] == target) {
        let individualized: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
            .collect();
        search(g, adj, rank(&individualized), best);
    }
}

fn encode(g: &DualGraph, position: &[u32]) -> CanonicalCode {
    let n = g.len();
    let mut order = vec![0usize; n];
    for (v, &p) in position.iter().enumerate() {
        order[p as usize] = v;
    }
    let weights = order.iter().map(|&v| g.vertex(v).weight()).collect();
    let mut edges: Vec<(usize, usize, u32)> = g
        .edges()
        .map(|(i, j, m)| {
            let (pi, pj) = (position[i] as usize, position[j] as usize);
            (pi.min(pj), pi.max(pj), m)
        })
        .collect();
    edges.sort_unstable();
    CanonicalCode { weights, edges }
}
