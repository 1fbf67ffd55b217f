//! Reference implementations used to check the library from the outside.
//!
//! Nothing here calls the crate's linear algebra: determinants come from
//! cofactor expansion and solutions from rational Gauss-Jordan elimination
//! with row exchanges.

#![allow(dead_code, clippy::needless_range_loop)]

use dualgraph_core::classifier::{templates, Template, WeightRule};
use dualgraph_core::{DualGraph, Vertex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::{Just, Strategy};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn matrix_of(g: &DualGraph) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, v) in g.vertices().iter().enumerate() {
        m[i][i] = -i64::from(v.a);
        for j in 0..n {
            if j != i {
                m[i][j] = i64::from(g.edge(i, j));
            }
        }
    }
    m
}

/// Cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for col in 0..n {
        if m[0][col] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][col]) * det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sylvester: `(-1)^k D_k > 0` for every leading minor.
pub fn negative_definite_by_minors(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let lead: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = det(&lead);
        if k % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    })
}

/// Gauss-Jordan over the rationals; `None` when singular.
pub fn solve(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            row.iter()
                .chain(std::iter::once(&bi))
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// `Delta_Y` from the oracle solve; `None` unless negative definite.
pub fn oracle_delta(g: &DualGraph) -> Option<Vec<BigRational>> {
    let m = matrix_of(g);
    if g.len() <= 7 && !negative_definite_by_minors(&m) {
        return None;
    }
    let b: Vec<i64> = g
        .vertices()
        .iter()
        .map(|v| {
            let (r, genus, a) = (i64::from(v.r), i64::from(v.g), i64::from(v.a));
            -(r * (2 * genus - 2) + a)
        })
        .collect();
    solve(&m, &b)
}

/// Path with `E1 .. En` weights and consecutive multiplicities.
pub fn path(weights: &[(u32, u32, u32)], mults: &[u32]) -> DualGraph {
    DualGraph::path(weights, mults).unwrap()
}

pub fn cycle(weights: &[(u32, u32, u32)], mults: &[u32]) -> DualGraph {
    DualGraph::cycle(weights, mults).unwrap()
}

/// Hangs `-2` leaves (r = 1) off vertex `at`.
pub fn with_leaves(mut g: DualGraph, at: usize, count: usize) -> DualGraph {
    for _ in 0..count {
        let id = format!("L{}", g.len() + 1);
        let leaf = g.push_vertex(Vertex::new(id, 1, 0, 2)).unwrap();
        g.add_edge(at, leaf, 1).unwrap();
    }
    g
}

/// The D~4 graph: center `-3`, four `-2` leaves.
pub fn d_tilde_4() -> DualGraph {
    with_leaves(path(&[(1, 0, 3)], &[]), 0, 4)
}

/// One instantiation of a drawn diagram.
pub struct Instance {
    pub template: &'static Template,
    pub run: usize,
    pub r: u32,
    pub graph: DualGraph,
}

/// Bounds of the template sweep: `*` ranges over `{2 r_i, ..., top r_i}`,
/// stretchable runs are sized so the drawn chain or cycle has at most
/// `max_len` curves, and parametric diagrams use `r` in `1..=max_r`.
#[derive(Clone, Copy)]
pub struct SweepBounds {
    pub max_len: usize,
    pub top: u32,
    pub max_r: u32,
}

pub const SWEEP: SweepBounds = SweepBounds {
    max_len: 6,
    top: 8,
    max_r: 3,
};

/// Every instantiation within the bounds, in table order, with `visit`
/// called on each. Returns the number visited.
pub fn sweep(bounds: SweepBounds, mut visit: impl FnMut(Instance)) -> usize {
    let mut count = 0;
    for tpl in templates() {
        let rs: Vec<u32> = if tpl.parametric {
            (1..=bounds.max_r).collect()
        } else {
            vec![1]
        };
        let runs: Vec<usize> = match tpl.stretch {
            None => vec![0],
            Some((_, min)) => {
                // the chain of curves through the run: the run itself plus
                // the fixed curves on it (whole cycle, chain or arm)
                let on_chain = chain_overhead(tpl);
                let top = bounds.max_len.saturating_sub(on_chain).max(min);
                (min..=top).collect()
            }
        };
        for &r in &rs {
            for &run in &runs {
                let pattern = tpl.build(run, r);
                let free = pattern.free_nodes();
                let ranges: Vec<Vec<u32>> = free
                    .iter()
                    .map(|&i| {
                        let ri = pattern.nodes[i].r;
                        (2..=bounds.top).map(|k| k * ri).collect()
                    })
                    .collect();
                debug_assert!(free.iter().all(|&i| pattern.nodes[i].a == WeightRule::Any));
                let mut idx = vec![0usize; free.len()];
                loop {
                    let weights: Vec<u32> = idx.iter().zip(&ranges).map(|(&k, r)| r[k]).collect();
                    let graph = pattern.instantiate(&weights);
                    count += 1;
                    visit(Instance {
                        template: tpl,
                        run,
                        r,
                        graph,
                    });
                    let mut p = 0;
                    while p < idx.len() {
                        idx[p] += 1;
                        if idx[p] < ranges[p].len() {
                            break;
                        }
                        idx[p] = 0;
                        p += 1;
                    }
                    if p == idx.len() {
                        break;
                    }
                }
            }
        }
    }
    count
}

/// Fixed curves lying on the stretchable chain of a template.
fn chain_overhead(tpl: &Template) -> usize {
    use dualgraph_core::Family::*;
    match tpl.family {
        // ends of the twisted cusp chain
        TwistedCusp => 2,
        // the head curve before the run
        TwistedChain | TwistedStar22d | Star22d => 1,
        TwistedDTilde => match tpl.variant {
            3 | 4 => 2,
            _ => 1,
        },
        _ => 0,
    }
}

/// Connected graphs satisfying every minimal-mode rule, with `r <= 2`,
/// `g <= 1` and `2r <= a <= 5r`; not necessarily negative definite.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = DualGraph> {
    proptest::collection::vec((1u32..=2, 0u32..=1, 2u32..=5), 1..=max_n)
        .prop_flat_map(|weights| {
            let n = weights.len();
            let tree: Vec<_> = (1..n).map(|i| (0..i, 1u32..=2)).collect();
            let extra = proptest::collection::vec((0..n, 0..n, 1u32..=2), 0..=n);
            (Just(weights), tree, extra)
        })
        .prop_map(|(weights, tree, extra)| {
            let vertices = weights
                .iter()
                .enumerate()
                .map(|(i, &(r, g, k))| Vertex::new(format!("E{}", i + 1), r, g, k * r))
                .collect();
            let mut graph = DualGraph::new(vertices).unwrap();
            let unit = |g: &DualGraph, i: usize, j: usize| g.vertex(i).r.lcm(&g.vertex(j).r);
            for (child, (parent, k)) in tree.into_iter().enumerate() {
                let m = k * unit(&graph, parent, child + 1);
                graph.add_edge(parent, child + 1, m).unwrap();
            }
            for (i, j, k) in extra {
                if i != j {
                    let m = k * unit(&graph, i, j);
                    graph.add_edge(i, j, m).unwrap();
                }
            }
            graph
        })
}

/// A graph together with a permutation of its vertices.
pub fn arb_permuted_graph(max_n: usize) -> impl Strategy<Value = (DualGraph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.len()).collect::<Vec<usize>>()).prop_shuffle();
        (Just(g), perm)
    })
}
