//! Drawn diagrams as labeled patterns, and exact pattern-to-graph matching.

use crate::graph::{DualGraph, Vertex};

/// Self-intersection label of a drawn circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRule {
    /// `*`: any `a` with `r | a` and `a >= 2r`.
    Any,
    /// An explicit `a` (an empty circle is `Exact(2r)`).
    Exact(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternNode {
    pub r: u32,
    pub g: u32,
    pub a: WeightRule,
}

impl PatternNode {
    pub fn accepts(&self, v: &Vertex) -> bool {
        v.r == self.r
            && v.g == self.g
            && match self.a {
                WeightRule::Any => v.a.is_multiple_of(v.r) && v.a >= 2 * v.r,
                WeightRule::Exact(a) => v.a == a,
            }
    }
}

/// Empty circle with the given `r` (so `a = 2r`).
pub(crate) fn empty(r: u32) -> PatternNode {
    PatternNode {
        r,
        g: 0,
        a: WeightRule::Exact(2 * r),
    }
}

/// Circle labeled `*`.
pub(crate) fn any(r: u32) -> PatternNode {
    PatternNode {
        r,
        g: 0,
        a: WeightRule::Any,
    }
}

/// Circle labeled `-a`.
pub(crate) fn exact(r: u32, a: u32) -> PatternNode {
    PatternNode {
        r,
        g: 0,
        a: WeightRule::Exact(a),
    }
}

/// A fully instantiated drawn diagram (all `...` runs expanded).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pattern {
    pub nodes: Vec<PatternNode>,
    pub edges: Vec<(usize, usize, u32)>,
    /// Nodes of the stretchable run, in drawing order.
    pub run: Vec<usize>,
}

impl Pattern {
    pub(crate) fn add(&mut self, node: PatternNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub(crate) fn link(&mut self, i: usize, j: usize, m: u32) {
        self.edges.push((i, j, m));
    }

    /// Appends a chain of nodes hanging off `from` (if any) and returns the
    /// new indices.
    pub(crate) fn chain(
        &mut self,
        from: Option<usize>,
        nodes: impl IntoIterator<Item = PatternNode>,
        first_mult: u32,
        inner_mult: u32,
    ) -> Vec<usize> {
        let mut prev = from;
        let mut added = Vec::new();
        for (k, node) in nodes.into_iter().enumerate() {
            let idx = self.add(node);
            if let Some(p) = prev {
                self.link(p, idx, if k == 0 { first_mult } else { inner_mult });
            }
            prev = Some(idx);
            added.push(idx);
        }
        added
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Indices of the `*` nodes.
    pub fn free_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.nodes[i].a == WeightRule::Any)
            .collect()
    }

    /// Builds a concrete graph, using `free_weights` (one per `*` node in
    /// index order) for the unspecified self-intersections.
    pub fn instantiate(&self, free_weights: &[u32]) -> DualGraph {
        let mut free = free_weights.iter();
        let vertices = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let a = match n.a {
                    WeightRule::Exact(a) => a,
                    WeightRule::Any => *free.next().expect("one weight per free node"),
                };
                Vertex::new(format!("E{}", i + 1), n.r, n.g, a)
            })
            .collect();
        assert!(free.next().is_none(), "too many free weights");
        let mut g = DualGraph::new(vertices).expect("pattern vertices are valid");
        for &(i, j, m) in &self.edges {
            g.add_edge(i, j, m).expect("pattern edges are valid");
        }
        g
    }

    fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut adj = vec![vec![0u32; n]; n];
        for &(i, j, m) in &self.edges {
            adj[i][j] += m;
            adj[j][i] += m;
        }
        adj
    }
}

/// Dense view of a graph for repeated matching.
pub(crate) struct GraphView<'a> {
    pub graph: &'a DualGraph,
    adj: Vec<Vec<u32>>,
    degree: Vec<usize>,
    sorted_degrees: Vec<usize>,
    edge_count: usize,
}

impl<'a> GraphView<'a> {
    pub fn new(graph: &'a DualGraph) -> Self {
        let n = graph.len();
        let mut adj = vec![vec![0u32; n]; n];
        for (i, j, m) in graph.edges() {
            adj[i][j] = m;
            adj[j][i] = m;
        }
        let degree: Vec<usize> = adj
            .iter()
            .map(|row| row.iter().filter(|&&m| m > 0).count())
            .collect();
        let mut sorted_degrees = degree.clone();
        sorted_degrees.sort_unstable();
        Self {
            graph,
            adj,
            degree,
            sorted_degrees,
            edge_count: graph.edge_count(),
        }
    }
}

/// Finds an isomorphism from the pattern onto the graph that respects
/// `r`, `g`, the weight labels and every edge multiplicity. Returns the
/// graph vertex assigned to each pattern node.
pub(crate) fn embed(pattern: &Pattern, view: &GraphView<'_>) -> Option<Vec<usize>> {
    let n = pattern.len();
    if n != view.graph.len() || n == 0 {
        return None;
    }
    let p_adj = pattern.adjacency();
    let p_degree: Vec<usize> = p_adj
        .iter()
        .map(|row| row.iter().filter(|&&m| m > 0).count())
        .collect();
    let p_edges = p_adj
        .iter()
        .enumerate()
        .map(|(i, row)| row[i + 1..].iter().filter(|&&m| m > 0).count())
        .sum::<usize>();
    if p_edges != view.edge_count {
        return None;
    }
    let mut sorted = p_degree.clone();
    sorted.sort_unstable();
    if sorted != view.sorted_degrees {
        return None;
    }

    // BFS order so that every node after the first has an earlier neighbor
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let p = order[head];
        head += 1;
        for q in 0..n {
            if p_adj[p][q] > 0 && !seen[q] {
                seen[q] = true;
                parent[q] = Some(p);
                order.push(q);
            }
        }
    }
    if order.len() != n {
        return None;
    }

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let ctx = Ctx {
        pattern,
        p_adj: &p_adj,
        p_degree: &p_degree,
        view,
        order: &order,
        parent: &parent,
    };
    ctx.extend(0, &mut assignment, &mut used)
        .then_some(assignment)
}

struct Ctx<'a, 'g> {
    pattern: &'a Pattern,
    p_adj: &'a [Vec<u32>],
    p_degree: &'a [usize],
    view: &'a GraphView<'g>,
    order: &'a [usize],
    parent: &'a [Option<usize>],
}

impl Ctx<'_, '_> {
    fn extend(&self, depth: usize, assignment: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let n = assignment.len();
        let candidates: Vec<usize> = match self.parent[p] {
            Some(q) => {
                let host = assignment[q];
                (0..n).filter(|&v| self.view.adj[host][v] > 0).collect()
            }
            None => (0..n).collect(),
        };
        for v in candidates {
            if used[v] || !self.compatible(p, v, depth, assignment) {
                continue;
            }
            assignment[p] = v;
            used[v] = true;
            if self.extend(depth + 1, assignment, used) {
                return true;
            }
            used[v] = false;
            assignment[p] = usize::MAX;
        }
        false
    }

    fn compatible(&self, p: usize, v: usize, depth: usize, assignment: &[usize]) -> bool {
        if self.p_degree[p] != self.view.degree[v]
            || !self.pattern.nodes[p].accepts(self.view.graph.vertex(v))
        {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&q| self.p_adj[p][q] == self.view.adj[v][assignment[q]])
    }
}
