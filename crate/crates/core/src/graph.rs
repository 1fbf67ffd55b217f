//! The dual-graph data model: vertices weighted by `(r, g, a)`, symmetric
//! edge multiplicities, the line-oriented text format, the JSON mirror,
//! validation rules, the intersection matrix and DOT export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An exceptional curve `E_i`.
///
/// `r` is the degree of `H^0(E_i, O)` over the residue field, `g` the
/// (relative) arithmetic genus and `a = -(E_i^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub r: u32,
    pub g: u32,
    pub a: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, r: u32, g: u32, a: u32) -> Self {
        Self {
            id: id.into(),
            r,
            g,
            a,
        }
    }

    /// The weight triple `(r, g, a)`.
    pub fn weight(&self) -> (u32, u32, u32) {
        (self.r, self.g, self.a)
    }
}

/// Weighted multigraph of exceptional curves.
///
/// Edges are stored once per unordered pair with a positive multiplicity;
/// self-loops are not representable. The `minimal` flag controls whether
/// [`validate`] enforces `a_i >= 2 r_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), u32>,
    minimal: bool,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl DualGraph {
    /// Builds an edgeless graph in minimal-resolution mode.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (idx, v) in vertices.iter().enumerate() {
            check_vertex(v)?;
            if seen.insert(v.id.clone(), idx).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        Ok(Self {
            vertices,
            edges: BTreeMap::new(),
            minimal: true,
        })
    }

    /// Path `E1 - E2 - ... - En` with the given weights and consecutive
    /// multiplicities (`mults.len() == weights.len() - 1`).
    pub fn path(weights: &[(u32, u32, u32)], mults: &[u32]) -> Result<Self> {
        if !weights.is_empty() && mults.len() + 1 != weights.len() {
            return Err(Error::InvalidEdge(format!(
                "path of {} vertices needs {} multiplicities, got {}",
                weights.len(),
                weights.len() - 1,
                mults.len()
            )));
        }
        let mut g = Self::new(auto_vertices(weights))?;
        for (i, &m) in mults.iter().enumerate() {
            g.add_edge(i, i + 1, m)?;
        }
        Ok(g)
    }

    /// Cycle `E1 - ... - En - E1`; `mults[i]` joins `E_{i+1}` and `E_{i+2}`
    /// (indices mod n). For `n = 2` the two multiplicities add up.
    pub fn cycle(weights: &[(u32, u32, u32)], mults: &[u32]) -> Result<Self> {
        let n = weights.len();
        if n < 2 || mults.len() != n {
            return Err(Error::InvalidEdge(format!(
                "cycle of {n} vertices needs {n} multiplicities, got {}",
                mults.len()
            )));
        }
        let mut g = Self::new(auto_vertices(weights))?;
        for (i, &m) in mults.iter().enumerate() {
            g.add_edge(i, (i + 1) % n, m)?;
        }
        Ok(g)
    }

    /// Adds `m` to the multiplicity between `i` and `j`.
    pub fn add_edge(&mut self, i: usize, j: usize, m: u32) -> Result<()> {
        let n = self.vertices.len();
        if i >= n || j >= n {
            return Err(Error::InvalidEdge(format!(
                "vertex index out of range ({i}, {j})"
            )));
        }
        if i == j {
            return Err(Error::InvalidEdge(format!(
                "self-loop on `{}`",
                self.vertices[i].id
            )));
        }
        if m == 0 {
            return Err(Error::InvalidEdge("multiplicity must be >= 1".into()));
        }
        *self.edges.entry(ordered(i, j)).or_insert(0) += m;
        Ok(())
    }

    /// Replaces the multiplicity between `i` and `j` (0 removes the edge).
    pub fn set_edge(&mut self, i: usize, j: usize, m: u32) {
        assert!(i != j, "self-loops are not representable");
        if m == 0 {
            self.edges.remove(&ordered(i, j));
        } else {
            self.edges.insert(ordered(i, j), m);
        }
    }

    pub fn with_minimal(mut self, minimal: bool) -> Self {
        self.minimal = minimal;
        self
    }

    pub fn set_minimal(&mut self, minimal: bool) {
        self.minimal = minimal;
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub(crate) fn vertex_mut(&mut self, i: usize) -> &mut Vertex {
        &mut self.vertices[i]
    }

    /// Appends a vertex and returns its index.
    pub fn push_vertex(&mut self, v: Vertex) -> Result<usize> {
        check_vertex(&v)?;
        if self.index_of(&v.id).is_some() {
            return Err(Error::DuplicateVertex(v.id));
        }
        self.vertices.push(v);
        Ok(self.vertices.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Multiplicity `e_ij` (0 when not adjacent or `i == j`).
    pub fn edge(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        self.edges.get(&ordered(i, j)).copied().unwrap_or(0)
    }

    /// All edges as `(i, j, m)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adjacent vertices with multiplicities.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.len()).filter_map(move |j| {
            let m = self.edge(i, j);
            (m > 0).then_some((j, m))
        })
    }

    /// Number of distinct adjacent vertices.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, _) in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Reorders vertices so that new index `k` holds old vertex `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len());
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let vertices = perm.iter().map(|&old| self.vertices[old].clone()).collect();
        let edges = self
            .edges
            .iter()
            .map(|(&(i, j), &m)| (ordered(inverse[i], inverse[j]), m))
            .collect();
        Self {
            vertices,
            edges,
            minimal: self.minimal,
        }
    }

    /// Serializes to the line-oriented text format, omitting default
    /// `r = 1`, `g = 0` and `m = 1`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str("vertex ");
            out.push_str(&v.id);
            if v.r != 1 {
                let _ = write!(out, " r={}", v.r);
            }
            if v.g != 0 {
                let _ = write!(out, " g={}", v.g);
            }
            let _ = writeln!(out, " a={}", v.a);
        }
        for (i, j, m) in self.edges() {
            let _ = write!(out, "edge {} {}", self.vertices[i].id, self.vertices[j].id);
            if m != 1 {
                let _ = write!(out, " m={m}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the JSON mirror of the text format.
    pub fn from_json(source: &str) -> Result<Self> {
        let doc: GraphJson =
            serde_json::from_str(source).map_err(|e| Error::Json(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

fn auto_vertices(weights: &[(u32, u32, u32)]) -> Vec<Vertex> {
    weights
        .iter()
        .enumerate()
        .map(|(i, &(r, g, a))| Vertex::new(format!("E{}", i + 1), r, g, a))
        .collect()
}

fn check_vertex(v: &Vertex) -> Result<()> {
    let bad = |message: &str| {
        Err(Error::InvalidVertex {
            id: v.id.clone(),
            message: message.into(),
        })
    };
    if v.id.is_empty()
        || v.id
            .chars()
            .any(|c| c.is_whitespace() || c == '#' || c == '=')
    {
        return bad("id must be a non-empty token without whitespace, `#` or `=`");
    }
    if v.r == 0 {
        return bad("r must be >= 1");
    }
    if v.a == 0 {
        return bad("a must be >= 1");
    }
    Ok(())
}

/// JSON mirror: `{"vertices":[{"id","r","g","a"}],"edges":[{"a","b","m"}],"minimal":bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
    #[serde(default = "default_true")]
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default = "default_one")]
    pub r: i64,
    #[serde(default)]
    pub g: i64,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub a: String,
    pub b: String,
    #[serde(default = "default_one")]
    pub m: i64,
}

fn default_true() -> bool {
    true
}

fn default_one() -> i64 {
    1
}

impl From<&DualGraph> for GraphJson {
    fn from(g: &DualGraph) -> Self {
        Self {
            vertices: g
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    r: v.r.into(),
                    g: v.g.into(),
                    a: v.a.into(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(i, j, m)| EdgeJson {
                    a: g.vertices[i].id.clone(),
                    b: g.vertices[j].id.clone(),
                    m: m.into(),
                })
                .collect(),
            minimal: g.minimal,
        }
    }
}

impl TryFrom<GraphJson> for DualGraph {
    type Error = Error;

    fn try_from(doc: GraphJson) -> Result<Self> {
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for v in doc.vertices {
            let r = field_u32(&v.id, "r", v.r, 1)?;
            let g = field_u32(&v.id, "g", v.g, 0)?;
            let a = field_u32(&v.id, "a", v.a, 1)?;
            vertices.push(Vertex::new(v.id, r, g, a));
        }
        let mut graph = DualGraph::new(vertices)?;
        for e in doc.edges {
            let i = graph
                .index_of(&e.a)
                .ok_or_else(|| Error::UnknownVertex(e.a.clone()))?;
            let j = graph
                .index_of(&e.b)
                .ok_or_else(|| Error::UnknownVertex(e.b.clone()))?;
            let m = u32::try_from(e.m)
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::InvalidEdge(format!("m={} must be >= 1", e.m)))?;
            graph.add_edge(i, j, m)?;
        }
        Ok(graph.with_minimal(doc.minimal))
    }
}

fn field_u32(id: &str, key: &str, value: i64, min: i64) -> Result<u32> {
    if value < min {
        return Err(Error::InvalidVertex {
            id: id.into(),
            message: format!("{key} must be >= {min}, got {value}"),
        });
    }
    u32::try_from(value).map_err(|_| Error::InvalidVertex {
        id: id.into(),
        message: format!("{key}={value} out of range"),
    })
}

/// Parses the line-oriented graph format.
///
/// ```text
/// # comment
/// vertex <id> [r=<int>] [g=<int>] a=<int>
/// edge <id1> <id2> [m=<int>]
/// ```
///
/// Omitted `r`, `g`, `m` default to 1, 0, 1. Repeated edge lines add up.
/// Edges may refer to vertices declared on later lines.
pub fn parse_graph(source: &str) -> Result<DualGraph> {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut pending_edges: Vec<(String, String, u32)> = Vec::new();

    for (lineno, raw) in source.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        let Some(&(kw_col, keyword)) = tokens.first() else {
            continue;
        };
        let syntax = |column: usize, message: String| Error::Syntax {
            line: lineno + 1,
            column,
            message,
        };
        match keyword {
            "vertex" => {
                let &(_, id) = tokens
                    .get(1)
                    .ok_or_else(|| syntax(kw_col + keyword.len(), "expected vertex id".into()))?;
                if id.contains('=') {
                    return Err(syntax(
                        tokens[1].0,
                        format!("expected vertex id, found `{id}`"),
                    ));
                }
                let mut r = None;
                let mut g = None;
                let mut a = None;
                for &(col, tok) in &tokens[2..] {
                    let (key, value) = split_option(tok)
                        .ok_or_else(|| syntax(col, format!("expected key=value, found `{tok}`")))?;
                    let value: i64 = value
                        .parse()
                        .map_err(|_| syntax(col, format!("invalid integer in `{tok}`")))?;
                    let slot = match key {
                        "r" => &mut r,
                        "g" => &mut g,
                        "a" => &mut a,
                        _ => return Err(syntax(col, format!("unknown vertex option `{key}`"))),
                    };
                    if slot.replace(value).is_some() {
                        return Err(syntax(col, format!("option `{key}` given twice")));
                    }
                }
                let a = a.ok_or_else(|| syntax(kw_col, format!("vertex `{id}` is missing a=")))?;
                let r = field_u32(id, "r", r.unwrap_or(1), 1)?;
                let g = field_u32(id, "g", g.unwrap_or(0), 0)?;
                let a = field_u32(id, "a", a, 1)?;
                if vertices.iter().any(|v| v.id == id) {
                    return Err(Error::DuplicateVertex(id.into()));
                }
                vertices.push(Vertex::new(id, r, g, a));
            }
            "edge" => {
                if tokens.len() < 3 {
                    return Err(syntax(
                        kw_col,
                        "expected `edge <id1> <id2> [m=<int>]`".into(),
                    ));
                }
                let mut m = None;
                for &(col, tok) in &tokens[3..] {
                    match split_option(tok) {
                        Some(("m", value)) => {
                            let value: i64 = value
                                .parse()
                                .map_err(|_| syntax(col, format!("invalid integer in `{tok}`")))?;
                            if value < 1 {
                                return Err(Error::InvalidEdge(format!("m={value} must be >= 1")));
                            }
                            if m.replace(value).is_some() {
                                return Err(syntax(col, "option `m` given twice".into()));
                            }
                        }
                        _ => return Err(syntax(col, format!("unexpected `{tok}` in edge"))),
                    }
                }
                let m = u32::try_from(m.unwrap_or(1))
                    .map_err(|_| Error::InvalidEdge("multiplicity out of range".into()))?;
                pending_edges.push((tokens[1].1.into(), tokens[2].1.into(), m));
            }
            other => return Err(syntax(kw_col, format!("unknown directive `{other}`"))),
        }
    }

    let mut graph = DualGraph::new(vertices)?;
    for (a, b, m) in pending_edges {
        let i = graph.index_of(&a).ok_or(Error::UnknownVertex(a))?;
        let j = graph.index_of(&b).ok_or(Error::UnknownVertex(b))?;
        graph.add_edge(i, j, m)?;
    }
    Ok(graph)
}

/// Whitespace tokens with their 1-based column.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..idx]));
                start = None;
            }
            (false, None) => start = Some(idx),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, tok)| (line[..s].chars().count() + 1, tok))
        .collect()
}

fn split_option(tok: &str) -> Option<(&str, &str)> {
    let (k, v) = tok.split_once('=')?;
    (!k.is_empty() && !v.is_empty()).then_some((k, v))
}

/// One failed validation rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// Parses either format: JSON when the first non-blank character is `{`,
/// the line format otherwise.
pub fn read_graph(source: &str) -> Result<DualGraph> {
    if source.trim_start().starts_with('{') {
        DualGraph::from_json(source)
    } else {
        parse_graph(source)
    }
}

/// Checks the structural rules of a dual graph.
///
/// Rules: `nonempty`, `connected`, `r-divides-a`, `r-divides-edge` (both
/// endpoints) and, in minimal mode only, `minimal-a` (`a_i >= 2 r_i`).
/// Negative definiteness is not checked here.
pub fn validate(g: &DualGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let mut violate = |rule: &str, message: String| {
        violations.push(Violation {
            rule: rule.into(),
            message,
        })
    };
    if g.is_empty() {
        violate("nonempty", "graph has no vertices".into());
    } else if !g.is_connected() {
        violate("connected", "graph is disconnected".into());
    }
    for v in g.vertices() {
        if v.a % v.r != 0 {
            violate(
                "r-divides-a",
                format!("vertex {}: r={} does not divide a={}", v.id, v.r, v.a),
            );
        }
        if g.is_minimal() && v.a < 2 * v.r {
            violate(
                "minimal-a",
                format!(
                    "vertex {}: a={} < 2r={} in a minimal resolution",
                    v.id,
                    v.a,
                    2 * v.r
                ),
            );
        }
    }
    for (i, j, m) in g.edges() {
        for k in [i, j] {
            let v = g.vertex(k);
            if m % v.r != 0 {
                violate(
                    "r-divides-edge",
                    format!(
                        "edge {}-{}: r={} of {} does not divide m={m}",
                        g.vertex(i).id,
                        g.vertex(j).id,
                        v.r,
                        v.id
                    ),
                );
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// Symmetric integer matrix with `M_ii = -a_i` and `M_ij = e_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntersectionMatrix {
    /// Builds from rows; panics unless square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "intersection matrix must be square");
            entries.extend_from_slice(row);
        }
        Self { n, entries }
    }

    /// Row-major `n x n` entries.
    pub(crate) fn from_entries(n: usize, entries: Vec<i64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

pub fn intersection_matrix(g: &DualGraph) -> IntersectionMatrix {
    let n = g.len();
    let mut entries = vec![0i64; n * n];
    for (i, v) in g.vertices().iter().enumerate() {
        entries[i * n + i] = -i64::from(v.a);
    }
    for (i, j, m) in g.edges() {
        entries[i * n + j] = m.into();
        entries[j * n + i] = m.into();
    }
    IntersectionMatrix { n, entries }
}

/// The parameter `min_i r_i`.
pub fn graph_parameter(g: &DualGraph) -> Result<u32> {
    g.vertices()
        .iter()
        .map(|v| v.r)
        .min()
        .ok_or(Error::EmptyGraph)
}

/// Graphviz rendering in the usual drawing convention: each curve is a
/// circle holding `-a_i`, with `r_i` above (omitted when 1) and `g_i` below
/// (omitted when 0). Multiplicities up to 3 are drawn as parallel edges,
/// larger ones as a single edge labeled `<e>`.
pub fn to_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let mut label = String::from("<");
        if v.r != 1 {
            let _ = write!(label, "<FONT POINT-SIZE=\"9\">{}</FONT><BR/>", v.r);
        }
        let _ = write!(label, "-{}", v.a);
        if v.g != 0 {
            let _ = write!(label, "<BR/><FONT POINT-SIZE=\"9\">{}</FONT>", v.g);
        }
        label.push('>');
        let _ = writeln!(
            out,
            "  n{i} [label={label}, tooltip=\"{}\"];",
            v.id.replace('"', "\\\"")
        );
    }
    for (i, j, m) in g.edges() {
        if m <= 3 {
            for _ in 0..m {
                let _ = writeln!(out, "  n{i} -- n{j};");
            }
        } else {
            let _ = writeln!(out, "  n{i} -- n{j} [label=\"⟨{m}⟩\"];");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_applies_defaults() {
        let g = parse_graph("vertex E1 a=2").unwrap();
        assert_eq!(g.vertices(), &[Vertex::new("E1", 1, 0, 2)]);
        assert!(g.is_minimal());
    }

    #[test]
    fn parse_two_vertex_graph() {
        let g = parse_graph("vertex A a=3\nvertex B a=3\nedge A B m=2").unwrap();
        assert_eq!(g.edge(0, 1), 2);
        assert_eq!(
            intersection_matrix(&g).rows(),
            vec![vec![-3, 2], vec![2, -3]]
        );
    }

    #[test]
    fn parse_rejects_zero_r() {
        assert!(matches!(
            parse_graph("vertex E r=0 a=2"),
            Err(Error::InvalidVertex { .. })
        ));
        assert!(matches!(
            parse_graph("vertex E a=-2"),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_graph("vertex A a=2\n  vortex B a=2").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 3,
                message: "unknown directive `vortex`".into()
            }
        );
        let err = parse_graph("vertex A a=x").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 1,
                column: 10,
                ..
            }
        ));
        assert!(matches!(
            parse_graph("vertex A r=2"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parse_unknown_and_duplicate_vertices() {
        assert_eq!(
            parse_graph("vertex A a=2\nedge A B"),
            Err(Error::UnknownVertex("B".into()))
        );
        assert_eq!(
            parse_graph("vertex A a=2\nvertex A a=3"),
            Err(Error::DuplicateVertex("A".into()))
        );
        assert!(matches!(
            parse_graph("vertex A a=2\nedge A A"),
            Err(Error::InvalidEdge(_))
        ));
    }

    #[test]
    fn repeated_edges_sum_and_comments_are_ignored() {
        let g = parse_graph(
            "# a cusp of length two\n\nvertex A a=3 # first\nvertex B a=3\nedge A B\nedge B A\n",
        )
        .unwrap();
        assert_eq!(g.edge(0, 1), 2);
    }

    #[test]
    fn validate_rules() {
        let ok = DualGraph::path(&[(1, 0, 2)], &[]).unwrap();
        assert!(validate(&ok).ok);

        let bad = DualGraph::path(&[(2, 0, 3)], &[]).unwrap();
        let report = validate(&bad);
        assert!(!report.ok);
        assert!(report.violations.iter().any(|v| v.rule == "r-divides-a"));

        let two =
            DualGraph::new(vec![Vertex::new("A", 1, 0, 2), Vertex::new("B", 1, 0, 2)]).unwrap();
        let report = validate(&two);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, "connected");
    }

    #[test]
    fn validate_edge_divisibility_uses_both_endpoints() {
        let g = DualGraph::path(&[(2, 0, 4), (1, 0, 2)], &[1]).unwrap();
        let report = validate(&g);
        assert!(report.violations.iter().any(|v| v.rule == "r-divides-edge"));
    }

    #[test]
    fn minimal_mode_is_a_flag() {
        let g = DualGraph::path(&[(1, 0, 3), (1, 0, 1)], &[1]).unwrap();
        assert!(!validate(&g).ok);
        assert!(validate(&g.with_minimal(false)).ok);
    }

    #[test]
    fn intersection_matrices() {
        let single = DualGraph::path(&[(1, 0, 2)], &[]).unwrap();
        assert_eq!(intersection_matrix(&single).rows(), vec![vec![-2]]);
        let chain = DualGraph::path(&[(1, 0, 2), (1, 0, 3)], &[1]).unwrap();
        assert_eq!(
            intersection_matrix(&chain).rows(),
            vec![vec![-2, 1], vec![1, -3]]
        );
        let cusp = DualGraph::cycle(&[(1, 0, 3); 3], &[1, 1, 1]).unwrap();
        assert_eq!(
            intersection_matrix(&cusp).rows(),
            vec![vec![-3, 1, 1], vec![1, -3, 1], vec![1, 1, -3]]
        );
    }

    #[test]
    fn parameter_is_min_r() {
        let g = DualGraph::path(&[(2, 0, 4), (2, 0, 4), (1, 0, 2), (1, 0, 2)], &[2, 2, 1]).unwrap();
        assert_eq!(graph_parameter(&g), Ok(1));
        let single = DualGraph::path(&[(3, 0, 6)], &[]).unwrap();
        assert_eq!(graph_parameter(&single), Ok(3));
        let all_two = DualGraph::path(&[(2, 0, 4), (2, 0, 4)], &[2]).unwrap();
        assert_eq!(graph_parameter(&all_two), Ok(2));
        assert_eq!(
            graph_parameter(&DualGraph::new(vec![]).unwrap()),
            Err(Error::EmptyGraph)
        );
    }

    #[test]
    fn dot_drawing_rules() {
        let elliptic = DualGraph::path(&[(1, 1, 3)], &[]).unwrap();
        let dot = to_dot(&elliptic);
        assert!(dot.contains("label=<-3<BR/><FONT POINT-SIZE=\"9\">1</FONT>>"));

        let double = DualGraph::path(&[(1, 0, 3), (1, 0, 3)], &[2]).unwrap();
        assert_eq!(to_dot(&double).matches("n0 -- n1;").count(), 2);

        let five = DualGraph::path(&[(1, 0, 9), (1, 0, 9)], &[5]).unwrap();
        let dot = to_dot(&five);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("label=\"⟨5⟩\""));
    }

    #[test]
    fn json_mirror() {
        let g = parse_graph("vertex A r=2 a=4\nvertex B a=2\nedge A B m=2").unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"vertices":[{"id":"A","r":2,"g":0,"a":4},{"id":"B","r":1,"g":0,"a":2}],"edges":[{"a":"A","b":"B","m":2}],"minimal":true}"#
        );
        assert_eq!(DualGraph::from_json(&text).unwrap(), g);
        let sparse = DualGraph::from_json(r#"{"vertices":[{"id":"X","a":2}]}"#).unwrap();
        assert_eq!(sparse.vertex(0), &Vertex::new("X", 1, 0, 2));
    }
}
