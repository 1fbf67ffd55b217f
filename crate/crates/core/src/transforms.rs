//! Graph surgeries: blowing up a rational point, and splitting a cusp of
//! parameter `r` into a cusp of parameter 1 after base change.

use num_rational::BigRational;
use num_traits::One;

use crate::classifier::{match_family, Family};
use crate::discrepancy::delta_coefficients;
use crate::graph::{DualGraph, Vertex};
use crate::{Error, Result};

/// Center of a blow-up. Only points of degree 1 over the residue field are
/// supported, so every affected vertex must have `r = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowUpSite {
    /// A point of multiplicity `m` on the curve `vertex` lying on no other
    /// component: `m = 1` is a smooth point, `m = 2` a node.
    OnCurve { vertex: usize, m: u32 },
    /// A transversal intersection point of `i` and `j`.
    OnIntersection { i: usize, j: usize },
}

impl BlowUpSite {
    /// Parses `vertex=<id>[,m=<k>]` or `edge=<id1>:<id2>` against the
    /// vertex ids of `g`.
    pub fn parse(g: &DualGraph, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidSite(format!("`{text}`: {msg}"));
        let lookup = |id: &str| {
            g.index_of(id)
                .ok_or_else(|| Error::UnknownVertex(id.into()))
        };
        if let Some(rest) = text.strip_prefix("edge=") {
            let (i, j) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected edge=<id1>:<id2>"))?;
            return Ok(Self::OnIntersection {
                i: lookup(i)?,
                j: lookup(j)?,
            });
        }
        if let Some(rest) = text.strip_prefix("vertex=") {
            let (id, m) = match rest.split_once(',') {
                Some((id, m)) => {
                    let m = m
                        .strip_prefix("m=")
                        .and_then(|m| m.parse::<u32>().ok())
                        .ok_or_else(|| bad("expected m=<multiplicity>"))?;
                    (id, m)
                }
                None => (rest, 1),
            };
            return Ok(Self::OnCurve {
                vertex: lookup(id)?,
                m,
            });
        }
        Err(bad("expected vertex=<id>,m=<k> or edge=<id1>:<id2>"))
    }

    /// `(vertex, multiplicity)` pairs of the old components through the
    /// center.
    fn incidences(&self) -> Vec<(usize, u32)> {
        match *self {
            Self::OnCurve { vertex, m } => vec![(vertex, m)],
            Self::OnIntersection { i, j } => vec![(i, 1), (j, 1)],
        }
    }

    fn check(&self, g: &DualGraph) -> Result<()> {
        let n = g.len();
        match *self {
            Self::OnCurve { vertex, m } => {
                if vertex >= n {
                    return Err(Error::InvalidSite(format!("no vertex with index {vertex}")));
                }
                if m == 0 {
                    return Err(Error::InvalidSite("multiplicity must be >= 1".into()));
                }
                let v = g.vertex(vertex);
                if u64::from(v.g) < genus_drop(m) {
                    return Err(Error::InvalidSite(format!(
                        "a point of multiplicity {m} needs genus >= {} on `{}` (g = {})",
                        genus_drop(m),
                        v.id,
                        v.g
                    )));
                }
            }
            Self::OnIntersection { i, j } => {
                if i >= n || j >= n || i == j {
                    return Err(Error::InvalidSite(format!("bad vertex pair ({i}, {j})")));
                }
                if g.edge(i, j) == 0 {
                    return Err(Error::InvalidSite(format!(
                        "`{}` and `{}` do not meet",
                        g.vertex(i).id,
                        g.vertex(j).id
                    )));
                }
            }
        }
        for (v, _) in self.incidences() {
            if g.vertex(v).r != 1 {
                return Err(Error::InvalidSite(format!(
                    "`{}` has r = {}; only rational points on r = 1 curves are supported",
                    g.vertex(v).id,
                    g.vertex(v).r
                )));
            }
        }
        Ok(())
    }
}

fn genus_drop(m: u32) -> u64 {
    let m = u64::from(m);
    m * (m - 1) / 2
}

fn fresh_id(g: &DualGraph) -> String {
    std::iter::once("C".to_string())
        .chain((1..).map(|k| format!("C{k}")))
        .find(|id| g.index_of(id).is_none())
        .expect("unbounded id supply")
}

/// Blows up `site`. The exceptional curve `C = (1, 0, 1)` is appended as
/// the last vertex and the result is in non-minimal mode.
pub fn blow_up(g: &DualGraph, site: &BlowUpSite) -> Result<DualGraph> {
    site.check(g)?;
    let mut out = g.clone().with_minimal(false);
    let c = out.push_vertex(Vertex::new(fresh_id(g), 1, 0, 1))?;
    match *site {
        BlowUpSite::OnCurve { vertex, m } => {
            let v = out.vertex_mut(vertex);
            v.a += m * m;
            v.g -= genus_drop(m) as u32;
            out.add_edge(vertex, c, m)?;
        }
        BlowUpSite::OnIntersection { i, j } => {
            out.vertex_mut(i).a += 1;
            out.vertex_mut(j).a += 1;
            out.set_edge(i, j, g.edge(i, j) - 1);
            out.add_edge(i, c, 1)?;
            out.add_edge(j, c, 1)?;
        }
    }
    Ok(out)
}

/// `d_C = sum m_i d_i - 1` over the old components through the center,
/// from `Delta_Z = g^* Delta_Y - C`.
pub fn predicted_new_discrepancy(g: &DualGraph, site: &BlowUpSite) -> Result<BigRational> {
    site.check(g)?;
    let d = delta_coefficients(g)?;
    let sum: BigRational = site
        .incidences()
        .into_iter()
        .map(|(v, m)| &d[v] * BigRational::from_integer(m.into()))
        .sum();
    Ok(sum - BigRational::one())
}

/// Splits a cusp of parameter `r` and length `n` into the cusp of
/// parameter 1 and length `rn`. Position `k` of the new cycle holds copy
/// `k / n` of the `(k mod n)`-th curve of the original cycle, with weight
/// `a / r`. A cusp with `r = 1` is returned unchanged.
pub fn cusp_base_change(g: &DualGraph) -> Result<DualGraph> {
    let m = match_family(g);
    if m.family != Family::Cusp {
        return Err(Error::NotACusp(format!("graph matches {}", m.family)));
    }
    let r = m.param("r").expect("cusp carries r") as u32;
    if r == 1 {
        return Ok(g.clone());
    }
    // for cycles the embedding lists the curves in cyclic order
    let order = &m.embedding;
    let n = order.len();
    let total = n * r as usize;
    let vertices = (0..total)
        .map(|k| {
            let v = g.vertex(order[k % n]);
            Vertex::new(format!("{}_{}", v.id, k / n), 1, 0, v.a / r)
        })
        .collect();
    let mut out = DualGraph::new(vertices)?.with_minimal(g.is_minimal());
    for k in 0..total {
        out.add_edge(k, (k + 1) % total, 1)?;
    }
    Ok(out)
}
