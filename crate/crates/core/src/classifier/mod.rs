//! Recognition of the drawn klt / lc families and the cross-check against
//! the numerical verdict.

mod pattern;
mod templates;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::discrepancy::{classify_numerical, DiscrepancyResult, NumericClass};
use crate::graph::{graph_parameter, DualGraph};
use crate::{Error, Result};

pub use pattern::{Pattern, PatternNode, WeightRule};
pub use templates::{templates, Template};

use pattern::{embed, GraphView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Chain,
    Star22d,
    Star233,
    Star234,
    Star235,
    TwistedChain,
    TwistedStar22d,
    TwistedStar233,
    Star236,
    Star333,
    Star244,
    DTilde,
    TwistedStar333,
    TwistedStar244,
    TwistedDTilde,
    SimpleElliptic,
    Cusp,
    TwistedCusp,
    NoMatch,
}

impl Family {
    /// 1: klt, 2: rational lc, 3: non-rational lc.
    pub fn figure(self) -> Option<u8> {
        use Family::*;
        match self {
            Chain | Star22d | Star233 | Star234 | Star235 | TwistedChain | TwistedStar22d
            | TwistedStar233 => Some(1),
            Star236 | Star333 | Star244 | DTilde | TwistedStar333 | TwistedStar244
            | TwistedDTilde => Some(2),
            SimpleElliptic | Cusp | TwistedCusp => Some(3),
            NoMatch => None,
        }
    }

    pub fn name(self) -> &'static str {
        use Family::*;
        match self {
            Chain => "Chain",
            Star22d => "Star22d",
            Star233 => "Star233",
            Star234 => "Star234",
            Star235 => "Star235",
            TwistedChain => "TwistedChain",
            TwistedStar22d => "TwistedStar22d",
            TwistedStar233 => "TwistedStar233",
            Star236 => "Star236",
            Star333 => "Star333",
            Star244 => "Star244",
            DTilde => "DTilde",
            TwistedStar333 => "TwistedStar333",
            TwistedStar244 => "TwistedStar244",
            TwistedDTilde => "TwistedDTilde",
            SimpleElliptic => "SimpleElliptic",
            Cusp => "Cusp",
            TwistedCusp => "TwistedCusp",
            NoMatch => "NoMatch",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMatch {
    pub family: Family,
    pub figure: Option<u8>,
    /// 1-based diagram index within the family; 0 for `NoMatch`.
    pub variant: u8,
    pub params: BTreeMap<String, i64>,
    /// Graph vertex matched to each template node, in template order.
    pub embedding: Vec<usize>,
}

impl FamilyMatch {
    fn none() -> Self {
        Self {
            family: Family::NoMatch,
            figure: None,
            variant: 0,
            params: BTreeMap::new(),
            embedding: Vec::new(),
        }
    }

    pub fn is_match(&self) -> bool {
        self.family != Family::NoMatch
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

fn try_template(
    tpl: &Template,
    g: &DualGraph,
    view: &GraphView<'_>,
    r: u32,
) -> Option<FamilyMatch> {
    let built;
    let pattern = match tpl.fixed() {
        Some(p) if p.len() == g.len() => p,
        Some(_) => return None,
        None => {
            let run = tpl.run_for(g.len())?;
            built = tpl.build(run, if tpl.parametric { r } else { 1 });
            &built
        }
    };
    let embedding = embed(pattern, view)?;
    let params = params_for(tpl, pattern, &embedding, g, r);
    Some(FamilyMatch {
        family: tpl.family,
        figure: tpl.family.figure(),
        variant: tpl.variant,
        params,
        embedding,
    })
}

fn params_for(
    tpl: &Template,
    pattern: &Pattern,
    embedding: &[usize],
    g: &DualGraph,
    r: u32,
) -> BTreeMap<String, i64> {
    let mut params = BTreeMap::new();
    let n = g.len() as i64;
    match tpl.family {
        Family::Cusp | Family::TwistedCusp => {
            params.insert("r".into(), i64::from(r));
            params.insert("n".into(), n);
        }
        Family::DTilde => {
            params.insert("n".into(), n - 1);
        }
        Family::Star22d => {
            let weights: Vec<i64> = pattern
                .run
                .iter()
                .map(|&p| i64::from(g.vertex(embedding[p]).a))
                .collect();
            params.insert("d".into(), continuant(&weights));
        }
        _ => {}
    }
    if tpl.stretch.is_some() && !matches!(tpl.family, Family::Cusp | Family::TwistedCusp) {
        params.insert("length".into(), pattern.run.len() as i64);
    }
    params
}

/// Determinant of the negated intersection matrix of a chain.
fn continuant(weights: &[i64]) -> i64 {
    let (mut prev, mut cur) = (1i64, 1i64);
    for (k, &w) in weights.iter().enumerate() {
        let next = if k == 0 { w } else { w * cur - prev };
        prev = cur;
        cur = next;
    }
    cur
}

/// First matching drawn diagram in precedence order (figure 3, 2, 1; the
/// plain chain last), or `NoMatch`.
pub fn match_family(g: &DualGraph) -> FamilyMatch {
    let Ok(r) = graph_parameter(g) else {
        return FamilyMatch::none();
    };
    let view = GraphView::new(g);
    templates()
        .iter()
        .find_map(|tpl| try_template(tpl, g, &view, r))
        .unwrap_or_else(FamilyMatch::none)
}

/// Every drawn diagram the graph instantiates, in precedence order.
pub fn matching_templates(g: &DualGraph) -> Vec<FamilyMatch> {
    let Ok(r) = graph_parameter(g) else {
        return Vec::new();
    };
    let view = GraphView::new(g);
    templates()
        .iter()
        .filter_map(|tpl| try_template(tpl, g, &view, r))
        .collect()
}

/// The class a figure promises: 1 is klt, 2 is lc with `Delta_Y != E`,
/// 3 is lc with `Delta_Y = E`.
pub fn expected_numeric_class(m: &FamilyMatch) -> Result<NumericClass> {
    match m.figure {
        Some(1) => Ok(NumericClass::Klt),
        Some(2) => Ok(NumericClass::LcNotKlt {
            delta_equals_e: false,
        }),
        Some(3) => Ok(NumericClass::LcNotKlt {
            delta_equals_e: true,
        }),
        _ => Err(Error::NoMatch),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent { details: String },
    Unmatched { class: NumericClass },
}

impl Consistency {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Consistent => "consistent",
            Self::Inconsistent { .. } => "inconsistent",
            Self::Unmatched { .. } => "unmatched",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub matched: FamilyMatch,
    pub result: DiscrepancyResult,
    pub verdict: Consistency,
}

pub fn cross_check(g: &DualGraph) -> Result<CrossCheck> {
    let result = classify_numerical(g)?;
    let matched = match_family(g);
    let verdict = match expected_numeric_class(&matched) {
        Err(_) => Consistency::Unmatched {
            class: result.class,
        },
        Ok(expected) if expected == result.class => Consistency::Consistent,
        Ok(expected) => Consistency::Inconsistent {
            details: format!(
                "{} variant {} promises {expected}, computed {}",
                matched.family, matched.variant, result.class
            ),
        },
    };
    Ok(CrossCheck {
        matched,
        result,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_elliptic() {
        let g = DualGraph::path(&[(1, 1, 5)], &[]).unwrap();
        let m = match_family(&g);
        assert_eq!(
            (m.family, m.figure, m.variant),
            (Family::SimpleElliptic, Some(3), 1)
        );
        assert_eq!(
            expected_numeric_class(&m).unwrap(),
            NumericClass::LcNotKlt {
                delta_equals_e: true
            }
        );
    }

    #[test]
    fn chain_and_cusp() {
        let chain = DualGraph::path(&[(1, 0, 2); 3], &[1, 1]).unwrap();
        let m = match_family(&chain);
        assert_eq!((m.family, m.figure), (Family::Chain, Some(1)));
        assert_eq!(m.param("length"), Some(3));

        let cusp = DualGraph::cycle(&[(1, 0, 3), (1, 0, 3), (1, 0, 4)], &[1, 1, 1]).unwrap();
        let m = match_family(&cusp);
        assert_eq!((m.family, m.variant), (Family::Cusp, 2));
        assert_eq!((m.param("r"), m.param("n")), (Some(1), Some(3)));
        assert_eq!(cross_check(&cusp).unwrap().verdict, Consistency::Consistent);

        let two = DualGraph::cycle(&[(2, 0, 6), (2, 0, 4)], &[2, 2]).unwrap();
        let m = match_family(&two);
        assert_eq!((m.family, m.variant), (Family::Cusp, 1));
        assert_eq!((m.param("r"), m.param("n")), (Some(2), Some(2)));
    }

    #[test]
    fn d_tilde_and_star22d() {
        let mut d4 = DualGraph::path(&[(1, 0, 3)], &[]).unwrap();
        for k in 0..4 {
            let leaf = d4
                .push_vertex(crate::Vertex::new(format!("L{k}"), 1, 0, 2))
                .unwrap();
            d4.add_edge(0, leaf, 1).unwrap();
        }
        let m = match_family(&d4);
        assert_eq!((m.family, m.figure), (Family::DTilde, Some(2)));
        assert_eq!(m.param("n"), Some(4));
        assert_eq!(cross_check(&d4).unwrap().verdict, Consistency::Consistent);

        // D_5-like star: two -2 leaves on a center, arm (2, 3)
        let mut g = DualGraph::path(&[(1, 0, 2), (1, 0, 2), (1, 0, 3)], &[1, 1]).unwrap();
        for k in 0..2 {
            let leaf = g
                .push_vertex(crate::Vertex::new(format!("L{k}"), 1, 0, 2))
                .unwrap();
            g.add_edge(0, leaf, 1).unwrap();
        }
        let m = match_family(&g);
        assert_eq!(m.family, Family::Star22d);
        assert_eq!(m.param("d"), Some(5));
    }

    #[test]
    fn lone_r2_vertex_is_unmatched() {
        let g = DualGraph::path(&[(2, 0, 4)], &[]).unwrap();
        assert!(!match_family(&g).is_match());
        assert_eq!(
            cross_check(&g).unwrap().verdict,
            Consistency::Unmatched {
                class: NumericClass::Klt
            }
        );
        assert_eq!(
            expected_numeric_class(&match_family(&g)),
            Err(Error::NoMatch)
        );
    }

    #[test]
    fn continuant_values() {
        assert_eq!(continuant(&[2]), 2);
        assert_eq!(continuant(&[2, 3]), 5);
        assert_eq!(continuant(&[2, 2, 2]), 4);
    }
}
