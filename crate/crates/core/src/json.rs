//! Stable JSON documents for results. Every document carries a top-level
//! `schema` tag; rationals are normalized `p/q` strings (`q >= 1`).

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::classifier::{CrossCheck, FamilyMatch};
use crate::discrepancy::DiscrepancyResult;
use crate::enumerator::{AllowlistDiff, AuditReport};
use crate::weierstrass::{CurveReport, WeierstrassCubic};

pub const SCHEMA: &str = "dualgraph/1";

/// `p/q` in lowest terms with positive denominator, also for integers.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Serialize)]
pub struct DiscrepancyDoc {
    pub schema: &'static str,
    pub canonical_degrees: Vec<i64>,
    pub delta: Vec<String>,
    pub discrepancies: Vec<String>,
    pub class: &'static str,
    #[serde(rename = "delta_equals_E")]
    pub delta_equals_e: bool,
}

impl From<&DiscrepancyResult> for DiscrepancyDoc {
    fn from(r: &DiscrepancyResult) -> Self {
        Self {
            schema: SCHEMA,
            canonical_degrees: r.canonical_degrees.clone(),
            delta: r.delta.iter().map(rational).collect(),
            discrepancies: r.discrepancies.iter().map(rational).collect(),
            class: r.class.tag(),
            delta_equals_e: r.class.delta_equals_e(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MatchDoc {
    pub schema: &'static str,
    pub family: &'static str,
    pub figure: Option<u8>,
    pub variant: u8,
    pub params: BTreeMap<String, i64>,
    pub consistency: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<&'static str>,
    #[serde(rename = "delta_equals_E", skip_serializing_if = "Option::is_none")]
    pub delta_equals_e: Option<bool>,
}

impl MatchDoc {
    fn base(m: &FamilyMatch, consistency: &'static str) -> Self {
        Self {
            schema: SCHEMA,
            family: m.family.name(),
            figure: m.figure,
            variant: m.variant,
            params: m.params.clone(),
            consistency,
            details: None,
            class: None,
            delta_equals_e: None,
        }
    }
}

impl From<&CrossCheck> for MatchDoc {
    fn from(c: &CrossCheck) -> Self {
        let mut doc = Self::base(&c.matched, c.verdict.tag());
        if let crate::classifier::Consistency::Inconsistent { details } = &c.verdict {
            doc.details = Some(details.clone());
        }
        doc.class = Some(c.result.class.tag());
        doc.delta_equals_e = Some(c.result.class.delta_equals_e());
        doc
    }
}

#[derive(Debug, Serialize)]
pub struct CurveDoc {
    pub schema: &'static str,
    pub curve: WeierstrassCubic,
    #[serde(flatten)]
    pub report: CurveReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanDoc>,
}

#[derive(Debug, Serialize)]
pub struct ScanDoc {
    pub ext_degree: u32,
    pub singular_points: Vec<[String; 2]>,
}

impl CurveDoc {
    pub fn new(curve: WeierstrassCubic, report: CurveReport) -> Self {
        Self {
            schema: SCHEMA,
            curve,
            report,
            scan: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AuditDoc<'a> {
    pub schema: &'static str,
    #[serde(flatten)]
    pub report: &'a AuditReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allowlist_diff: Option<&'a AllowlistDiff>,
    pub passed: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents are always serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::classify_numerical;
    use crate::graph::DualGraph;

    #[test]
    fn rationals_are_normalized() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(rational(&q(2, 10)), "1/5");
        assert_eq!(rational(&q(3, -6)), "-1/2");
        assert_eq!(rational(&q(0, 7)), "0/1");
        assert_eq!(rational(&q(4, 4)), "1/1");
    }

    #[test]
    fn discrepancy_document() {
        let g = DualGraph::path(&[(1, 0, 2), (1, 0, 3)], &[1]).unwrap();
        let doc = DiscrepancyDoc::from(&classify_numerical(&g).unwrap());
        let v: serde_json::Value = serde_json::from_str(&to_string(&doc)).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["delta"], serde_json::json!(["1/5", "2/5"]));
        assert_eq!(v["discrepancies"], serde_json::json!(["-1/5", "-2/5"]));
        assert_eq!(v["class"], "klt");
        assert_eq!(v["delta_equals_E"], false);
    }
}
