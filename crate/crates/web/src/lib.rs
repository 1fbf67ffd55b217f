//! Browser bindings. Every export takes plain strings or numbers and
//! returns a JSON document; failures come back as `{"error": "..."}` so the
//! page needs no exception handling.

use dualgraph_core::graph::GraphJson;
use dualgraph_core::json::{self, CurveDoc, DiscrepancyDoc, MatchDoc, ScanDoc};
use dualgraph_core::{
    analyze_cubic, blow_up, cross_check, jacobian_scan, read_graph, validate, BlowUpSite,
    DualGraph, Error, WeierstrassCubic,
};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Serialize)]
struct Failure {
    error: String,
}

#[derive(Serialize)]
struct Analysis {
    graph: GraphJson,
    discrepancy: DiscrepancyDoc,
    family: MatchDoc,
}

#[derive(Serialize)]
struct BlowUp {
    text: String,
    predicted: String,
    analysis: Analysis,
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(doc) => json::to_string(&doc),
        Err(error) => json::to_string(&Failure { error }),
    }
}

fn load(source: &str, non_minimal: bool) -> Result<DualGraph, String> {
    let mut g = read_graph(source).map_err(|e| e.to_string())?;
    if non_minimal {
        g.set_minimal(false);
    }
    let report = validate(&g);
    if !report.ok {
        let lines: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.rule, v.message))
            .collect();
        return Err(lines.join("; "));
    }
    Ok(g)
}

fn analysis_of(g: &DualGraph) -> Result<Analysis, String> {
    let check = cross_check(g).map_err(|e| e.to_string())?;
    Ok(Analysis {
        graph: g.to_json(),
        discrepancy: DiscrepancyDoc::from(&check.result),
        family: MatchDoc::from(&check),
    })
}

/// Class, `Delta_Y`, discrepancies and family match of a graph given in
/// either input format.
#[wasm_bindgen]
pub fn analyze(source: &str, non_minimal: bool) -> String {
    respond(load(source, non_minimal).and_then(|g| analysis_of(&g)))
}

/// Blows up `site` (`vertex=<id>,m=<1|2>` or `edge=<id1>:<id2>`) and
/// analyzes the result, which is always non-minimal.
#[wasm_bindgen]
pub fn blow_up_at(source: &str, site: &str, non_minimal: bool) -> String {
    respond((|| {
        let g = load(source, non_minimal)?;
        let site = BlowUpSite::parse(&g, site).map_err(|e| e.to_string())?;
        if let BlowUpSite::OnCurve { m, .. } = site {
            if !(1..=2).contains(&m) {
                return Err("multiplicity must be 1 or 2".to_string());
            }
        }
        let predicted =
            dualgraph_core::predicted_new_discrepancy(&g, &site).map_err(|e| e.to_string())?;
        let z = blow_up(&g, &site).map_err(|e| e.to_string())?;
        Ok(BlowUp {
            text: z.to_text(),
            predicted: json::rational(&predicted),
            analysis: analysis_of(&z)?,
        })
    })())
}

/// Discriminant and singular point of `a y^2 + x^3 + b x + c` over `F_p`;
/// `scan_ext` of 1 or 2 adds the brute-force scan over `F_p` or `F_{p^2}`,
/// 0 skips it.
#[wasm_bindgen]
pub fn analyze_curve(p: u32, a: i32, b: i32, c: i32, scan_ext: u32) -> String {
    respond((|| {
        let w = WeierstrassCubic::new(p.into(), a.into(), b.into(), c.into())
            .map_err(|e: Error| e.to_string())?;
        let mut doc = CurveDoc::new(w, analyze_cubic(&w));
        if scan_ext != 0 {
            let points = jacobian_scan(&w, scan_ext).map_err(|e| e.to_string())?;
            doc.scan = Some(ScanDoc {
                ext_degree: scan_ext,
                singular_points: points
                    .iter()
                    .map(|(x, y)| [x.to_string(), y.to_string()])
                    .collect(),
            });
        }
        Ok(doc)
    })())
}
