//! Subcommand bodies. Each returns the full standard output and the exit
//! code so that `main` does all printing.

use std::fmt::{self, Write as _};
use std::io::Read as _;
use std::path::Path;

use dualgraph_core::classifier::Consistency;
use dualgraph_core::enumerator::Allowlist;
use dualgraph_core::json::{self, AuditDoc, CurveDoc, DiscrepancyDoc, MatchDoc, ScanDoc};
use dualgraph_core::weierstrass::Verdict;
use dualgraph_core::{
    analyze_cubic, blow_up, classify_numerical, cross_check, cusp_base_change, jacobian_scan,
    read_graph, to_dot, validate, BlowUpSite, DualGraph, EnumBounds, Error, WeierstrassCubic,
};

pub struct Options {
    pub json: bool,
    pub non_minimal: bool,
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Unreadable input, bad syntax or a failed validation rule.
    Input(String),
    /// The intersection matrix is not negative definite.
    NotDualGraph,
    /// An audit could not run.
    Audit(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::NotDualGraph => 2,
            Self::Audit(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(msg) | Self::Audit(msg) => f.write_str(msg),
            Self::NotDualGraph => f.write_str(&Error::NotADualGraph.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::NotADualGraph => Self::NotDualGraph,
            other => Self::Input(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read_source(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads and validates a graph; JSON is recognized by a leading `{`.
fn load(opts: &Options, path: &Path) -> Result<DualGraph> {
    let source = read_source(path)?;
    let mut g = read_graph(&source)?;
    if opts.non_minimal {
        g.set_minimal(false);
    }
    let report = validate(&g);
    if !report.ok {
        let lines: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.rule, v.message))
            .collect();
        return Err(Failure::Input(format!(
            "invalid dual graph\n  {}",
            lines.join("\n  ")
        )));
    }
    Ok(g)
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn classify(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    let res = classify_numerical(&g)?;
    if opts.json {
        return Ok(Outcome::ok(json::to_string(&DiscrepancyDoc::from(&res))));
    }
    Ok(Outcome::ok(format!(
        "{}, d = {}\n",
        res.class,
        list(&res.delta)
    )))
}

pub fn discrepancy(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    let res = classify_numerical(&g)?;
    if opts.json {
        return Ok(Outcome::ok(json::to_string(&DiscrepancyDoc::from(&res))));
    }
    let header = ["curve", "r", "g", "a", "K.E", "delta", "discrepancy"];
    let mut rows: Vec<[String; 7]> = Vec::new();
    for (i, v) in g.vertices().iter().enumerate() {
        rows.push([
            v.id.clone(),
            v.r.to_string(),
            v.g.to_string(),
            v.a.to_string(),
            res.canonical_degrees[i].to_string(),
            res.delta[i].to_string(),
            res.discrepancies[i].to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..7)
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    let _ = writeln!(out, "class: {}", res.class);
    Ok(Outcome::ok(out))
}

fn describe_match(check: &dualgraph_core::CrossCheck) -> String {
    let m = &check.matched;
    if !m.is_match() {
        return "no matching diagram".into();
    }
    let mut s = format!(
        "{} (figure {}, variant {})",
        m.family,
        m.figure.unwrap_or(0),
        m.variant
    );
    for (k, v) in &m.params {
        let _ = write!(s, " {k}={v}");
    }
    s
}

pub fn family(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    let check = cross_check(&g)?;
    if opts.json {
        return Ok(Outcome::ok(json::to_string(&MatchDoc::from(&check))));
    }
    Ok(Outcome::ok(format!("{}\n", describe_match(&check))))
}

pub fn crosscheck(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    let check = cross_check(&g)?;
    let code = match check.verdict {
        Consistency::Inconsistent { .. } => 3,
        _ => 0,
    };
    if opts.json {
        return Ok(Outcome {
            stdout: json::to_string(&MatchDoc::from(&check)),
            code,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "match: {}", describe_match(&check));
    let _ = writeln!(out, "computed: {}", check.result.class);
    match &check.verdict {
        Consistency::Consistent => out.push_str("verdict: consistent\n"),
        Consistency::Unmatched { class } => {
            let _ = writeln!(out, "verdict: unmatched ({class})");
        }
        Consistency::Inconsistent { details } => {
            let _ = writeln!(out, "verdict: inconsistent: {details}");
        }
    }
    Ok(Outcome { stdout: out, code })
}

/// `--at` accepts multiplicities 1 and 2 only: a smooth point or a node.
fn parse_site(g: &DualGraph, text: &str) -> Result<BlowUpSite> {
    let site = BlowUpSite::parse(g, text)?;
    if let BlowUpSite::OnCurve { m, .. } = site {
        if !(1..=2).contains(&m) {
            return Err(Failure::Input(format!(
                "--at {text}: multiplicity must be 1 or 2"
            )));
        }
    }
    Ok(site)
}

fn emit_graph(opts: &Options, g: &DualGraph) -> String {
    if opts.json {
        json::to_string(&g.to_json())
    } else {
        g.to_text()
    }
}

pub fn blowup(opts: &Options, path: &Path, at: &str) -> Result<Outcome> {
    let g = load(opts, path)?;
    let site = parse_site(&g, at)?;
    let z = blow_up(&g, &site)?;
    Ok(Outcome::ok(emit_graph(opts, &z)))
}

pub fn basechange(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    let h = cusp_base_change(&g)?;
    Ok(Outcome::ok(emit_graph(opts, &h)))
}

pub fn curve(
    opts: &Options,
    p: u64,
    a: i64,
    b: i64,
    c: i64,
    scan_ext: Option<u32>,
) -> Result<Outcome> {
    let w = WeierstrassCubic::new(p, a, b, c)?;
    let report = analyze_cubic(&w);
    let scan = scan_ext
        .map(|k| jacobian_scan(&w, k).map(|pts| (k, pts)))
        .transpose()?;
    if opts.json {
        let mut doc = CurveDoc::new(w, report);
        doc.scan = scan.map(|(k, pts)| ScanDoc {
            ext_degree: k,
            singular_points: pts
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
        });
        return Ok(Outcome::ok(json::to_string(&doc)));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "curve: {}y^2 + x^3 + {}x + {} over F_{}",
        w.a, w.b, w.c, w.p
    );
    let _ = writeln!(out, "discriminant: {}", report.discriminant);
    match report.verdict {
        Verdict::Smooth => out.push_str("smooth\n"),
        Verdict::Node { point: (x, y) } => {
            let _ = writeln!(out, "node at ({x}, {y})");
        }
        Verdict::Cusp { point: (x, y) } => {
            let _ = writeln!(out, "cusp at ({x}, {y})");
        }
    }
    if let Some((k, pts)) = scan {
        let field = if k == 1 {
            format!("F_{}", w.p)
        } else {
            format!("F_{}^2", w.p)
        };
        let shown: Vec<String> = pts.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        let _ = writeln!(out, "singular points over {field}: [{}]", shown.join(", "));
    }
    Ok(Outcome::ok(out))
}

pub fn audit(
    opts: &Options,
    bounds: &EnumBounds,
    allowlist: Option<&Path>,
    write_allowlist: Option<&Path>,
    jobs: Option<usize>,
) -> Result<Outcome> {
    let pinned = allowlist
        .map(|path| {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<Allowlist>(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        })
        .transpose()?;
    let report = dualgraph_core::audit(bounds, jobs)?;
    if let Some(path) = write_allowlist {
        std::fs::write(path, json::to_string(&report.allowlist()))
            .map_err(|e| Failure::Audit(format!("{}: {e}", path.display())))?;
    }
    let diff = pinned.as_ref().map(|p| report.diff(p));
    let passed = report.passed() && diff.as_ref().is_none_or(|d| d.added.is_empty());
    let code = if passed { 0 } else { 3 };
    if opts.json {
        let doc = AuditDoc {
            schema: json::SCHEMA,
            report: &report,
            allowlist_diff: diff.as_ref(),
            passed,
        };
        return Ok(Outcome {
            stdout: json::to_string(&doc),
            code,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "candidates: {}", report.total_enumerated);
    let _ = writeln!(out, "dual graphs: {}", report.negative_definite_count);
    for (class, n) in &report.class_counts {
        let _ = writeln!(out, "  {class}: {n}");
    }
    let _ = writeln!(out, "consistent: {}", report.consistent_count);
    let _ = writeln!(
        out,
        "unmatched: {} lc, {} not lc",
        report.unmatched.len(),
        report.unmatched_not_lc
    );
    let _ = writeln!(out, "inconsistent: {}", report.inconsistent.len());
    for e in &report.inconsistent {
        let _ = writeln!(out, "  {} {}", e.key, e.details);
    }
    if let Some(diff) = &diff {
        for e in &diff.added {
            let _ = writeln!(out, "  new unmatched: {} ({})", e.key, e.class);
        }
        for e in &diff.removed {
            let _ = writeln!(out, "  no longer unmatched: {} ({})", e.key, e.class);
        }
    }
    let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(Outcome { stdout: out, code })
}

pub fn dot(opts: &Options, path: &Path) -> Result<Outcome> {
    let g = load(opts, path)?;
    Ok(Outcome::ok(to_dot(&g)))
}
