//! The classification table: one template per drawn diagram.
//!
//! Conventions: an empty circle is `-2r`, `*` is any multiple of `r` at most
//! `-2r`, omitted `r` / `g` are 1 / 0. Untwisted star arms are listed from
//! the center outwards by their `a` values. Templates with a `...` run take
//! the run length as their stretch parameter; figure-3 templates take the
//! graph parameter `r`.

use std::sync::OnceLock;

use super::pattern::{any, empty, exact, Pattern, PatternNode};
use super::Family;

/// One drawn diagram.
pub struct Template {
    pub family: Family,
    /// 1-based index of the diagram within its subfigure, in reading order.
    pub variant: u8,
    /// For stretchable diagrams: `(nodes outside the run, minimum run length)`.
    pub stretch: Option<(usize, usize)>,
    /// Whether the diagram is drawn with a general parameter `r`.
    pub parametric: bool,
    build: Box<dyn Fn(usize, u32) -> Pattern + Send + Sync>,
    /// Prebuilt pattern of diagrams with neither a run nor a parameter.
    fixed: Option<Pattern>,
}

impl Template {
    /// The pattern for run length `run` and parameter `r` (ignored by
    /// fixed-size or non-parametric diagrams).
    pub fn build(&self, run: usize, r: u32) -> Pattern {
        (self.build)(run, r)
    }

    pub(crate) fn fixed(&self) -> Option<&Pattern> {
        self.fixed.as_ref()
    }

    /// Run length giving exactly `n` vertices, if admissible.
    pub fn run_for(&self, n: usize) -> Option<usize> {
        match self.stretch {
            None => Some(0),
            Some((fixed, min)) => n.checked_sub(fixed).filter(|&len| len >= min),
        }
    }
}

fn template(
    family: Family,
    variant: u8,
    stretch: Option<(usize, usize)>,
    parametric: bool,
    build: impl Fn(usize, u32) -> Pattern + Send + Sync + 'static,
) -> Template {
    let fixed = (stretch.is_none() && !parametric).then(|| build(0, 1));
    Template {
        family,
        variant,
        stretch,
        parametric,
        build: Box::new(build),
        fixed,
    }
}

/// Untwisted star: a `*` center with arms of explicit weights.
fn star(arms: &[&[u32]]) -> Pattern {
    let mut p = Pattern::default();
    let center = p.add(any(1));
    for arm in arms {
        p.chain(Some(center), arm.iter().map(|&a| exact(1, a)), 1, 1);
    }
    p
}

fn fixed_star(family: Family, variant: u8, arms: &'static [&'static [u32]]) -> Template {
    template(family, variant, None, false, move |_, _| star(arms))
}

/// A fixed twisted diagram given as a path of nodes with multiplicities.
fn fixed_path(family: Family, variant: u8, nodes: Vec<PatternNode>, mults: Vec<u32>) -> Template {
    assert_eq!(nodes.len(), mults.len() + 1);
    template(family, variant, None, false, move |_, _| {
        let mut p = Pattern::default();
        let ids: Vec<usize> = nodes.iter().map(|&n| p.add(n)).collect();
        for (k, &m) in mults.iter().enumerate() {
            p.link(ids[k], ids[k + 1], m);
        }
        p
    })
}

/// The full table in matching precedence order: figure 3, then figure 2,
/// then figure 1, with the plain chain last.
pub fn templates() -> &'static [Template] {
    static TABLE: OnceLock<Vec<Template>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

fn build_table() -> Vec<Template> {
    use Family::*;
    let mut t = Vec::new();

    // non-rational log canonical
    t.push(template(SimpleElliptic, 1, None, false, |_, _| {
        let mut p = Pattern::default();
        p.add(PatternNode {
            r: 1,
            g: 1,
            a: super::pattern::WeightRule::Any,
        });
        p
    }));
    t.push(template(Cusp, 1, None, true, |_, r| {
        let mut p = Pattern::default();
        p.chain(None, [any(r), any(r)], 2 * r, 2 * r);
        p
    }));
    t.push(template(TwistedCusp, 1, Some((2, 1)), true, |len, r| {
        let mut p = Pattern::default();
        let first = p.add(any(r));
        let run = p.chain(Some(first), (0..len).map(|_| any(2 * r)), 2 * r, 2 * r);
        let last = p.add(any(r));
        p.link(*run.last().unwrap_or(&first), last, 2 * r);
        p.run = run;
        p
    }));
    t.push(template(Cusp, 2, Some((0, 3)), true, |len, r| {
        let mut p = Pattern::default();
        let run = p.chain(None, (0..len).map(|_| any(r)), r, r);
        if let (Some(&first), Some(&last)) = (run.first(), run.last()) {
            p.link(last, first, r);
        }
        p.run = run;
        p
    }));

    // rational log canonical, untwisted
    const A22: &[u32] = &[2, 2];
    const A3: &[u32] = &[3];
    const A2: &[u32] = &[2];
    t.push(fixed_star(Star236, 1, &[A22, A2, &[2, 2, 2, 2, 2]]));
    t.push(fixed_star(Star236, 2, &[A22, A2, &[6]]));
    t.push(fixed_star(Star236, 3, &[A3, A2, &[2, 2, 2, 2, 2]]));
    t.push(fixed_star(Star236, 4, &[A3, A2, &[6]]));
    t.push(fixed_star(Star333, 1, &[A22, A3, A22]));
    t.push(fixed_star(Star333, 2, &[A22, A22, A22]));
    t.push(fixed_star(Star333, 3, &[A22, A3, A3]));
    t.push(fixed_star(Star333, 4, &[A3, A3, A3]));
    t.push(fixed_star(Star244, 1, &[&[2, 2, 2], A2, &[2, 2, 2]]));
    t.push(fixed_star(Star244, 2, &[&[2, 2, 2], &[4], A2]));
    t.push(fixed_star(Star244, 3, &[&[4], A2, &[4]]));
    t.push(template(DTilde, 1, Some((4, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let run = p.chain(None, (0..len).map(|_| any(1)), 1, 1);
        if let (Some(&first), Some(&last)) = (run.first(), run.last()) {
            for end in [first, first, last, last] {
                let leaf = p.add(empty(1));
                p.link(end, leaf, 1);
            }
        }
        p.run = run;
        p
    }));

    // rational log canonical, twisted
    t.push(fixed_path(
        TwistedStar333,
        1,
        vec![empty(2), empty(2), any(1), exact(1, 3)],
        vec![2, 2, 1],
    ));
    t.push(fixed_path(
        TwistedStar333,
        2,
        vec![empty(2), empty(2), any(1), empty(1), empty(1)],
        vec![2, 2, 1, 1],
    ));
    t.push(fixed_path(
        TwistedStar333,
        3,
        vec![empty(3), empty(3), any(1)],
        vec![3, 3],
    ));
    t.push(fixed_path(
        TwistedStar333,
        4,
        vec![empty(1), empty(1), any(1), exact(2, 6)],
        vec![1, 1, 2],
    ));
    t.push(fixed_path(
        TwistedStar333,
        5,
        vec![exact(2, 6), any(1), exact(1, 3)],
        vec![2, 1],
    ));
    t.push(fixed_path(
        TwistedStar333,
        6,
        vec![exact(3, 9), any(1)],
        vec![3],
    ));
    t.push(fixed_path(
        TwistedStar244,
        1,
        vec![empty(2), empty(2), empty(2), any(1), empty(1)],
        vec![2, 2, 2, 1],
    ));
    t.push(fixed_path(
        TwistedStar244,
        2,
        vec![empty(1), any(1), exact(2, 8)],
        vec![1, 2],
    ));
    t.push(template(TwistedDTilde, 1, Some((3, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let head = p.add(any(1));
        let run = p.chain(Some(head), (0..len).map(|_| any(2)), 2, 2);
        let end = *run.last().unwrap_or(&head);
        for _ in 0..2 {
            let leaf = p.add(empty(2));
            p.link(end, leaf, 2);
        }
        p.run = run;
        p
    }));
    t.push(template(TwistedDTilde, 2, Some((3, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let head = p.add(empty(2));
        let run = p.chain(Some(head), (0..len).map(|_| any(1)), 2, 1);
        let end = *run.last().unwrap_or(&head);
        for _ in 0..2 {
            let leaf = p.add(empty(1));
            p.link(end, leaf, 1);
        }
        p.run = run;
        p
    }));
    t.push(template(TwistedDTilde, 3, Some((2, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let head = p.add(empty(4));
        let run = p.chain(Some(head), (0..len).map(|_| any(2)), 4, 2);
        let tail = p.add(any(1));
        p.link(*run.last().unwrap_or(&head), tail, 2);
        p.run = run;
        p
    }));
    t.push(template(TwistedDTilde, 4, Some((2, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let head = p.add(empty(2));
        let run = p.chain(Some(head), (0..len).map(|_| any(1)), 2, 1);
        let tail = p.add(empty(2));
        p.link(*run.last().unwrap_or(&head), tail, 2);
        p.run = run;
        p
    }));
    t.push(fixed_path(
        TwistedDTilde,
        5,
        vec![any(1), empty(4)],
        vec![4],
    ));
    t.push(fixed_path(
        TwistedDTilde,
        6,
        vec![empty(1), any(1), empty(3)],
        vec![1, 3],
    ));

    // klt
    t.push(fixed_star(Star235, 1, &[A22, A2, &[2, 2, 2, 2]]));
    t.push(fixed_star(Star235, 2, &[A3, A2, &[2, 2, 2, 2]]));
    t.push(fixed_star(Star235, 3, &[A22, A2, &[2, 3]]));
    t.push(fixed_star(Star235, 4, &[A22, A2, &[3, 2]]));
    t.push(fixed_star(Star235, 5, &[A3, A2, &[5]]));
    t.push(fixed_star(Star235, 6, &[A22, A2, &[5]]));
    t.push(fixed_star(Star235, 7, &[A3, A2, &[2, 3]]));
    t.push(fixed_star(Star235, 8, &[A3, A2, &[3, 2]]));
    t.push(fixed_star(Star234, 1, &[A22, A2, &[2, 2, 2]]));
    t.push(fixed_star(Star234, 2, &[A22, A2, &[4]]));
    t.push(fixed_star(Star234, 3, &[A3, A2, &[2, 2, 2]]));
    t.push(fixed_star(Star234, 4, &[A3, A2, &[4]]));
    t.push(fixed_star(Star233, 1, &[A22, A2, A22]));
    t.push(fixed_star(Star233, 2, &[A22, A2, A3]));
    t.push(fixed_star(Star233, 3, &[A3, A2, A3]));
    t.push(template(Star22d, 1, Some((3, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let center = p.add(any(1));
        for _ in 0..2 {
            let leaf = p.add(empty(1));
            p.link(center, leaf, 1);
        }
        p.run = p.chain(Some(center), (0..len).map(|_| any(1)), 1, 1);
        p
    }));
    t.push(fixed_path(
        TwistedStar233,
        1,
        vec![empty(2), empty(2), any(1), empty(1)],
        vec![2, 2, 1],
    ));
    t.push(fixed_path(
        TwistedStar233,
        2,
        vec![exact(2, 6), any(1), empty(1)],
        vec![2, 1],
    ));
    t.push(template(
        TwistedStar22d,
        1,
        Some((1, 1)),
        false,
        |len, _| {
            let mut p = Pattern::default();
            let head = p.add(empty(2));
            p.run = p.chain(Some(head), (0..len).map(|_| any(1)), 2, 1);
            p
        },
    ));
    t.push(fixed_path(
        TwistedStar22d,
        2,
        vec![empty(3), any(1)],
        vec![3],
    ));
    t.push(template(TwistedChain, 1, Some((1, 1)), false, |len, _| {
        let mut p = Pattern::default();
        let head = p.add(any(1));
        p.run = p.chain(Some(head), (0..len).map(|_| any(2)), 2, 2);
        p
    }));
    t.push(template(Chain, 1, Some((0, 1)), false, |len, _| {
        let mut p = Pattern::default();
        p.run = p.chain(None, (0..len).map(|_| any(1)), 1, 1);
        p
    }));

    for tpl in &t {
        debug_assert!(tpl.family.figure().is_some());
    }
    t
}
