//! Brute-force checks of the symbolic structures against exact iteration.
//!
//! Every suite returns a [`VerificationReport`] whose cases carry enough
//! inputs to be replayed from `(a, b, depth, seed)`.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use crate::exactnum::Rational;
use crate::geometry::{on_segment, PlanePoint};
use crate::manifold::{Label, ManifoldWindow, RPoint, SamplePoint};
use crate::symbolic::{
    admissible_right_tail, admissible_window, folding_pattern, folding_tree, gplex_compare, kneading_from_tree,
    kneading_set, pattern_from_kneading, plex_compare, tree_from_pattern, CheckMode, FoldingTree, GplexOrdering,
    KneadingSet, PlexOrdering, TailWord,
};
use crate::word::{Sign, Symbol, SymbolWord};

pub const DEFAULT_HORIZON: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for CaseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseVerdict::Pass => "pass",
            CaseVerdict::Fail => "fail",
            CaseVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub id: String,
    pub verdict: CaseVerdict,
    /// Replay inputs beyond the suite context, e.g. `word=-++-`.
    pub inputs: String,
    pub detail: String,
}

/// Parameters shared by every case of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Reproducer {
    pub a: Rational,
    pub b: Rational,
    pub depth: usize,
    pub seed: Option<u64>,
}

impl Reproducer {
    fn of(window: &ManifoldWindow, seed: Option<u64>) -> Self {
        Reproducer {
            a: window.params().a().clone(),
            b: window.params().b().clone(),
            depth: window.depth(),
            seed,
        }
    }
}

impl fmt::Display for Reproducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} depth={}", self.a, self.b, self.depth)?;
        match self.seed {
            Some(s) => write!(f, " seed={s}"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub context: Reproducer,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    fn new(suite: &str, context: Reproducer) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            context,
            cases: Vec::new(),
        }
    }

    fn push(
        &mut self,
        id: impl Into<String>,
        verdict: CaseVerdict,
        inputs: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.cases.push(CaseRecord {
            id: id.into(),
            verdict,
            inputs: inputs.into(),
            detail: detail.into(),
        });
    }

    fn check(&mut self, id: impl Into<String>, ok: bool, inputs: impl Into<String>, detail: impl Into<String>) {
        let verdict = if ok { CaseVerdict::Pass } else { CaseVerdict::Fail };
        self.push(id, verdict, inputs, detail);
    }

    pub fn cases_run(&self) -> usize {
        self.cases.len()
    }

    pub fn failures(&self) -> Vec<&CaseRecord> {
        self.cases.iter().filter(|c| c.verdict == CaseVerdict::Fail).collect()
    }

    pub fn inconclusive_count(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| c.verdict == CaseVerdict::Inconclusive)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Command-line style replay string for a case.
    pub fn reproducer(&self, case: &CaseRecord) -> String {
        format!("{} {}", self.context, case.inputs).trim_end().to_string()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} ({} cases, {} failures, {} inconclusive) [{}]\n",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases_run(),
            self.failures().len(),
            self.inconclusive_count(),
            self.context
        );
        for case in self.failures() {
            let _ = writeln!(out, "  FAIL {}: {}", case.id, case.detail);
            let _ = writeln!(out, "    reproduce with: {}", self.reproducer(case));
        }
        out
    }

    /// One line per case: suite, id, verdict, a, b, depth, seed, inputs, detail.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        let seed = self.context.seed.map_or("-".to_string(), |s| s.to_string());
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                self.suite,
                c.id,
                c.verdict,
                self.context.a,
                self.context.b,
                self.context.depth,
                seed,
                c.inputs,
                c.detail
            );
        }
        out
    }
}

/// Left-anchored itinerary window of a point of the manifold: indices from
/// the first backward iterate in `[G_0, T_0]` up to `horizon − 1`.
pub fn itinerary_window(window: &ManifoldWindow, p: &PlanePoint, horizon: usize) -> Option<TailWord> {
    let params = window.params();
    let (g0, t0) = window.arc_segment(0).expect("arc 0 is always present");
    let mut q = p.clone();
    let mut k = 0usize;
    while !on_segment(&q, g0, t0) {
        if k > window.depth() {
            return None;
        }
        q = params.lozi_inverse(&q);
        k += 1;
    }
    Some(TailWord::new(-(k as i64), params.orbit_itinerary(&q, k + horizon)))
}

fn describe(s: &SamplePoint) -> String {
    format!("({},{})", s.arc, s.t)
}

fn expected_gplex(o: Ordering) -> GplexOrdering {
    match o {
        Ordering::Less => GplexOrdering::Less,
        Ordering::Equal => GplexOrdering::Equal,
        Ordering::Greater => GplexOrdering::Greater,
    }
}

/// ⊴ on the manifold against the generalized parity-lexicographical order on
/// itineraries, for sampled pairs and a few fixed pairs.
pub fn verify_order_lemma(window: &ManifoldWindow, pairs: usize, seed: u64, horizon: usize) -> VerificationReport {
    let mut report = VerificationReport::new("order-lemma", Reproducer::of(window, Some(seed)));
    let compare = |p: &PlanePoint, q: &PlanePoint, h: usize| -> Option<GplexOrdering> {
        Some(gplex_compare(
            &itinerary_window(window, p, h)?,
            &itinerary_window(window, q, h)?,
        ))
    };

    let k = window.params().field();
    let (g0, t0) = window.arc_segment(0).expect("arc 0");
    let order = window
        .order_compare(&RPoint { arc: 0, t: k.zero() }, &RPoint { arc: 0, t: k.one() })
        .expect("basic points lie on the window");
    let got = compare(g0, t0, horizon);
    report.check(
        "G_0-vs-T_0",
        order == Ordering::Less && got == Some(GplexOrdering::Less),
        "points=G_0,T_0",
        format!("order {order:?}, itineraries {got:?}"),
    );

    let samples = match window.sample_points(2 * pairs.max(1), seed, horizon) {
        Ok(s) => s,
        Err(e) => {
            report.check("sampling", false, format!("count={}", 2 * pairs), e.to_string());
            return report;
        }
    };
    let same = compare(&samples[0].coord, &samples[0].coord, horizon);
    report.check(
        "P-vs-P",
        same == Some(GplexOrdering::Equal),
        format!("p={}", describe(&samples[0])),
        format!("itineraries {same:?}"),
    );

    for i in 0..pairs {
        let (p, q) = (&samples[2 * i], &samples[2 * i + 1]);
        let id = format!("pair-{i}");
        let inputs = format!("p={} q={} horizon={horizon}", describe(p), describe(q));
        let order = window
            .order_compare(&p.r_point(), &q.r_point())
            .expect("samples lie on the window");
        let want = expected_gplex(order);
        match compare(&p.coord, &q.coord, horizon) {
            None => report.check(id, false, inputs, "no backward iterate reaches [G_0, T_0]"),
            Some(GplexOrdering::Inconclusive) => {
                report.push(id, CaseVerdict::Inconclusive, inputs, "windows too short")
            }
            Some(got) if got == want => report.push(id, CaseVerdict::Pass, inputs, ""),
            Some(_) => {
                let h = (1..=horizon)
                    .find(|&h| {
                        compare(&p.coord, &q.coord, h).is_some_and(|g| g != GplexOrdering::Inconclusive && g != want)
                    })
                    .unwrap_or(horizon);
                let got = compare(&p.coord, &q.coord, h);
                report.check(
                    id,
                    false,
                    format!("p={} q={} horizon={h}", describe(p), describe(q)),
                    format!("order {order:?} but itineraries {got:?}"),
                );
            }
        }
    }
    report
}

fn words_starting_with_minus(len: usize) -> impl Iterator<Item = SymbolWord> {
    (0..1u64 << (len - 1)).map(move |bits| {
        let mut w = SymbolWord::new();
        w.push(Symbol::Minus);
        for k in (0..len - 1).rev() {
            w.push(if bits >> k & 1 == 1 {
                Symbol::Plus
            } else {
                Symbol::Minus
            });
        }
        w
    })
}

/// Kneading route against tree route on every word `−…` up to `max_len`,
/// and acceptance of itineraries of sampled points by both.
pub fn verify_admissibility_consistency(
    window: &ManifoldWindow,
    kset: &KneadingSet,
    tree: &FoldingTree,
    max_len: usize,
    samples: usize,
    seed: u64,
    horizon: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("admissibility", Reproducer::of(window, Some(seed)));
    for len in 1..=max_len {
        for w in words_starting_with_minus(len) {
            let vk = admissible_right_tail(kset, &w);
            let vt = admissible_window(tree, &w, CheckMode::RightTail);
            let inputs = format!("word={w}");
            let detail = format!("kneading {vk}; tree {vt}");
            if vk.is_conclusive() && vt.is_conclusive() {
                report.check(
                    format!("word-{w}"),
                    vk.is_accepted() == vt.is_accepted(),
                    inputs,
                    detail,
                );
            } else {
                report.push(format!("word-{w}"), CaseVerdict::Inconclusive, inputs, detail);
            }
        }
    }
    if samples == 0 {
        return report;
    }
    let points = match window.sample_points(samples, seed, horizon) {
        Ok(p) => p,
        Err(e) => {
            report.check("sampling", false, format!("count={samples}"), e.to_string());
            return report;
        }
    };
    for (i, s) in points.iter().enumerate() {
        let id = format!("sample-{i}");
        let Some(it) = itinerary_window(window, &s.coord, horizon) else {
            report.check(
                id,
                false,
                format!("p={}", describe(s)),
                "no backward iterate reaches [G_0, T_0]",
            );
            continue;
        };
        let lead = it.symbols.iter().take_while(|&&c| c == Symbol::Plus).count();
        let w = it.symbols.shifted(lead).prefix(window.depth());
        let vk = admissible_right_tail(kset, &w);
        let vt = admissible_window(tree, &w, CheckMode::RightTail);
        let inputs = format!("p={} word={w}", describe(s));
        let detail = format!("kneading {vk}; tree {vt}");
        if vk.is_rejected() || vt.is_rejected() {
            report.check(id, false, inputs, detail);
        } else if vk.is_accepted() && vt.is_accepted() {
            report.push(id, CaseVerdict::Pass, inputs, detail);
        } else {
            report.push(id, CaseVerdict::Inconclusive, inputs, detail);
        }
    }
    report
}

/// The exact image of every non-leaf arc is the union of its children.
pub fn verify_markov(window: &ManifoldWindow) -> VerificationReport {
    let mut report = VerificationReport::new("markov", Reproducer::of(window, None));
    let params = window.params();
    for arc in window.arcs().iter().filter(|a| !a.children.is_empty()) {
        let (a, b) = window.arc_segment(arc.index).expect("arc endpoints");
        let (la, lb) = (params.lozi_apply(a), params.lozi_apply(b));
        let lo = *arc.children.first().expect("non-leaf");
        let hi = *arc.children.last().expect("non-leaf");
        let contiguous = arc.children.iter().copied().eq(lo..=hi);
        let (first, last) = (
            &window.point(lo).expect("child endpoint").coord,
            &window.point(hi + 1).expect("child endpoint").coord,
        );
        let ends = (&la == last && &lb == first) || (&la == first && &lb == last);
        let interior = (lo + 1..=hi).all(|e| on_segment(&window.point(e).expect("child endpoint").coord, &la, &lb));
        report.check(
            format!("arc-{}", arc.index),
            contiguous && ends && interior,
            format!("arc={}", arc.index),
            format!(
                "image [{la}, {lb}] covers arcs {lo}..={hi} (contiguous {contiguous}, ends {ends}, interior {interior})"
            ),
        );
    }
    report
}

/// The six conversion paths between kneading set, pattern and tree.
pub fn verify_roundtrips(window: &ManifoldWindow, m: usize) -> VerificationReport {
    let mut report = VerificationReport::new("roundtrips", Reproducer::of(window, None));
    let depth = window.depth();
    let inputs = format!("tail={m}");
    let kset = match kneading_set(window, m) {
        Ok(k) => k,
        Err(e) => {
            report.check("kneading", false, inputs, e.to_string());
            return report;
        }
    };
    let pattern = folding_pattern(window);
    let tree = folding_tree(window);

    let k_to_p = pattern_from_kneading(&kset, depth);
    report.check(
        "kneading->pattern",
        k_to_p.as_ref() == Ok(&pattern),
        inputs.clone(),
        k_to_p.as_ref().err().map_or(String::new(), ToString::to_string),
    );
    let p_to_t = tree_from_pattern(&pattern);
    report.check(
        "pattern->tree",
        p_to_t.as_ref() == Ok(&tree),
        inputs.clone(),
        p_to_t.as_ref().err().map_or(String::new(), ToString::to_string),
    );
    let t_to_k = kneading_from_tree(&tree, m);
    let agree = |k: &Result<KneadingSet, _>| match k {
        Ok(k) => kset.agrees_up_to_truncation(k),
        Err(e) => Err(format!("{e}")),
    };
    let r = agree(&t_to_k);
    report.check("tree->kneading", r.is_ok(), inputs.clone(), r.err().unwrap_or_default());

    let kptk = pattern_from_kneading(&kset, depth)
        .and_then(|p| tree_from_pattern(&p))
        .and_then(|t| kneading_from_tree(&t, m));
    let r = agree(&kptk);
    report.check(
        "kneading->pattern->tree->kneading",
        r.is_ok(),
        inputs.clone(),
        r.err().unwrap_or_default(),
    );

    let ptkp = tree_from_pattern(&pattern)
        .and_then(|t| kneading_from_tree(&t, m))
        .and_then(|k| pattern_from_kneading(&k, depth));
    report.check(
        "pattern->tree->kneading->pattern",
        ptkp.as_ref() == Ok(&pattern),
        inputs.clone(),
        ptkp.as_ref().err().map_or(String::new(), ToString::to_string),
    );

    let tkpt = kneading_from_tree(&tree, m)
        .and_then(|k| pattern_from_kneading(&k, depth))
        .and_then(|p| tree_from_pattern(&p));
    report.check(
        "tree->kneading->pattern->tree",
        tkpt.as_ref() == Ok(&tree),
        inputs,
        tkpt.as_ref().err().map_or(String::new(), ToString::to_string),
    );
    report
}

/// Positional form of the arc-code order: parity decides the side of `X`,
/// longer codes lie farther out, and equal lengths follow the plex order.
pub fn verify_arc_code_order(window: &ManifoldWindow) -> VerificationReport {
    let mut report = VerificationReport::new("arc-code-order", Reproducer::of(window, None));
    let tx = window.x_parameter();
    let one = window.params().field().one();
    report.check(
        "X-in-arc-0",
        tx.is_positive() && (&tx - &one).is_negative(),
        "arc=0",
        format!("X at parameter {tx}"),
    );
    for arc in window.arcs() {
        let even = arc.level % 2 == 0;
        let ok = if even { arc.index >= 0 } else { arc.index <= -1 };
        let starts_minus = arc.code.first().is_none_or(|&s| s == Symbol::Minus);
        let sign_ok = arc.sign == arc.code.last().and_then(|s| s.sign()).unwrap_or(Sign::Plus);
        report.check(
            format!("parity-{}", arc.index),
            ok && starts_minus && sign_ok,
            format!("arc={}", arc.index),
            format!("code `{}` of length {}", arc.code, arc.level),
        );
    }
    // On R⁺ farther means larger index, on R⁻ smaller.
    let sides: [Vec<_>; 2] = [
        window.arcs().iter().filter(|a| a.index >= 1).collect(),
        window.arcs().iter().filter(|a| a.index <= -1).collect(),
    ];
    for (side, arcs) in sides.iter().enumerate() {
        let farther = |a: i64, b: i64| if side == 0 { a > b } else { a < b };
        for (i, x) in arcs.iter().enumerate() {
            for y in &arcs[i + 1..] {
                let want_x_farther = if x.level != y.level {
                    x.level > y.level
                } else {
                    plex_compare(&x.code, &y.code) == PlexOrdering::Less
                };
                if want_x_farther != farther(x.index, y.index) {
                    report.check(
                        format!("order-{}-{}", x.index, y.index),
                        false,
                        format!("arcs={},{}", x.index, y.index),
                        format!("codes `{}` and `{}` are placed against the order", x.code, y.code),
                    );
                } else {
                    report.push(
                        format!("order-{}-{}", x.index, y.index),
                        CaseVerdict::Pass,
                        format!("arcs={},{}", x.index, y.index),
                        "",
                    );
                }
            }
        }
    }
    report
}

/// For a sample `P` on an arc ending at a gluing point `G`, the itinerary of
/// `L(P)` is at most the kneading tail of the turning point `L(G)`.
pub fn verify_turning_extremality(
    window: &ManifoldWindow,
    kset: &KneadingSet,
    samples: usize,
    seed: u64,
    horizon: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("turning-extremality", Reproducer::of(window, Some(seed)));
    let points = match window.sample_points(samples, seed, horizon) {
        Ok(p) => p,
        Err(e) => {
            report.check("sampling", false, format!("count={samples}"), e.to_string());
            return report;
        }
    };
    let params = window.params();
    for (i, s) in points.iter().enumerate() {
        let ends = [s.arc, s.arc + 1];
        let gluing = ends.iter().find_map(|&e| match window.point(e)?.label {
            Label::Gluing(k) => Some(k),
            _ => None,
        });
        let Some(k) = gluing else { continue };
        let id = format!("sample-{i}");
        let Some(entry) = kset.entry(-k) else {
            report.push(
                id,
                CaseVerdict::Inconclusive,
                format!("p={}", describe(s)),
                format!("no entry n={}", -k),
            );
            continue;
        };
        let image = params.lozi_apply(&s.coord);
        let verdict = |h: usize| plex_compare(&params.orbit_itinerary(&image, h), &entry.tail);
        let inputs = format!("p={} n={} horizon={horizon}", describe(s), -k);
        match verdict(horizon) {
            PlexOrdering::Less | PlexOrdering::Equal => report.push(id, CaseVerdict::Pass, inputs, ""),
            PlexOrdering::IncomparablePrefix => report.push(id, CaseVerdict::Inconclusive, inputs, "tail too short"),
            PlexOrdering::Greater => {
                let h = (1..=horizon)
                    .find(|&h| verdict(h) == PlexOrdering::Greater)
                    .unwrap_or(horizon);
                report.check(
                    id,
                    false,
                    format!("p={} n={} horizon={h}", describe(s), -k),
                    format!("itinerary of L(P) exceeds the tail `{}`", entry.tail),
                );
            }
        }
    }
    report
}
