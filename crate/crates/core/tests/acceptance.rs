//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lozi_core::exactnum::{rat, Rational};
use lozi_core::geometry::{in_set_s, render_attractor, Params, RenderOptions};
use lozi_core::manifold::{grow, ManifoldWindow};
use lozi_core::oracle::{
    verify_admissibility_consistency, verify_markov, verify_order_lemma, verify_roundtrips, VerificationReport,
};
use lozi_core::symbolic::{
    admissible_right_tail, admissible_window, folding_pattern, folding_tree, kneading_set, CheckMode, PointKind,
};
use lozi_core::word::{word, Sign};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn flagship() -> Params {
    Params::new(rat(7, 4), rat(1, 2)).unwrap()
}

fn window(depth: usize) -> ManifoldWindow {
    grow(&flagship(), depth).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn report_ok(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), r.render_text())
}

fn manifold_strip() -> Outcome {
    let start = Instant::now();
    let w = window(4);
    let elapsed = start.elapsed();
    let labels: Vec<String> = w.points().iter().map(|p| p.label.to_string()).collect();
    let want = [
        "T_0^4", "G_-2", "T_-1", "G_-1", "T_0^2", "G_0", "T_0", "G_1", "T_0^3", "G_2", "T_1", "T_-1^2", "T_2", "G_3",
        "T_0^5",
    ];
    ensure(labels == want, format!("order {labels:?}"))?;
    let coords = [
        (-5, (-5, 6), (-1, 3)),
        (-4, (0, 1), (-2, 15)),
        (-3, (5, 9), (0, 1)),
        (-2, (0, 1), (10, 51)),
        (-1, (-4, 3), (2, 3)),
        (0, (0, 1), (1, 3)),
        (1, (4, 3), (0, 1)),
        (2, (0, 1), (-4, 9)),
        (3, (-2, 3), (-2, 3)),
        (4, (0, 1), (-122, 285)),
        (5, (61, 51), (0, 1)),
        (6, (1, 36), (5, 18)),
        (7, (13, 15), (0, 1)),
        (8, (0, 1), (-130, 597)),
        (9, (-19, 24), (-5, 12)),
    ];
    for (e, (xn, xd), (yn, yd)) in coords {
        let p = &w.point(e).ok_or(format!("E_{e} missing"))?.coord;
        let want = flagship().point(rat(xn, xd), rat(yn, yd));
        ensure(p == &want, format!("E_{e} = {p}, expected {want}"))?;
    }
    let codes = [
        "---", "--+", "-++", "-+-", "-", "", "-+", "--", "-+--", "-+-+", "-+++", "--++", "---+", "----",
    ];
    for (arc, code) in w.arcs().iter().zip(codes) {
        ensure(
            arc.code == word(code),
            format!("arc {} has code `{}`", arc.index, arc.code),
        )?;
    }
    ensure(w.arcs().len() == 14, "14 arcs")?;
    ensure(elapsed < Duration::from_secs(1), format!("growth took {elapsed:?}"))?;
    Ok(format!("15 points, 14 arc-codes exact, grown in {elapsed:?}"))
}

fn signed_pattern() -> Outcome {
    let got = folding_pattern(&window(4)).signed(true);
    let want = "\u{2212}T\u{2212}G+T+G\u{2212}T\u{2212}G+X+T+G\u{2212}T\u{2212}G+T+T+T+G\u{2212}T\u{2212}";
    ensure(got == want, format!("got {got}"))?;
    Ok(got)
}

fn folding_tree_fig() -> Outcome {
    let t = folding_tree(&window(4));
    let mut edges = t.edges();
    edges.sort();
    let mut want = vec![
        (0, 0),
        (0, -1),
        (-1, 1),
        (-1, 2),
        (1, -2),
        (1, -3),
        (2, -4),
        (2, -5),
        (-2, 3),
        (-2, 4),
        (-3, 5),
        (-4, 6),
        (-5, 7),
        (-5, 8),
    ];
    want.sort();
    ensure(edges == want, format!("edges {edges:?}"))?;
    let levels = vec![
        vec![0],
        vec![-1],
        vec![1, 2],
        vec![-2, -3, -4, -5],
        vec![3, 4, 5, 6, 7, 8],
    ];
    ensure(t.levels() == levels.as_slice(), format!("levels {:?}", t.levels()))?;
    let signs = "-++--++--++++-";
    for (v, s) in t.vertices().iter().zip(signs.chars()) {
        let want = if s == '+' { Sign::Plus } else { Sign::Minus };
        ensure(v.sign == want, format!("vertex {} has sign {}", v.label, v.sign))?;
    }
    let markers: String = t.markers().iter().map(|m| m.letter()).collect();
    ensure(markers == "TGTGTGTGTGTTTGT", format!("markers {markers}"))?;
    for v in t.vertices() {
        if let [a, b] = v.children[..] {
            if a != 0 && b != 0 {
                ensure(
                    t.marker(a.max(b)) == Some(PointKind::G),
                    format!("no G between {a} and {b}"),
                )?;
            }
        }
    }
    Ok("14 edges, 5 levels, signs and G/T markers".into())
}

fn kneading_entries() -> Outcome {
    let w = window(4);
    let k6 = kneading_set(&w, 6).map_err(|e| e.to_string())?;
    let k5 = kneading_set(&w, 5).map_err(|e| e.to_string())?;
    let e0 = k6.entry(0).ok_or("no entry n=0")?;
    ensure(
        e0.alpha.is_empty() && e0.tail == word("+-----"),
        format!("n=0: {} {}", e0.alpha, e0.tail),
    )?;
    let em1 = k5.entry(-1).ok_or("no entry n=-1")?;
    ensure(
        em1.alpha == word("-") && em1.tail == word("+++--"),
        format!("n=-1: {} {}", em1.alpha, em1.tail),
    )?;
    let e1 = k5.entry(1).ok_or("no entry n=1")?;
    ensure(
        e1.alpha == word("-+") && e1.tail.starts_with(&word("+-")),
        format!("n=1: {} {}", e1.alpha, e1.tail),
    )?;

    let p = flagship();
    let mut z = p.point_z();
    for _ in 0..2 {
        z = p.lozi_apply(&z);
    }
    let two = Rational::from_integer(2.into());
    for i in 0..10 {
        let lhs = (z.x.mul_rational(&two) + z.y.clone()).add_rational(&two);
        ensure(lhs.is_zero(), format!("T_0^{} = {z} is off the line", i + 3))?;
        z = p.lozi_apply(&z);
    }
    Ok("three entries exact; T_0^3..T_0^12 on 2x+y+2=0".into())
}

fn roundtrips() -> Outcome {
    for depth in 2..=6 {
        report_ok(&verify_roundtrips(&window(depth), depth + 1))?;
    }
    Ok("six compositions at depths 2..6".into())
}

fn admissibility() -> Outcome {
    let w = window(9);
    let k = kneading_set(&w, 10).map_err(|e| e.to_string())?;
    let t = folding_tree(&w);
    for (text, accept) in [("-++-", false), ("-+-", true), ("-++++", true)] {
        let vk = admissible_right_tail(&k, &word(text));
        let vt = admissible_window(&t, &word(text), CheckMode::RightTail);
        let ok = if accept {
            vk.is_accepted() && vt.is_accepted()
        } else {
            vk.is_rejected() && vt.is_rejected()
        };
        ensure(ok, format!("{text}: kneading {vk}, tree {vt}"))?;
    }
    let r = verify_admissibility_consistency(&w, &k, &t, 8, 100, 2024, 20);
    report_ok(&r)?;
    let words = r.cases.iter().filter(|c| c.id.starts_with("word-")).count();
    let samples = r
        .cases
        .iter()
        .filter(|c| c.id.starts_with("sample-") && c.verdict == lozi_core::oracle::CaseVerdict::Pass)
        .count();
    ensure(words == 255, format!("{words} words checked"))?;
    ensure(samples == 100, format!("{samples} of 100 samples accepted by both"))?;
    Ok(format!(
        "{words} words, 0 disagreements, {} inconclusive; 100 samples accepted",
        r.inconclusive_count()
    ))
}

fn order_lemma() -> Outcome {
    let r = verify_order_lemma(&window(8), 1000, 7, 30);
    report_ok(&r)?;
    Ok(format!(
        "{} cases, 0 failures, {} inconclusive",
        r.cases_run(),
        r.inconclusive_count()
    ))
}

fn markov() -> Outcome {
    let r = verify_markov(&window(6));
    report_ok(&r)?;
    Ok(format!("{} non-leaf arcs exact", r.cases_run()))
}

fn geometry_gates() -> Outcome {
    ensure(in_set_s(&rat(17, 10), &rat(3, 10)), "(17/10, 3/10) should be in S")?;
    ensure(!in_set_s(&rat(7, 4), &rat(1, 2)), "(7/4, 1/2) should be outside S")?;
    ensure(!in_set_s(&rat(17, 10), &rat(1, 2)), "(17/10, 1/2) should be outside S")?;
    let inside = Params::new(rat(17, 10), rat(3, 10)).unwrap();
    ensure(
        inside.trapping_check().map_err(|e| e.to_string())?,
        "trapping check fails",
    )?;
    let opts = RenderOptions {
        iterations: 200_000,
        transient: 1_000,
        width: 320,
        height: 240,
        bounds: None,
    };
    let r = render_attractor(&inside, &opts).map_err(|e| e.to_string())?;
    ensure(
        r.outside == 0,
        format!("{} points outside the box of the triangle", r.outside),
    )?;
    let fig = Params::new(rat(17, 10), rat(1, 2)).unwrap();
    let r = render_attractor(&fig, &opts).map_err(|e| e.to_string())?;
    let e = r.extent;
    ensure(
        [e.x_min, e.x_max, e.y_min, e.y_max]
            .iter()
            .all(|v| v.is_finite() && v.abs() < 10.0),
        format!("orbit for (17/10, 1/2) spans {e:?}"),
    )?;
    ensure(r.nonzero_cells() > 1000, "attractor raster is nearly empty")?;
    Ok(format!(
        "S membership, trapping, rasters bounded ({} cells lit for 17/10, 1/2)",
        r.nonzero_cells()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("manifold strip at depth 4", manifold_strip),
        ("signed folding pattern", signed_pattern),
        ("folding tree", folding_tree_fig),
        ("kneading entries and orbit of Z", kneading_entries),
        ("conversion round-trips", roundtrips),
        ("admissibility agreement", admissibility),
        ("order lemma", order_lemma),
        ("Markov exactness", markov),
        ("geometry gates", geometry_gates),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
