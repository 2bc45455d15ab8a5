use std::fs;
use std::process::{Command, Output};

fn lozi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lozi"))
        .args(args)
        .output()
        .expect("run lozi")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FLAGSHIP: [&str; 4] = ["--a", "7/4", "--b", "1/2"];

fn with_flagship<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(&FLAGSHIP);
    v.extend_from_slice(rest);
    v
}

#[test]
fn points_prints_exact_coordinates() {
    let o = lozi(&with_flagship("points", &[]));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("X = 4/9, 2/9"), "{out}");
    assert!(out.contains("Z = 4/3, 0"), "{out}");
    assert!(out.contains("in_S = false"), "{out}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside S"));
}

#[test]
fn decimals_are_echoed_as_rationals() {
    let o = lozi(&["points", "--a", "1.75", "--b", "0.5"]);
    assert!(stdout(&o).starts_with("# lozi points a=7/4 b=1/2 depth=- version="));
}

#[test]
fn check_rejects_with_both_predicates() {
    let o = lozi(&with_flagship("check", &["--depth", "9", "--word", "-++-"]));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("kneading\trejected"), "{out}");
    assert!(out.contains("tree\trejected"), "{out}");
    assert!(out.contains("verdict\trejected"), "{out}");
}

#[test]
fn check_accepts() {
    for w in ["-+-", "-++++"] {
        let o = lozi(&with_flagship("check", &["--depth", "9", "--word", w]));
        assert_eq!(o.status.code(), Some(0), "{w}");
        assert!(stdout(&o).contains("verdict\taccepted"));
    }
}

#[test]
fn check_reports_inconclusive() {
    let o = lozi(&with_flagship("check", &["--depth", "4", "--word", "-+++++"]));
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("verdict\tinconclusive"));
}

#[test]
fn window_mode_only_runs_the_tree() {
    let o = lozi(&with_flagship(
        "check",
        &["--depth", "6", "--word", "++-+", "--mode", "window"],
    ));
    let out = stdout(&o);
    assert!(out.contains("kneading\tn/a"), "{out}");
    assert!(matches!(o.status.code(), Some(0 | 4)));
}

#[test]
fn pattern_prints_signed_string() {
    let o = lozi(&with_flagship("pattern", &["--depth", "4"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(
        "signed\t\u{2212}T\u{2212}G+T+G\u{2212}T\u{2212}G+X+T+G\u{2212}T\u{2212}G+T+T+T+G\u{2212}T\u{2212}\n"
    ));
    let o = lozi(&with_flagship("pattern", &["--depth", "4", "--ascii"]));
    assert!(stdout(&o).contains("signed\t-T-G+T+G-T-G+X+T+G-T-G+T+T+T+G-T-\n"));
}

#[test]
fn tree_dot_lists_edges() {
    let o = lozi(&with_flagship("tree", &["--depth", "4", "--format", "dot"]));
    let out = stdout(&o);
    for edge in ["  0 -> -1;", "  -1 -> 1;", "  -5 -> 8;", "  0 -> 0;"] {
        assert!(out.contains(edge), "{edge} missing from {out}");
    }
    assert_eq!(out.matches(" -> ").count(), 14);
}

#[test]
fn manifold_exports_points_and_arcs() {
    let o = lozi(&with_flagship("manifold", &["--depth", "4"]));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("point\t")).count(), 15);
    assert_eq!(out.lines().filter(|l| l.starts_with("arc\t")).count(), 14);
    let o = lozi(&with_flagship("manifold", &["--depth", "3", "--format", "svg"]));
    let out = stdout(&o);
    assert!(out.starts_with("<!-- # lozi manifold a=7/4 b=1/2 depth=3"));
    assert!(out.contains("<polyline"));
}

#[test]
fn usage_errors_name_the_token() {
    let o = lozi(&["check", "--a", "7/x", "--b", "1/2", "--word", "-"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("7/x"));
    let o = lozi(&with_flagship("check", &["--word", "-q+"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('q'));
    let o = lozi(&with_flagship("points", &["--bogus"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--bogus"));
    let o = lozi(&["points", "--a", "1/2", "--b", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for kind in ["kneading", "pattern", "tree"] {
        let o = lozi(&with_flagship(kind, &["--depth", "5", "-o", &path(kind)]));
        assert_eq!(o.status.code(), Some(0));
    }
    let direct = |kind: &str| fs::read_to_string(path(kind)).unwrap();
    for from in ["kneading", "pattern", "tree"] {
        for to in ["pattern", "tree"] {
            let o = lozi(&["convert", &path(from), "--to", to]);
            assert_eq!(o.status.code(), Some(0), "{from} -> {to}");
            assert_eq!(stdout(&o), direct(to), "{from} -> {to}");
        }
    }
    let o = lozi(&["convert", &path("kneading"), "--to", "kneading"]);
    assert_eq!(stdout(&o), direct("kneading"));
    // tails read off a tree stop at its leaves
    let o = lozi(&["convert", &path("tree"), "--to", "kneading"]);
    let out = stdout(&o);
    assert!(out.contains("0\t\t+-----\tfalse"), "{out}");
    assert!(out.contains("\ttrue"), "{out}");
}

#[test]
fn convert_rejects_files_without_header() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    fs::write(&p, "signed\t-T+X+T-\n").unwrap();
    let o = lozi(&["convert", p.to_str().unwrap(), "--to", "tree"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_inside_s() {
    let o = lozi(&[
        "verify",
        "--a",
        "17/10",
        "--b",
        "3/10",
        "--depth",
        "5",
        "--samples",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.matches(": PASS").count(), 6, "{out}");
    let o = lozi(&[
        "verify", "--a", "17/10", "--b", "3/10", "--depth", "5", "--suite", "markov", "--format", "tsv",
    ]);
    let out = stdout(&o);
    assert!(
        out.lines()
            .skip(2)
            .all(|l| l.starts_with("markov\t") && l.contains("\tpass\t")),
        "{out}"
    );
}

#[test]
fn attractor_writes_graymap_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.pgm");
    let o = lozi(&[
        "attractor",
        "--a",
        "17/10",
        "--b",
        "3/10",
        "--iterations",
        "20000",
        "--width",
        "64",
        "--height",
        "48",
        "-o",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = fs::read(&p).unwrap();
    let head = String::from_utf8_lossy(&bytes[..80]);
    assert!(head.starts_with("P5\n# lozi attractor a=17/10 b=3/10"), "{head}");
    assert!(head.contains("\n64 48\n255\n"));
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "verify", "--a", "17/10", "--b", "3/10", "--depth", "4", "--suite", "order", "--format", "tsv",
    ];
    assert_eq!(lozi(&args).stdout, lozi(&args).stdout);
}
