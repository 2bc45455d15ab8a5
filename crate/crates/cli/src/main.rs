//! `lozi`: exact symbolic dynamics of the Lozi map from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lozi_core::exactnum::{parse_rational, Rational};
use lozi_core::geometry::{Params, RenderOptions};
use lozi_core::manifold::{grow, ManifoldWindow, MAX_DEPTH};
use lozi_core::oracle::{
    verify_admissibility_consistency, verify_arc_code_order, verify_markov, verify_order_lemma, verify_roundtrips,
    verify_turning_extremality, VerificationReport, DEFAULT_HORIZON,
};
use lozi_core::symbolic::io::{
    parse_kneading, parse_pattern, parse_tree, write_kneading, write_pattern, write_tree, write_tree_dot, FileHeader,
};
use lozi_core::symbolic::{
    admissible_right_tail, admissible_window, folding_pattern, folding_tree, kneading_from_tree, kneading_set,
    pattern_from_kneading, tree_from_pattern, CheckMode, FoldingPattern, FoldingTree, KneadingSet, Verdict,
};
use lozi_core::word::SymbolWord;

const AFTER_HELP: &str = "\
Output formats:
  Every text output starts with a header line
    # lozi <kind> a=<a> b=<b> depth=<depth> version=<version>
  (inside a comment for SVG and PGM). Rows are tab-separated.
  kneading   `n alpha tail truncated` rows, one per gluing point G_k with n = -k
  pattern    a `signed` row (e.g. -T-G+X+T-) and `arrow from to` rows
  tree       `vertex label level sign children`, `marker e G|T` and
             `level k` rows listing one level left to right with its gap markers
  dot        graph description with one `i -> j;` line per edge
  manifold   `point` and `arc` rows, or an SVG polyline
  attractor  portable graymap (P5 or P2) or SVG

Exit status: 0 success or accepted, 1 rejected (check), 2 usage error,
3 internal diagnostic or disagreement between predicates, 4 inconclusive (check).";

#[derive(Parser, Debug)]
#[command(name = "lozi", version, about = "Exact symbolic dynamics of the Lozi map", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Parameter a, as an integer, fraction `p/q` or finite decimal
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    a: Rational,
    /// Parameter b, as an integer, fraction `p/q` or finite decimal
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    b: Rational,
}

#[derive(Args, Debug, Clone)]
struct DepthArgs {
    /// Number of growth steps of the unstable manifold
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=MAX_DEPTH as i64))]
    depth: u32,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed points X and Y, Z, the trapping triangle and membership in S
    Points {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Basic points and arcs of the unstable manifold window
    Manifold {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        #[arg(long, value_enum, default_value_t = ManifoldFormat::Tsv)]
        format: ManifoldFormat,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kneading entries with tails of length M
    Kneading {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        /// Tail length M (default: depth + 1)
        #[arg(long = "tail-length", short = 'm')]
        tail_length: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Signed folding pattern and its arrows
    Pattern {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        /// Write minus signs as `-` instead of U+2212
        #[arg(long)]
        ascii: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Folding tree as a graph description or structured rows
    Tree {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        #[arg(long, value_enum, default_value_t = TreeFormat::Structured)]
        format: TreeFormat,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Admissibility of a word under both predicates
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        /// Word over {-, +}
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        word: SymbolWord,
        #[arg(long, value_enum, default_value_t = Mode::RightTail)]
        mode: Mode,
        /// Tail length M (default: depth + 1)
        #[arg(long = "tail-length", short = 'm')]
        tail_length: Option<usize>,
    },
    /// Convert a kneading, pattern or tree file into another structure
    Convert {
        /// Input file with a `# lozi` header
        input: PathBuf,
        /// Input structure (default: the kind named in the header)
        #[arg(long, value_enum)]
        from: Option<Structure>,
        #[arg(long, value_enum)]
        to: Structure,
        /// Tail length M when producing kneading entries (default: depth + 1).
        /// Tails derived from a pattern or tree stop where the tree runs out
        /// and are marked truncated.
        #[arg(long = "tail-length", short = 'm')]
        tail_length: Option<usize>,
        /// Write minus signs as `-` instead of U+2212 in patterns
        #[arg(long)]
        ascii: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run oracle verification suites
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        depth: DepthArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sampled points (admissibility, extremality) or pairs (order)
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Itinerary horizon for sampled points
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        /// Longest word in the exhaustive admissibility sweep
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: usize,
        /// Tail length M (default: depth + 1)
        #[arg(long = "tail-length", short = 'm')]
        tail_length: Option<usize>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Raster of a float orbit
    Attractor {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1_000_000)]
        iterations: u64,
        #[arg(long, default_value_t = 1_000)]
        transient: u64,
        #[arg(long, default_value_t = 800)]
        width: usize,
        #[arg(long, default_value_t = 600)]
        height: usize,
        #[arg(long, value_enum, default_value_t = RasterFormat::Pgm)]
        format: RasterFormat,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ManifoldFormat {
    Tsv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TreeFormat {
    Dot,
    Structured,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    RightTail,
    Window,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Structure {
    Kneading,
    Pattern,
    Tree,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    All,
    Order,
    Admissibility,
    Markov,
    Roundtrips,
    ArcCodes,
    Extremality,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Tsv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum RasterFormat {
    Pgm,
    PgmAscii,
    Svg,
}

const EXIT_REJECTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

/// A failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.to_string(),
        }
    }
}

fn parse_exact(text: &str) -> Result<Rational, String> {
    parse_rational(text)
        .map_err(|_| format!("`{text}` is not an exact rational (use p/q, an integer or a finite decimal)"))
}

fn parse_word(text: &str) -> Result<SymbolWord, String> {
    text.parse::<SymbolWord>().map_err(|e| e.to_string())
}

fn params_of(args: &ParamArgs) -> Result<Params, Failure> {
    let p = Params::new(args.a.clone(), args.b.clone()).map_err(|e| Failure::usage(e.to_string()))?;
    if !p.in_s() {
        eprintln!(
            "warning: a={} b={} lies outside S; constructions proceed but the trapping region is not guaranteed",
            p.a(),
            p.b()
        );
    }
    Ok(p)
}

fn window_of(params: &Params, depth: &DepthArgs) -> Result<ManifoldWindow, Failure> {
    grow(params, depth.depth as usize).map_err(Failure::internal)
}

fn header(kind: &str, params: &Params, depth: Option<usize>) -> String {
    FileHeader::new(kind, params.a(), params.b(), depth).render()
}

fn emit(out: &OutputArgs, bytes: &[u8]) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::internal(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(bytes).map_err(Failure::internal),
    }
}

fn emit_text(out: &OutputArgs, head: &str, body: &str) -> Result<(), Failure> {
    emit(out, format!("{head}\n{body}").as_bytes())
}

fn points(params: &ParamArgs, out: &OutputArgs) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let mut body = String::new();
    let pair = |pt: &lozi_core::geometry::PlanePoint| format!("{}, {}", pt.x, pt.y);
    let (x, y) = p.fixed_points().map_err(Failure::internal)?;
    let _ = writeln!(body, "a = {}", p.a());
    let _ = writeln!(body, "b = {}", p.b());
    let _ = writeln!(body, "D = {}", p.d());
    let _ = writeln!(body, "X = {}", pair(&x));
    let _ = writeln!(body, "Y = {}", pair(&y));
    let _ = writeln!(body, "Z = {}", pair(&p.point_z()));
    for (i, v) in p.trapping_triangle().iter().enumerate() {
        let _ = writeln!(body, "Delta{} = {}", i + 1, pair(v));
    }
    let _ = writeln!(body, "in_S = {}", p.in_s());
    emit_text(out, &header("points", &p, None), &body)?;
    Ok(0)
}

fn manifold_svg(w: &ManifoldWindow) -> String {
    let coords: Vec<(f64, f64)> = w.points().iter().map(|p| p.coord.to_f64()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &coords {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (width, height) = (800.0, 600.0);
    let scale = (width / (x1 - x0).max(1e-9)).min(height / (y1 - y0).max(1e-9)) * 0.9;
    let map = |(x, y): (f64, f64)| (40.0 + (x - x0) * scale, height - 30.0 - (y - y0) * scale);
    let path: Vec<String> = coords
        .iter()
        .map(|&c| {
            let (u, v) = map(c);
            format!("{u:.3},{v:.3}")
        })
        .collect();
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{pts}\"/>\n",
        w = width + 80.0,
        h = height,
        pts = path.join(" ")
    );
    for (pt, &c) in w.points().iter().zip(&coords) {
        let (u, v) = map(c);
        let fill = if pt.label.is_gluing() { "red" } else { "blue" };
        let _ = writeln!(
            s,
            "<circle cx=\"{u:.3}\" cy=\"{v:.3}\" r=\"2\" fill=\"{fill}\"><title>{}</title></circle>",
            pt.label
        );
    }
    s.push_str("</svg>\n");
    s
}

fn manifold(params: &ParamArgs, depth: &DepthArgs, format: ManifoldFormat, out: &OutputArgs) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let head = header("manifold", &p, Some(w.depth()));
    match format {
        ManifoldFormat::Tsv => emit_text(out, &head, &format!("{}{}", w.export_points(), w.export_arcs()))?,
        ManifoldFormat::Svg => emit(out, format!("<!-- {head} -->\n{}", manifold_svg(&w)).as_bytes())?,
    }
    Ok(0)
}

fn tail_len(tail_length: Option<usize>, depth: usize) -> usize {
    tail_length.unwrap_or(depth + 1)
}

fn kneading(params: &ParamArgs, depth: &DepthArgs, m: Option<usize>, out: &OutputArgs) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let k = kneading_set(&w, tail_len(m, w.depth())).map_err(Failure::internal)?;
    emit_text(out, &header("kneading", &p, Some(w.depth())), &write_kneading(&k))?;
    Ok(0)
}

fn pattern(params: &ParamArgs, depth: &DepthArgs, ascii: bool, out: &OutputArgs) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let pat = folding_pattern(&w);
    emit_text(
        out,
        &header("pattern", &p, Some(w.depth())),
        &write_pattern(&pat, !ascii),
    )?;
    Ok(0)
}

fn tree(params: &ParamArgs, depth: &DepthArgs, format: TreeFormat, out: &OutputArgs) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let t = folding_tree(&w);
    let (kind, body) = match format {
        TreeFormat::Dot => ("tree-dot", write_tree_dot(&t)),
        TreeFormat::Structured => ("tree", write_tree(&t)),
    };
    emit_text(out, &header(kind, &p, Some(w.depth())), &body)?;
    Ok(0)
}

fn check(
    params: &ParamArgs,
    depth: &DepthArgs,
    word: &SymbolWord,
    mode: Mode,
    m: Option<usize>,
) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let tree = folding_tree(&w);
    let (vt, vk) = match mode {
        Mode::RightTail => {
            let k = kneading_set(&w, tail_len(m, w.depth())).map_err(Failure::internal)?;
            (
                admissible_window(&tree, word, CheckMode::RightTail),
                Some(admissible_right_tail(&k, word)),
            )
        }
        Mode::Window => (admissible_window(&tree, word, CheckMode::Window), None),
    };
    let mut body = String::new();
    let _ = writeln!(body, "word\t{word}");
    let _ = writeln!(
        body,
        "mode\t{}",
        if mode == Mode::RightTail {
            "right-tail"
        } else {
            "window"
        }
    );
    let _ = writeln!(
        body,
        "kneading\t{}",
        vk.as_ref().map_or("n/a".to_string(), Verdict::to_string)
    );
    let _ = writeln!(body, "tree\t{vt}");
    let agree = vk.as_ref().is_none_or(|v| v.consistent_with(&vt));
    let combined = match &vk {
        Some(v) if !v.is_conclusive() => &vt,
        Some(v) => v,
        None => &vt,
    };
    let (verdict, code) = if !agree {
        ("disagreement", EXIT_INTERNAL)
    } else if combined.is_rejected() {
        ("rejected", EXIT_REJECTED)
    } else if combined.is_accepted() {
        ("accepted", 0)
    } else {
        ("inconclusive", EXIT_INCONCLUSIVE)
    };
    let _ = writeln!(body, "verdict\t{verdict}");
    emit_text(
        &OutputArgs { output: None },
        &header("check", &p, Some(w.depth())),
        &body,
    )?;
    if !agree {
        eprintln!("error: the kneading and tree predicates disagree on {word}");
    }
    Ok(code)
}

enum Loaded {
    Kneading(KneadingSet),
    Pattern(FoldingPattern),
    Tree(FoldingTree),
}

fn convert(
    input: &PathBuf,
    from: Option<Structure>,
    to: Structure,
    m: Option<usize>,
    ascii: bool,
    out: &OutputArgs,
) -> Result<u8, Failure> {
    let text = fs::read_to_string(input).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let first = text.lines().next().unwrap_or("");
    let head = FileHeader::parse(first).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let from = match (from, head.kind.as_str()) {
        (Some(f), _) => f,
        (None, "kneading") => Structure::Kneading,
        (None, "pattern") => Structure::Pattern,
        (None, "tree") => Structure::Tree,
        (None, other) => return Err(Failure::usage(format!("cannot convert from `{other}`; pass --from"))),
    };
    let bad_input = |e: lozi_core::symbolic::SymbolicError| Failure::usage(format!("{}: {e}", input.display()));
    let loaded = match from {
        Structure::Kneading => {
            let depth = head
                .depth
                .ok_or_else(|| Failure::usage("kneading input needs depth= in its header"))?;
            Loaded::Kneading(parse_kneading(&text, depth).map_err(bad_input)?)
        }
        Structure::Pattern => Loaded::Pattern(parse_pattern(&text).map_err(bad_input)?),
        Structure::Tree => Loaded::Tree(parse_tree(&text).map_err(bad_input)?),
    };
    let depth = match &loaded {
        Loaded::Kneading(k) => k.depth(),
        Loaded::Pattern(p) => match head.depth {
            Some(d) => d,
            None => tree_from_pattern(p).map_err(Failure::internal)?.depth(),
        },
        Loaded::Tree(t) => t.depth(),
    };
    let m = tail_len(m, depth);
    let to_pattern = |l: &Loaded| -> Result<FoldingPattern, Failure> {
        match l {
            Loaded::Pattern(p) => Ok(p.clone()),
            Loaded::Kneading(k) => pattern_from_kneading(k, depth).map_err(Failure::internal),
            Loaded::Tree(t) => {
                let k = kneading_from_tree(t, m).map_err(Failure::internal)?;
                pattern_from_kneading(&k, depth).map_err(Failure::internal)
            }
        }
    };
    let finish = |body: String| -> Result<u8, Failure> {
        let kind = match to {
            Structure::Kneading => "kneading",
            Structure::Pattern => "pattern",
            Structure::Tree => "tree",
        };
        let new_head = FileHeader::new(kind, &head.a, &head.b, Some(depth)).render();
        emit_text(out, &new_head, &body)?;
        Ok(0)
    };
    let body = match to {
        Structure::Pattern => write_pattern(&to_pattern(&loaded)?, !ascii),
        Structure::Tree => {
            let t = match &loaded {
                Loaded::Tree(t) => t.clone(),
                other => tree_from_pattern(&to_pattern(other)?).map_err(Failure::internal)?,
            };
            write_tree(&t)
        }
        Structure::Kneading => {
            let t = match &loaded {
                Loaded::Kneading(k) => return finish(write_kneading(k)),
                Loaded::Tree(t) => t.clone(),
                other => tree_from_pattern(&to_pattern(other)?).map_err(Failure::internal)?,
            };
            write_kneading(&kneading_from_tree(&t, m).map_err(Failure::internal)?)
        }
    };
    finish(body)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    params: &ParamArgs,
    depth: &DepthArgs,
    suite: Suite,
    seed: u64,
    samples: usize,
    horizon: usize,
    max_len: usize,
    m: Option<usize>,
    format: ReportFormat,
    out: &OutputArgs,
) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let w = window_of(&p, depth)?;
    let m = tail_len(m, w.depth());
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if wants(Suite::Markov) {
        reports.push(verify_markov(&w));
    }
    if wants(Suite::ArcCodes) {
        reports.push(verify_arc_code_order(&w));
    }
    if wants(Suite::Roundtrips) {
        reports.push(verify_roundtrips(&w, m));
    }
    if wants(Suite::Order) {
        reports.push(verify_order_lemma(&w, samples, seed, horizon));
    }
    if wants(Suite::Admissibility) || wants(Suite::Extremality) {
        let k = kneading_set(&w, m).map_err(Failure::internal)?;
        if wants(Suite::Admissibility) {
            let t = folding_tree(&w);
            reports.push(verify_admissibility_consistency(
                &w, &k, &t, max_len, samples, seed, horizon,
            ));
        }
        if wants(Suite::Extremality) {
            reports.push(verify_turning_extremality(&w, &k, samples, seed, horizon));
        }
    }
    let body: String = reports
        .iter()
        .map(|r| match format {
            ReportFormat::Text => r.render_text(),
            ReportFormat::Tsv => r.render_tsv(),
        })
        .collect();
    let body = match format {
        ReportFormat::Text => body,
        ReportFormat::Tsv => format!("#suite\tcase\tverdict\ta\tb\tdepth\tseed\tinputs\tdetail\n{body}"),
    };
    emit_text(out, &header("verify", &p, Some(w.depth())), &body)?;
    Ok(if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        EXIT_INTERNAL
    })
}

#[allow(clippy::too_many_arguments)]
fn attractor(
    params: &ParamArgs,
    iterations: u64,
    transient: u64,
    width: usize,
    height: usize,
    format: RasterFormat,
    out: &OutputArgs,
) -> Result<u8, Failure> {
    let p = params_of(params)?;
    let opts = RenderOptions {
        iterations,
        transient,
        width,
        height,
        bounds: None,
    };
    let raster = lozi_core::geometry::render_attractor(&p, &opts).map_err(|e| match e {
        lozi_core::geometry::GeometryError::InvalidRender(_) => Failure::usage(e.to_string()),
        other => Failure::internal(other),
    })?;
    let head = header("attractor", &p, None);
    let bytes = match format {
        RasterFormat::Svg => format!("<!-- {head} -->\n{}", raster.to_svg()).into_bytes(),
        RasterFormat::Pgm | RasterFormat::PgmAscii => {
            let pgm = raster.to_pgm(format == RasterFormat::Pgm);
            // the comment goes right after the magic number
            let mut bytes = pgm[..3].to_vec();
            bytes.extend_from_slice(format!("{head}\n").as_bytes());
            bytes.extend_from_slice(&pgm[3..]);
            bytes
        }
    };
    emit(out, &bytes)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Points { params, out } => points(&params, &out),
        Command::Manifold {
            params,
            depth,
            format,
            out,
        } => manifold(&params, &depth, format, &out),
        Command::Kneading {
            params,
            depth,
            tail_length,
            out,
        } => kneading(&params, &depth, tail_length, &out),
        Command::Pattern {
            params,
            depth,
            ascii,
            out,
        } => pattern(&params, &depth, ascii, &out),
        Command::Tree {
            params,
            depth,
            format,
            out,
        } => tree(&params, &depth, format, &out),
        Command::Check {
            params,
            depth,
            word,
            mode,
            tail_length,
        } => check(&params, &depth, &word, mode, tail_length),
        Command::Convert {
            input,
            from,
            to,
            tail_length,
            ascii,
            out,
        } => convert(&input, from, to, tail_length, ascii, &out),
        Command::Verify {
            params,
            depth,
            suite,
            seed,
            samples,
            horizon,
            max_len,
            tail_length,
            format,
            out,
        } => verify(
            &params,
            &depth,
            suite,
            seed,
            samples,
            horizon,
            max_len,
            tail_length,
            format,
            &out,
        ),
        Command::Attractor {
            params,
            iterations,
            transient,
            width,
            height,
            format,
            out,
        } => attractor(&params, iterations, transient, width, height, format, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
