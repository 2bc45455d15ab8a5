//! Tab-separated text formats for kneading sets, folding patterns and
//! folding trees, with a common header line.

use std::fmt::Write as _;

use crate::exactnum::{parse_rational, Rational};
use crate::symbolic::{FoldingPattern, FoldingTree, KneadingEntry, KneadingSet, PointKind, SymbolicError};
use crate::word::{Sign, SymbolWord};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `# lozi <kind> a=<a> b=<b> depth=<depth> version=<version>`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileHeader {
    pub kind: String,
    pub a: Rational,
    pub b: Rational,
    pub depth: Option<usize>,
}

impl FileHeader {
    pub fn new(kind: &str, a: &Rational, b: &Rational, depth: Option<usize>) -> Self {
        FileHeader {
            kind: kind.to_string(),
            a: a.clone(),
            b: b.clone(),
            depth,
        }
    }

    pub fn render(&self) -> String {
        let depth = self.depth.map_or("-".to_string(), |d| d.to_string());
        format!(
            "# lozi {} a={} b={} depth={} version={}",
            self.kind, self.a, self.b, depth, VERSION
        )
    }

    pub fn parse(line: &str) -> Result<FileHeader, SymbolicError> {
        let err = |detail: &str| SymbolicError::Parse {
            line: 1,
            detail: detail.to_string(),
        };
        let rest = line
            .strip_prefix("# lozi ")
            .ok_or_else(|| err("missing `# lozi` header"))?;
        let mut fields = rest.split_whitespace();
        let kind = fields.next().ok_or_else(|| err("missing kind"))?.to_string();
        let (mut a, mut b, mut depth) = (None, None, None);
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(|| err(field))?;
            match key {
                "a" => a = Some(parse_rational(value).map_err(|_| err(value))?),
                "b" => b = Some(parse_rational(value).map_err(|_| err(value))?),
                "depth" if value != "-" => depth = Some(value.parse().map_err(|_| err(value))?),
                _ => {}
            }
        }
        Ok(FileHeader {
            kind,
            a: a.ok_or_else(|| err("missing a="))?,
            b: b.ok_or_else(|| err("missing b="))?,
            depth,
        })
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, detail: impl Into<String>) -> SymbolicError {
    SymbolicError::Parse {
        line,
        detail: detail.into(),
    }
}

fn parse_word(line: usize, text: &str) -> Result<SymbolWord, SymbolicError> {
    text.parse()
        .map_err(|e: crate::word::WordParseError| parse_err(line, e.to_string()))
}

fn parse_int<T: std::str::FromStr>(line: usize, text: &str) -> Result<T, SymbolicError> {
    text.parse()
        .map_err(|_| parse_err(line, format!("`{text}` is not an integer")))
}

/// Lines `n TAB alpha TAB tail TAB truncated`.
pub fn write_kneading(kset: &KneadingSet) -> String {
    let mut out = String::from("#n\talpha\ttail\ttruncated\n");
    for e in kset.entries() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", e.n, e.alpha, e.tail, e.truncated);
    }
    out
}

pub fn parse_kneading(text: &str, depth: usize) -> Result<KneadingSet, SymbolicError> {
    let mut entries = Vec::new();
    for (line, l) in data_lines(text) {
        let cols: Vec<&str> = l.split('\t').collect();
        let [n, alpha, tail, truncated] = cols[..] else {
            return Err(parse_err(line, "expected 4 tab-separated columns"));
        };
        let truncated = match truncated {
            "true" => true,
            "false" => false,
            other => return Err(parse_err(line, format!("`{other}` is not true/false"))),
        };
        entries.push(KneadingEntry {
            n: parse_int(line, n)?,
            alpha: parse_word(line, alpha)?,
            tail: parse_word(line, tail)?,
            truncated,
        });
    }
    let tail_len = entries.iter().map(|e| e.tail.len()).max().unwrap_or(0);
    Ok(KneadingSet::new(depth, tail_len, entries))
}

/// A `signed` line followed by `arrow TAB from TAB to` lines.
pub fn write_pattern(pattern: &FoldingPattern, unicode: bool) -> String {
    let mut out = format!("signed\t{}\n", pattern.signed(unicode));
    for (from, to) in pattern.arrow_pairs() {
        let _ = writeln!(out, "arrow\t{from}\t{to}");
    }
    out
}

fn sign_of(c: char) -> Option<Sign> {
    match c {
        '-' | '\u{2212}' => Some(Sign::Minus),
        '+' => Some(Sign::Plus),
        _ => None,
    }
}

/// Parses a signed string such as `−T−G+X+T−`.
pub fn parse_signed(line: usize, text: &str) -> Result<(i64, Vec<PointKind>, Vec<Sign>), SymbolicError> {
    let chars: Vec<char> = text.chars().collect();
    if chars.len().is_multiple_of(2) {
        return Err(parse_err(line, "signed string must alternate signs and symbols"));
    }
    let mut kinds = Vec::new();
    let mut signs = Vec::new();
    let mut x_after = None;
    for pair in chars[..chars.len() - 1].chunks(2) {
        let s = sign_of(pair[0]).ok_or_else(|| parse_err(line, format!("`{}` is not a sign", pair[0])))?;
        match pair[1] {
            'X' => {
                if x_after.is_some() || kinds.is_empty() {
                    return Err(parse_err(line, "misplaced X"));
                }
                x_after = Some(kinds.len() - 1);
                continue;
            }
            'G' => kinds.push(PointKind::G),
            'T' => kinds.push(PointKind::T),
            c => return Err(parse_err(line, format!("`{c}` is not G, T or X"))),
        }
        if kinds.len() > 1 {
            signs.push(s);
        }
    }
    let _ = sign_of(chars[chars.len() - 1]).ok_or_else(|| parse_err(line, "signed string must end with a sign"))?;
    let g0 = x_after.ok_or_else(|| parse_err(line, "missing X"))?;
    Ok((-(g0 as i64), kinds, signs))
}

pub fn parse_pattern(text: &str) -> Result<FoldingPattern, SymbolicError> {
    let mut signed = None;
    let mut arrows = Vec::new();
    for (line, l) in data_lines(text) {
        let cols: Vec<&str> = l.split('\t').collect();
        match cols[..] {
            ["signed", s] => signed = Some(parse_signed(line, s)?),
            ["arrow", from, to] => arrows.push((line, parse_int::<i64>(line, from)?, parse_int::<i64>(line, to)?)),
            _ => return Err(parse_err(line, "expected `signed` or `arrow` row")),
        }
    }
    let (e_min, kinds, signs) = signed.ok_or_else(|| parse_err(0, "missing `signed` row"))?;
    let mut table = vec![None; kinds.len()];
    for (line, from, to) in arrows {
        let slot = usize::try_from(from - e_min)
            .ok()
            .and_then(|k| table.get_mut(k))
            .ok_or_else(|| parse_err(line, format!("arrow source {from} outside the pattern")))?;
        *slot = Some(to);
    }
    FoldingPattern::new(e_min, kinds, signs, table)
}

/// Graph description with one `i -> j` edge per line.
pub fn write_tree_dot(tree: &FoldingTree) -> String {
    let mut out = String::from("digraph folding_tree {\n");
    for v in tree.vertices() {
        let _ = writeln!(out, "  {} [label=\"{} {}\"];", v.label, v.label, v.sign);
    }
    for (from, to) in tree.edges() {
        let _ = writeln!(out, "  {from} -> {to};");
    }
    out.push_str("}\n");
    out
}

/// `vertex`, `marker` and `level` rows. A `level` row lists the vertices of
/// one level left to right with the gap markers between and around them.
pub fn write_tree(tree: &FoldingTree) -> String {
    let mut out = String::from("#vertex\tlabel\tlevel\tsign\tchildren\n");
    for v in tree.vertices() {
        let children = if v.children.is_empty() {
            "-".to_string()
        } else {
            v.children.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(out, "vertex\t{}\t{}\t{}\t{}", v.label, v.level, v.sign, children);
    }
    for (k, m) in tree.markers().iter().enumerate() {
        let _ = writeln!(out, "marker\t{}\t{}", tree.e_min() + k as i64, m.letter());
    }
    for (level, row) in tree.levels().iter().enumerate() {
        let mut cells = Vec::new();
        let marker = |e: i64| tree.marker(e).map_or('?', PointKind::letter).to_string();
        if let Some(&first) = row.first() {
            cells.push(marker(FoldingTree::near_marker(first)));
        }
        for &v in row {
            cells.push(format!("{}:{}", v, tree.vertex(v).expect("vertex").sign));
            cells.push(marker(FoldingTree::far_marker(v)));
        }
        let _ = writeln!(out, "level\t{}\t{}", level, cells.join(" "));
    }
    out
}

pub fn parse_tree(text: &str) -> Result<FoldingTree, SymbolicError> {
    let mut vertices: Vec<(i64, Sign, Vec<i64>)> = Vec::new();
    let mut markers: Vec<(i64, PointKind)> = Vec::new();
    for (line, l) in data_lines(text) {
        let cols: Vec<&str> = l.split('\t').collect();
        match cols[..] {
            ["vertex", label, _level, sign, children] => {
                let sign = match sign {
                    "+" => Sign::Plus,
                    "-" | "\u{2212}" => Sign::Minus,
                    s => return Err(parse_err(line, format!("`{s}` is not a sign"))),
                };
                let children = if children == "-" {
                    Vec::new()
                } else {
                    children
                        .split(',')
                        .map(|c| parse_int(line, c))
                        .collect::<Result<_, _>>()?
                };
                vertices.push((parse_int(line, label)?, sign, children));
            }
            ["marker", e, kind] => {
                let kind = match kind {
                    "G" => PointKind::G,
                    "T" => PointKind::T,
                    k => return Err(parse_err(line, format!("`{k}` is not G or T"))),
                };
                markers.push((parse_int(line, e)?, kind));
            }
            ["level", ..] => {}
            _ => return Err(parse_err(line, "expected `vertex`, `marker` or `level` row")),
        }
    }
    vertices.sort_by_key(|v| v.0);
    markers.sort_by_key(|m| m.0);
    let e_min = vertices.first().ok_or_else(|| parse_err(0, "no vertices"))?.0;
    let contiguous = vertices.iter().enumerate().all(|(k, v)| v.0 == e_min + k as i64)
        && markers.iter().enumerate().all(|(k, m)| m.0 == e_min + k as i64);
    if !contiguous {
        return Err(parse_err(
            0,
            "vertex and marker labels must be contiguous from the same start",
        ));
    }
    let (signs, children) = vertices.into_iter().map(|(_, s, c)| (s, c)).unzip();
    FoldingTree::new(e_min, signs, children, markers.into_iter().map(|m| m.1).collect())
}
