use crate::geometry::{Params, PlanePoint};
use crate::manifold::{Label, ManifoldWindow};
use crate::symbolic::SymbolicError;
use crate::word::{Sign, SymbolWord};

/// The kneading sequence `∞+ α ± · k` of the turning point `T_n`, with `k`
/// truncated to a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingEntry {
    pub n: i64,
    pub alpha: SymbolWord,
    pub tail: SymbolWord,
    /// The tail is shorter than requested or could not be resolved.
    pub truncated: bool,
}

/// Kneading entries sorted by `n`. Every arc-code of length `< depth` that
/// folds has its entry present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingSet {
    depth: usize,
    tail_len: usize,
    entries: Vec<KneadingEntry>,
}

impl KneadingSet {
    pub fn new(depth: usize, tail_len: usize, mut entries: Vec<KneadingEntry>) -> Self {
        entries.sort_by_key(|e| e.n);
        KneadingSet {
            depth,
            tail_len,
            entries,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn tail_len(&self) -> usize {
        self.tail_len
    }

    pub fn entries(&self) -> &[KneadingEntry] {
        &self.entries
    }

    pub fn entry(&self, n: i64) -> Option<&KneadingEntry> {
        self.entries
            .binary_search_by_key(&n, |e| e.n)
            .ok()
            .map(|k| &self.entries[k])
    }

    pub fn by_alpha(&self, alpha: &[crate::word::Symbol]) -> Option<&KneadingEntry> {
        self.entries.iter().find(|e| e.alpha.symbols() == alpha)
    }

    /// Same indices and arc-codes, with each pair of tails prefix-compatible.
    pub fn agrees_up_to_truncation(&self, other: &KneadingSet) -> Result<(), String> {
        if self.entries.len() != other.entries.len() {
            return Err(format!("{} entries versus {}", self.entries.len(), other.entries.len()));
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.n != b.n {
                return Err(format!("entry n={} versus n={}", a.n, b.n));
            }
            if a.alpha != b.alpha {
                return Err(format!("n={}: arc-code `{}` versus `{}`", a.n, a.alpha, b.alpha));
            }
            if !(a.tail.is_prefix_of(&b.tail) || b.tail.is_prefix_of(&a.tail)) {
                return Err(format!("n={}: tail `{}` versus `{}`", a.n, a.tail, b.tail));
            }
        }
        Ok(())
    }
}

/// One entry per gluing point `G_{−n}` of the window, with tails of length
/// `m` from exact forward iteration of `T_n = L(G_{−n})`.
pub fn kneading_set(window: &ManifoldWindow, m: usize) -> Result<KneadingSet, SymbolicError> {
    if m == 0 {
        return Err(SymbolicError::EmptyTail);
    }
    let mut entries = Vec::new();
    for g in window.gluing_points() {
        let Label::Gluing(k) = g.label else { unreachable!() };
        let arc = window.arc(g.e_index).expect("a gluing point is never the last point");
        let alpha = window.arc(arc.parent).expect("parents are in the window").code.clone();
        let next = &window.point(g.e_index + 1).expect("checked above").coord;
        let (tail, truncated) = turning_tail(window.params(), &g.coord, &next.sub(&g.coord), m);
        entries.push(KneadingEntry {
            n: -k,
            alpha,
            tail,
            truncated,
        });
    }
    Ok(KneadingSet::new(window.depth(), m, entries))
}

/// Itinerary of `L(G)` read as a limit along `R`: the two branches of `R`
/// leaving `L(G)` are followed through any exact hit of the y-axis. If they
/// split the tail is cut short.
fn turning_tail(params: &Params, g: &PlanePoint, along: &PlanePoint, m: usize) -> (SymbolWord, bool) {
    let w = if along.x.is_positive() {
        along.clone()
    } else {
        along.scale(&params.field().int(-1))
    };
    let mut dirs = [
        params.linear_part(1, &w),
        params.linear_part(-1, &w.scale(&params.field().int(-1))),
    ];
    let mut p = params.lozi_apply(g);
    let mut tail = SymbolWord::new();
    for _ in 0..m {
        let side = match p.x.sign() {
            0 => {
                let (s1, s2) = (dirs[0].x.sign(), dirs[1].x.sign());
                if s1 != s2 || s1 == 0 {
                    return (tail, true);
                }
                s1
            }
            s => s,
        };
        tail.push_sign(Sign::from_i8(side).expect("nonzero"));
        p = params.lozi_apply(&p);
        dirs = [params.linear_part(side, &dirs[0]), params.linear_part(side, &dirs[1])];
    }
    (tail, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::manifold::grow;
    use crate::word::word;

    fn flagship_set(depth: usize, m: usize) -> KneadingSet {
        let p = Params::new(rat(7, 4), rat(1, 2)).unwrap();
        kneading_set(&grow(&p, depth).unwrap(), m).unwrap()
    }

    #[test]
    fn tails_of_z_and_t_minus_one() {
        let k = flagship_set(4, 6);
        assert_eq!(k.entry(0).unwrap().tail, word("+-----"));
        assert!(k.entry(0).unwrap().alpha.is_empty());
        let k = flagship_set(4, 5);
        let e = k.entry(-1).unwrap();
        assert_eq!((e.alpha.clone(), e.tail.clone()), (word("-"), word("+++--")));
    }

    #[test]
    fn alphas_at_depth_four() {
        let k = flagship_set(4, 8);
        let got: Vec<(i64, String)> = k.entries().iter().map(|e| (e.n, e.alpha.to_string())).collect();
        let want = [(-3, "---"), (-2, "-+-"), (-1, "-"), (0, ""), (1, "-+"), (2, "--")];
        assert_eq!(got, want.map(|(n, a)| (n, a.to_string())));
        assert!(k
            .entries()
            .iter()
            .all(|e| !e.truncated && e.tail[0] == crate::word::Symbol::Plus));
    }

    #[test]
    fn zero_length_rejected() {
        let p = Params::new(rat(7, 4), rat(1, 2)).unwrap();
        assert_eq!(kneading_set(&grow(&p, 2).unwrap(), 0), Err(SymbolicError::EmptyTail));
    }
}
