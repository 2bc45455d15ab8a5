use std::fmt;

use crate::symbolic::{plex_compare_at, FoldingTree, KneadingSet, PlexOrdering};
use crate::word::{Symbol, SymbolWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// Definitive: `position` indexes the offending symbol of the word as
    /// given; `entry` names the kneading entry that excluded it, if any.
    Rejected {
        position: usize,
        entry: Option<i64>,
    },
    Inconclusive,
}

impl Verdict {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, Verdict::Rejected { .. })
    }

    /// False only when both verdicts are conclusive and differ.
    pub fn consistent_with(&self, other: &Verdict) -> bool {
        !(self.is_conclusive() && other.is_conclusive() && self.is_accepted() != other.is_accepted())
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected { .. } => "rejected",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Rejected {
                position,
                entry: Some(n),
            } => write!(f, "rejected at position {position} by entry n={n}"),
            Verdict::Rejected { position, entry: None } => {
                write!(f, "rejected at position {position}")
            }
            other => f.write_str(other.keyword()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// The word follows the left tail `∞+`.
    RightTail,
    /// The word may occur anywhere in an itinerary.
    Window,
}

fn leading_plus(w: &[Symbol]) -> usize {
    w.iter().take_while(|&&s| s == Symbol::Plus).count()
}

/// Kneading route: every prefix `α` of `p` that is the arc-code of a fold
/// constrains the rest of `p` to be at most the matching kneading tail. The
/// entry with empty `α` also applies with its `±` placed inside the leading
/// `∞+`, which bounds the shifts `+p`, `++p`, … of the word.
pub fn admissible_right_tail(kset: &KneadingSet, p: &SymbolWord) -> Verdict {
    let skip = leading_plus(p);
    let p = &p[skip..];
    let mut inconclusive = false;
    let mut earliest: Option<(usize, i64)> = None;
    let mut compare =
        |shifted: &[Symbol], offset: i64, n: i64, tail: &SymbolWord, inconclusive: &mut bool| match plex_compare_at(
            shifted, tail,
        ) {
            (PlexOrdering::Greater, Some(k)) => {
                let pos = (skip as i64 + offset + k as i64) as usize;
                if earliest.is_none_or(|(q, _)| pos < q) {
                    earliest = Some((pos, n));
                }
            }
            (PlexOrdering::IncomparablePrefix, _) if shifted.len() > tail.len() => {
                *inconclusive = true;
            }
            _ => {}
        };
    if p.is_empty() {
        return Verdict::Accepted;
    }
    if let Some(root) = kset.by_alpha(&[]) {
        // Shifts by three or more pluses compare exactly like two.
        for r in 1..=2usize {
            let mut shifted = vec![Symbol::Plus; r];
            shifted.extend_from_slice(p);
            compare(&shifted, -(r as i64), root.n, &root.tail, &mut inconclusive);
        }
    } else if kset.depth() == 0 {
        inconclusive = true;
    }
    // α = p[..len], compared word σ^{len+1}(p)
    for len in 0..p.len().saturating_sub(1) {
        let alpha = &p[..len];
        let Some(entry) = kset.by_alpha(alpha) else {
            if len >= kset.depth() {
                inconclusive = true;
            }
            continue;
        };
        compare(&p[len + 1..], len as i64 + 1, entry.n, &entry.tail, &mut inconclusive);
    }
    match earliest {
        Some((position, n)) => Verdict::Rejected {
            position,
            entry: Some(n),
        },
        None if inconclusive => Verdict::Inconclusive,
        None => Verdict::Accepted,
    }
}

/// Tree route: `w` must be the sign sequence of a walk in the folding tree.
pub fn admissible_window(tree: &FoldingTree, w: &SymbolWord, mode: CheckMode) -> Verdict {
    let admits = |v: i64, s: Symbol| s.admits(tree.vertex(v).expect("vertex").sign);
    let mut truncated = false;
    let (mut current, rest): (Vec<i64>, &[Symbol]) = match mode {
        CheckMode::RightTail => (vec![0], &w[..]),
        CheckMode::Window => {
            let Some((&first, rest)) = w.split_first() else {
                return Verdict::Accepted;
            };
            let start = tree
                .vertices()
                .iter()
                .filter(|v| first.admits(v.sign))
                .map(|v| v.label)
                .collect();
            (start, rest)
        }
    };
    let offset = w.len() - rest.len();
    for (k, &s) in rest.iter().enumerate() {
        let mut next = Vec::new();
        for &v in &current {
            let children = &tree.vertex(v).expect("vertex").children;
            if children.is_empty() {
                truncated = true;
            }
            next.extend(children.iter().copied().filter(|&c| admits(c, s)));
        }
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            return match mode {
                CheckMode::RightTail if !truncated => Verdict::Rejected {
                    position: offset + k,
                    entry: None,
                },
                _ => Verdict::Inconclusive,
            };
        }
        current = next;
    }
    if current.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Accepted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::geometry::Params;
    use crate::manifold::grow;
    use crate::symbolic::{folding_tree, kneading_set};
    use crate::word::word;

    fn setup(depth: usize) -> (KneadingSet, FoldingTree) {
        let w = grow(&Params::new(rat(7, 4), rat(1, 2)).unwrap(), depth).unwrap();
        (kneading_set(&w, depth + 1).unwrap(), folding_tree(&w))
    }

    #[test]
    fn kneading_route_examples() {
        let (k, _) = setup(4);
        assert_eq!(
            admissible_right_tail(&k, &word("-++-")),
            Verdict::Rejected {
                position: 3,
                entry: Some(-1)
            }
        );
        assert_eq!(admissible_right_tail(&k, &word("-+-")), Verdict::Accepted);
        assert_eq!(admissible_right_tail(&k, &word("-++++")), Verdict::Accepted);
        assert_eq!(admissible_right_tail(&k, &word("+++")), Verdict::Accepted);
    }

    #[test]
    fn root_entry_bounds_shifted_words() {
        // arc −1 has a single child here, so `−−` cannot follow `∞+`
        let w = grow(&Params::new(rat(29, 20), rat(1, 20)).unwrap(), 5).unwrap();
        let (k, t) = (kneading_set(&w, 6).unwrap(), folding_tree(&w));
        let vk = admissible_right_tail(&k, &word("--"));
        assert_eq!(
            vk,
            Verdict::Rejected {
                position: 1,
                entry: Some(0)
            }
        );
        assert_eq!(
            admissible_window(&t, &word("--"), CheckMode::RightTail),
            Verdict::Rejected {
                position: 1,
                entry: None
            }
        );
    }

    #[test]
    fn equality_with_a_tail_is_allowed() {
        let (k, _) = setup(6);
        let mut p = word("-");
        let tail = &k.entry(0).unwrap().tail;
        p.extend_from(&tail[1..tail.len() - 1]);
        assert_eq!(admissible_right_tail(&k, &p), Verdict::Accepted);
    }

    #[test]
    fn tree_route_examples() {
        let (_, t) = setup(4);
        assert_eq!(
            admissible_window(&t, &word("+++"), CheckMode::Window),
            Verdict::Accepted
        );
        assert_eq!(
            admissible_window(&t, &word("-++-"), CheckMode::RightTail),
            Verdict::Rejected {
                position: 3,
                entry: None
            }
        );
        assert_eq!(
            admissible_window(&t, &word("-+-"), CheckMode::RightTail),
            Verdict::Accepted
        );
        assert_eq!(
            admissible_window(&t, &word("-++++"), CheckMode::RightTail),
            Verdict::Inconclusive
        );
        let (_, t5) = setup(5);
        assert_eq!(
            admissible_window(&t5, &word("-++++"), CheckMode::RightTail),
            Verdict::Accepted
        );
    }

    #[test]
    fn window_mode_never_rejects() {
        let (_, t) = setup(3);
        assert_eq!(
            admissible_window(&t, &word("----------"), CheckMode::Window),
            Verdict::Inconclusive
        );
    }
}
