//! Parity-lexicographical orders on finite and left-anchored words.

use std::cmp::Ordering;

use crate::word::{Symbol, SymbolWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlexOrdering {
    Less,
    Equal,
    Greater,
    /// One word is a strict prefix of the other.
    IncomparablePrefix,
}

impl PlexOrdering {
    pub fn is_at_most_equal(self) -> bool {
        matches!(self, PlexOrdering::Less | PlexOrdering::Equal)
    }

    pub fn reversed(self) -> PlexOrdering {
        match self {
            PlexOrdering::Less => PlexOrdering::Greater,
            PlexOrdering::Greater => PlexOrdering::Less,
            other => other,
        }
    }
}

/// First index where the words differ, with the plex verdict there.
fn first_difference(u: &[Symbol], v: &[Symbol]) -> Option<(usize, Ordering)> {
    let mut plus_parity = false;
    for (k, (a, b)) in u.iter().zip(v).enumerate() {
        if a != b {
            let direct = a.cmp(b);
            return Some((k, if plus_parity { direct.reverse() } else { direct }));
        }
        if *a == Symbol::Plus {
            plus_parity = !plus_parity;
        }
    }
    None
}

/// Parity-lexicographical comparison with `− < ± < +`.
pub fn plex_compare(u: &[Symbol], v: &[Symbol]) -> PlexOrdering {
    match first_difference(u, v) {
        Some((_, Ordering::Less)) => PlexOrdering::Less,
        Some((_, Ordering::Greater)) => PlexOrdering::Greater,
        Some((_, Ordering::Equal)) => unreachable!("symbols differ"),
        None if u.len() == v.len() => PlexOrdering::Equal,
        None => PlexOrdering::IncomparablePrefix,
    }
}

/// Like [`plex_compare`], also returning the index of the first difference.
pub fn plex_compare_at(u: &[Symbol], v: &[Symbol]) -> (PlexOrdering, Option<usize>) {
    match first_difference(u, v) {
        Some((k, o)) => (
            if o == Ordering::Less {
                PlexOrdering::Less
            } else {
                PlexOrdering::Greater
            },
            Some(k),
        ),
        None => (plex_compare(u, v), None),
    }
}

/// A finite window `p_start … p_{start+len−1}` of a bi-infinite sequence
/// whose symbols before `start` are all `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailWord {
    pub start: i64,
    pub symbols: SymbolWord,
}

impl TailWord {
    pub fn new(start: i64, symbols: SymbolWord) -> Self {
        TailWord { start, symbols }
    }

    /// One past the last known index.
    pub fn end(&self) -> i64 {
        self.start + self.symbols.len() as i64
    }

    /// Smallest valid `n ≥ 1` with every symbol at index `≤ −n` equal to `+`.
    pub fn anchor(&self) -> i64 {
        let first = self
            .symbols
            .iter()
            .position(|&s| s != Symbol::Plus)
            .map(|k| self.start + k as i64);
        match first {
            Some(m) => (1 - m).max(1),
            None => 1,
        }
    }

    /// Known symbols from index `from` on, padding with `+` before `start`.
    pub fn from_index(&self, from: i64) -> Vec<Symbol> {
        (from..self.end())
            .map(|i| {
                if i < self.start {
                    Symbol::Plus
                } else {
                    self.symbols[(i - self.start) as usize]
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GplexOrdering {
    Less,
    Equal,
    Greater,
    /// The windows end before a difference is found.
    Inconclusive,
}

/// Generalized parity-lexicographical order on left-anchored sequences.
pub fn gplex_compare(p: &TailWord, q: &TailWord) -> GplexOrdering {
    let n = p.anchor().max(q.anchor());
    let pr = p.from_index(-n + 1);
    let qr = q.from_index(-n + 1);
    let direct = plex_compare(&pr, &qr);
    let o = if n % 2 == 0 { direct.reversed() } else { direct };
    match o {
        PlexOrdering::Less => GplexOrdering::Less,
        PlexOrdering::Greater => GplexOrdering::Greater,
        PlexOrdering::Equal => GplexOrdering::Equal,
        PlexOrdering::IncomparablePrefix => GplexOrdering::Inconclusive,
    }
}
