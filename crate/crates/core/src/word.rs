//! Itinerary symbols and finite words.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

/// Half-plane of a point or arc: `−` for x < 0, `+` for x > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// Sign of a nonzero exact sign value; `None` for zero.
    pub fn from_i8(s: i8) -> Option<Sign> {
        match s.cmp(&0) {
            std::cmp::Ordering::Less => Some(Sign::Minus),
            std::cmp::Ordering::Greater => Some(Sign::Plus),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    /// Typographic form: U+2212 for minus.
    pub fn unicode(self) -> char {
        match self {
            Sign::Minus => '\u{2212}',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

/// Itinerary symbol. `Both` marks an orbit point exactly on the y-axis.
///
/// The derived order is `− < ± < +`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Minus,
    Both,
    Plus,
}

impl Symbol {
    pub fn from_exact_sign(s: i8) -> Symbol {
        match s.cmp(&0) {
            std::cmp::Ordering::Less => Symbol::Minus,
            std::cmp::Ordering::Equal => Symbol::Both,
            std::cmp::Ordering::Greater => Symbol::Plus,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            Symbol::Minus => Some(Sign::Minus),
            Symbol::Both => None,
            Symbol::Plus => Some(Sign::Plus),
        }
    }

    /// Whether a point with this symbol may be coded by `s`.
    pub fn admits(self, s: Sign) -> bool {
        self == Symbol::Both || self == Symbol::from(s)
    }

    fn from_char(c: char) -> Option<Symbol> {
        match c {
            '-' | '\u{2212}' => Some(Symbol::Minus),
            '+' => Some(Symbol::Plus),
            '±' => Some(Symbol::Both),
            _ => None,
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Symbol::Minus => "-",
            Symbol::Both => "±",
            Symbol::Plus => "+",
        }
    }
}

impl From<Sign> for Symbol {
    fn from(s: Sign) -> Symbol {
        match s {
            Sign::Minus => Symbol::Minus,
            Sign::Plus => Symbol::Plus,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid symbol `{found}` at position {position} in `{word}`")]
pub struct WordParseError {
    pub word: String,
    pub position: usize,
    pub found: char,
}

/// A finite word over {−, ±, +}.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolWord(Vec<Symbol>);

impl SymbolWord {
    pub fn new() -> Self {
        SymbolWord(Vec::new())
    }

    pub fn from_signs<I: IntoIterator<Item = Sign>>(signs: I) -> Self {
        SymbolWord(signs.into_iter().map(Symbol::from).collect())
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn push_sign(&mut self, s: Sign) {
        self.0.push(Symbol::from(s));
    }

    /// `self` followed by one more sign.
    pub fn extended(&self, s: Sign) -> SymbolWord {
        let mut w = self.clone();
        w.push_sign(s);
        w
    }

    pub fn extend_from(&mut self, other: &[Symbol]) {
        self.0.extend_from_slice(other);
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// True when the word contains no `±`.
    pub fn is_strict(&self) -> bool {
        !self.0.contains(&Symbol::Both)
    }

    /// Number of `+` symbols.
    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Symbol::Plus).count()
    }

    /// The shift σ^k (drops the first `k` symbols).
    pub fn shifted(&self, k: usize) -> SymbolWord {
        SymbolWord(self.0.get(k..).unwrap_or(&[]).to_vec())
    }

    pub fn prefix(&self, len: usize) -> SymbolWord {
        SymbolWord(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &SymbolWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Rendering with U+2212 minus signs.
    pub fn to_unicode(&self) -> String {
        self.0
            .iter()
            .map(|s| match s {
                Symbol::Minus => '\u{2212}',
                Symbol::Both => '±',
                Symbol::Plus => '+',
            })
            .collect()
    }
}

impl Deref for SymbolWord {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for SymbolWord {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        SymbolWord(iter.into_iter().collect())
    }
}

impl From<Vec<Symbol>> for SymbolWord {
    fn from(v: Vec<Symbol>) -> Self {
        SymbolWord(v)
    }
}

impl FromStr for SymbolWord {
    type Err = WordParseError;

    /// Accepts `-` (or U+2212), `+` and `±`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Symbol::from_char(c).ok_or_else(|| WordParseError {
                    word: s.to_string(),
                    position: i,
                    found: c,
                })
            })
            .collect()
    }
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(s.ascii())?;
        }
        Ok(())
    }
}

/// Parses a word, panicking on bad input. Test and example helper.
pub fn word(s: &str) -> SymbolWord {
    s.parse().expect("valid symbol word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_order() {
        assert!(Symbol::Minus < Symbol::Both && Symbol::Both < Symbol::Plus);
    }

    #[test]
    fn parse_and_render() {
        let w: SymbolWord = "-+±".parse().unwrap();
        assert_eq!(w.symbols(), &[Symbol::Minus, Symbol::Plus, Symbol::Both]);
        assert_eq!(w.to_string(), "-+±");
        assert_eq!(word("\u{2212}+").to_string(), "-+");
        assert_eq!(word("-+").to_unicode(), "\u{2212}+");
        let err = "-x+".parse::<SymbolWord>().unwrap_err();
        assert_eq!((err.position, err.found), (1, 'x'));
    }

    #[test]
    fn shifts_and_prefixes() {
        let w = word("-++-");
        assert_eq!(w.shifted(2), word("+-"));
        assert_eq!(w.shifted(9), SymbolWord::new());
        assert_eq!(w.prefix(2), word("-+"));
        assert!(word("-+").is_prefix_of(&w));
        assert_eq!(w.plus_count(), 2);
    }
}
