use std::collections::HashMap;

use crate::manifold::{Label, ManifoldWindow};
use crate::symbolic::{KneadingSet, SymbolicError};
use crate::word::{Sign, SymbolWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    G,
    T,
}

impl PointKind {
    pub fn letter(self) -> char {
        match self {
            PointKind::G => 'G',
            PointKind::T => 'T',
        }
    }

    pub fn of(label: &Label) -> PointKind {
        if label.is_gluing() {
            PointKind::G
        } else {
            PointKind::T
        }
    }
}

/// Kinds of the basic points `E_{e_min} … E_{e_max}` in ⊴ order, the sign of
/// every gap between them, and the action of `L` on basic points. The fixed
/// point `X` sits inside gap 0, between `E_0 = G_0` and `E_1 = T_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingPattern {
    e_min: i64,
    kinds: Vec<PointKind>,
    arc_signs: Vec<Sign>,
    arrows: Vec<Option<i64>>,
}

impl FoldingPattern {
    pub fn new(
        e_min: i64,
        kinds: Vec<PointKind>,
        arc_signs: Vec<Sign>,
        arrows: Vec<Option<i64>>,
    ) -> Result<Self, SymbolicError> {
        let bad = |d: String| Err(SymbolicError::InconsistentArrows(d));
        if kinds.len() < 2 || arc_signs.len() + 1 != kinds.len() || arrows.len() != kinds.len() {
            return bad("pattern sizes do not match".into());
        }
        let p = FoldingPattern {
            e_min,
            kinds,
            arc_signs,
            arrows,
        };
        if p.kind(0) != Some(PointKind::G) || p.kind(1) != Some(PointKind::T) {
            return bad("E_0 must be G and E_1 must be T".into());
        }
        if p.arc_sign(0) != Some(Sign::Plus) {
            return bad("the gap holding X must be +".into());
        }
        for e in p.e_min + 1..p.e_max() {
            let (left, right) = (p.arc_sign(e - 1).unwrap(), p.arc_sign(e).unwrap());
            let flips = left != right;
            if flips != (p.kind(e) == Some(PointKind::G)) {
                return bad(format!("gap signs around E_{e} contradict its kind"));
            }
        }
        for (e, target) in p.arrow_pairs() {
            if target < p.e_min || target > p.e_max() {
                return bad(format!("arrow from E_{e} leaves the pattern"));
            }
        }
        Ok(p)
    }

    pub fn e_min(&self) -> i64 {
        self.e_min
    }

    pub fn e_max(&self) -> i64 {
        self.e_min + self.kinds.len() as i64 - 1
    }

    pub fn kinds(&self) -> &[PointKind] {
        &self.kinds
    }

    pub fn arc_signs(&self) -> &[Sign] {
        &self.arc_signs
    }

    pub fn kind(&self, e: i64) -> Option<PointKind> {
        usize::try_from(e - self.e_min)
            .ok()
            .and_then(|k| self.kinds.get(k).copied())
    }

    pub fn arc_sign(&self, i: i64) -> Option<Sign> {
        usize::try_from(i - self.e_min)
            .ok()
            .and_then(|k| self.arc_signs.get(k).copied())
    }

    pub fn arrow(&self, e: i64) -> Option<i64> {
        usize::try_from(e - self.e_min)
            .ok()
            .and_then(|k| self.arrows.get(k).copied().flatten())
    }

    /// Defined arrows as `(from, to)` e-index pairs in ⊴ order of `from`.
    pub fn arrow_pairs(&self) -> Vec<(i64, i64)> {
        self.arrows
            .iter()
            .enumerate()
            .filter_map(|(k, a)| a.map(|t| (self.e_min + k as i64, t)))
            .collect()
    }

    /// Symbols in ⊴ order with `X` inserted, e.g. `TGXT`.
    pub fn symbols(&self) -> String {
        let mut out = String::new();
        for (k, kind) in self.kinds.iter().enumerate() {
            out.push(kind.letter());
            if self.e_min + k as i64 == 0 {
                out.push('X');
            }
        }
        out
    }

    /// Symbols interleaved with gap signs, with the outer sign at each end.
    pub fn signed(&self, unicode: bool) -> String {
        let ch = |s: Sign| if unicode { s.unicode() } else { s.ascii() };
        let mut out = String::new();
        for (k, kind) in self.kinds.iter().enumerate() {
            out.push(ch(self.arc_signs[k.saturating_sub(1)]));
            out.push(kind.letter());
            if self.e_min + k as i64 == 0 {
                out.push(ch(self.arc_signs[(-self.e_min) as usize]));
                out.push('X');
            }
        }
        out.push(ch(*self.arc_signs.last().expect("at least one gap")));
        out
    }

    /// Arcs covered by the image of arc `i`, when both endpoints are mapped.
    pub fn children(&self, i: i64) -> Option<Vec<i64>> {
        let (a, b) = (self.arrow(i)?, self.arrow(i + 1)?);
        Some((a.min(b)..a.max(b)).collect())
    }

    /// Arc-codes recovered from the arrows and gap signs, indexed from
    /// `e_min`. Arcs not reached from arc 0 get `None`.
    pub fn arc_codes(&self) -> Vec<Option<SymbolWord>> {
        let n = self.arc_signs.len();
        let mut codes: Vec<Option<SymbolWord>> = vec![None; n];
        let idx = |i: i64| (i - self.e_min) as usize;
        codes[idx(0)] = Some(SymbolWord::new());
        let mut queue = std::collections::VecDeque::from([0i64]);
        while let Some(p) = queue.pop_front() {
            let Some(children) = self.children(p) else { continue };
            let code = codes[idx(p)].clone().expect("queued arcs have codes");
            for c in children {
                if c == 0 || codes[idx(c)].is_some() {
                    continue;
                }
                codes[idx(c)] = Some(code.extended(self.arc_sign(c).expect("in range")));
                queue.push_back(c);
            }
        }
        codes
    }

    /// The arc whose image contains arc `i` (arc 0 for arc 0).
    pub fn parent(&self, i: i64) -> Option<i64> {
        if i == 0 {
            return Some(0);
        }
        (self.e_min..self.e_max()).find(|&p| self.children(p).is_some_and(|c| c.contains(&i)))
    }
}

pub fn folding_pattern(window: &ManifoldWindow) -> FoldingPattern {
    let kinds = window.points().iter().map(|p| PointKind::of(&p.label)).collect();
    let arc_signs = window.arcs().iter().map(|a| a.sign).collect();
    let arrows = window.points().iter().map(|p| window.image_of(p.e_index)).collect();
    FoldingPattern::new(window.e_min(), kinds, arc_signs, arrows).expect("a grown window yields a consistent pattern")
}

struct Slot {
    label: Label,
    sign: Option<Sign>,
    image: Option<Label>,
}

fn turning_sign(kset: &KneadingSet, label: Label, step: usize) -> Result<Sign, SymbolicError> {
    let Label::Turning { n, j } = label else {
        unreachable!("images are turning orbit points")
    };
    let entry = kset.entry(n).ok_or(SymbolicError::InsufficientKneading {
        step,
        n,
        detail: "is missing".into(),
    })?;
    let symbol = entry
        .tail
        .get(j as usize - 1)
        .ok_or_else(|| SymbolicError::InsufficientKneading {
            step,
            n,
            detail: format!("has a tail of length {} but {} symbols are needed", entry.tail.len(), j),
        })?;
    symbol.sign().ok_or_else(|| SymbolicError::InsufficientKneading {
        step,
        n,
        detail: "has ± inside its tail".into(),
    })
}

/// Rebuilds the folding pattern of the depth-`depth` window from kneading
/// data alone, starting from `T, G, X, T` and growing one image at a time.
pub fn pattern_from_kneading(kset: &KneadingSet, depth: usize) -> Result<FoldingPattern, SymbolicError> {
    let t = |n, j| Label::Turning { n, j };
    let mut slots = vec![
        Slot {
            label: Label::Gluing(0),
            sign: None,
            image: None,
        },
        Slot {
            label: t(0, 1),
            sign: Some(turning_sign(kset, t(0, 1), 0)?),
            image: None,
        },
    ];
    if slots[1].sign != Some(Sign::Plus) {
        return Err(SymbolicError::Reconstruction {
            step: 0,
            detail: "T_0 must lie in the right half-plane".into(),
        });
    }
    if depth >= 1 {
        let s2 = turning_sign(kset, t(0, 2), 1)?;
        if s2 != Sign::Minus {
            return Err(SymbolicError::Reconstruction {
                step: 1,
                detail: "T_0^2 must lie in the left half-plane".into(),
            });
        }
        slots[0].image = Some(t(0, 1));
        slots[1].image = Some(t(0, 2));
        slots.insert(
            0,
            Slot {
                label: t(0, 2),
                sign: Some(s2),
                image: None,
            },
        );
    }
    let (mut g_low, mut g_high) = (0i64, 0i64);
    for step in 2..=depth {
        let fail = |detail: &str| SymbolicError::Reconstruction {
            step,
            detail: detail.to_string(),
        };
        let open: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].image.is_none()).collect();
        let (first, last) = (open[0], *open.last().expect("some point is unmapped"));
        if last - first + 1 != open.len() || (first != 0 && last != slots.len() - 1) || open.len() == slots.len() {
            return Err(fail("unmapped points do not form an end block"));
        }
        let at_left = first == 0;
        let (neighbour, extreme) = if at_left {
            (last + 1, slots.len() - 1)
        } else {
            (first - 1, 0)
        };
        if slots[neighbour].image != Some(slots[extreme].label) {
            return Err(fail("the mapped neighbour does not reach the far end"));
        }
        // Outward order: images of the block, nearest to the neighbour first.
        let block: Vec<usize> = if at_left {
            (first..=last).rev().collect()
        } else {
            (first..=last).collect()
        };
        let mut outward: Vec<Slot> = Vec::new();
        let mut prev_sign = slots[extreme].sign;
        for &i in &block {
            let label = slots[i].label.image();
            let sign = turning_sign(kset, label, step)?;
            slots[i].image = Some(label);
            if prev_sign.is_some_and(|s| s != sign) {
                let k = if at_left {
                    g_high += 1;
                    g_high
                } else {
                    g_low -= 1;
                    g_low
                };
                outward.push(Slot {
                    label: Label::Gluing(k),
                    sign: None,
                    image: None,
                });
            }
            outward.push(Slot {
                label,
                sign: Some(sign),
                image: None,
            });
            prev_sign = Some(sign);
        }
        if at_left {
            slots.extend(outward);
        } else {
            outward.reverse();
            outward.extend(slots);
            slots = outward;
        }
    }

    let g0 = slots
        .iter()
        .position(|s| s.label == Label::Gluing(0))
        .expect("G_0 is kept");
    let e_min = -(g0 as i64);
    let position: HashMap<Label, i64> = slots
        .iter()
        .enumerate()
        .map(|(k, s)| (s.label, e_min + k as i64))
        .collect();
    let kinds = slots.iter().map(|s| PointKind::of(&s.label)).collect();
    let arc_signs = slots
        .windows(2)
        .map(|w| w[0].sign.or(w[1].sign).expect("every gap has a turning end"))
        .collect();
    let arrows = slots.iter().map(|s| s.image.map(|l| position[&l])).collect();
    let pattern = FoldingPattern::new(e_min, kinds, arc_signs, arrows)?;

    let codes = pattern.arc_codes();
    for (k, s) in slots.iter().enumerate() {
        let Label::Gluing(g) = s.label else { continue };
        let Some(entry) = kset.entry(-g) else { continue };
        let e = e_min + k as i64;
        let expected = pattern
            .parent(e)
            .and_then(|p| codes[(p - e_min) as usize].clone())
            .ok_or_else(|| SymbolicError::Reconstruction {
                step: depth,
                detail: format!("gluing point E_{e} has no coded parent"),
            })?;
        if expected != entry.alpha {
            return Err(SymbolicError::AlphaMismatch {
                n: -g,
                expected: expected.to_string(),
                found: entry.alpha.to_string(),
            });
        }
    }
    Ok(pattern)
}
