use std::collections::VecDeque;

use crate::manifold::ManifoldWindow;
use crate::symbolic::{FoldingPattern, KneadingEntry, KneadingSet, PointKind, SymbolicError};
use crate::word::{Sign, SymbolWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub label: i64,
    pub level: usize,
    pub sign: Sign,
    /// Arcs covered by the image, in ⊴ order. Empty for leaves.
    pub children: Vec<i64>,
}

/// Markov graph of the basic arcs: `i → j` when `L(arc i) ⊇ arc j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingTree {
    e_min: i64,
    vertices: Vec<TreeVertex>,
    /// Kinds of the basic points `E_{e_min} …`, the gap markers.
    markers: Vec<PointKind>,
    /// Vertices of each level, left to right (nearest to `X` first).
    levels: Vec<Vec<i64>>,
}

impl FoldingTree {
    /// Builds the tree from per-arc signs and children, deriving levels.
    pub fn new(
        e_min: i64,
        signs: Vec<Sign>,
        children: Vec<Vec<i64>>,
        markers: Vec<PointKind>,
    ) -> Result<Self, SymbolicError> {
        let count = signs.len();
        if children.len() != count || markers.len() != count + 1 {
            return Err(SymbolicError::InconsistentArrows("tree sizes do not match".into()));
        }
        let in_range = |v: i64| v >= e_min && v < e_min + count as i64;
        if !in_range(0) {
            return Err(SymbolicError::InconsistentArrows("arc 0 is missing".into()));
        }
        let mut level: Vec<Option<usize>> = vec![None; count];
        level[(-e_min) as usize] = Some(0);
        let mut queue = VecDeque::from([0i64]);
        while let Some(v) = queue.pop_front() {
            let lv = level[(v - e_min) as usize].expect("queued vertices have levels");
            for &c in &children[(v - e_min) as usize] {
                if !in_range(c) {
                    return Err(SymbolicError::InconsistentArrows(format!(
                        "edge {v} -> {c} leaves the tree"
                    )));
                }
                if level[(c - e_min) as usize].is_none() {
                    level[(c - e_min) as usize] = Some(lv + 1);
                    queue.push_back(c);
                }
            }
        }
        let mut vertices = Vec::with_capacity(count);
        for (k, (sign, children)) in signs.into_iter().zip(children).enumerate() {
            let label = e_min + k as i64;
            let level = level[k]
                .ok_or_else(|| SymbolicError::InconsistentArrows(format!("vertex {label} is not reachable from 0")))?;
            vertices.push(TreeVertex {
                label,
                level,
                sign,
                children,
            });
        }
        let depth = vertices.iter().map(|v| v.level).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for v in &vertices {
            levels[v.level].push(v.label);
        }
        for row in &mut levels {
            row.sort_by_key(|v| v.abs());
        }
        Ok(FoldingTree {
            e_min,
            vertices,
            markers,
            levels,
        })
    }

    /// Deepest level present.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn e_min(&self) -> i64 {
        self.e_min
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn vertex(&self, label: i64) -> Option<&TreeVertex> {
        usize::try_from(label - self.e_min)
            .ok()
            .and_then(|k| self.vertices.get(k))
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    pub fn markers(&self) -> &[PointKind] {
        &self.markers
    }

    pub fn marker(&self, e: i64) -> Option<PointKind> {
        usize::try_from(e - self.e_min)
            .ok()
            .and_then(|k| self.markers.get(k).copied())
    }

    /// All edges `(from, to)` ordered by source label, then ⊴.
    pub fn edges(&self) -> Vec<(i64, i64)> {
        self.vertices
            .iter()
            .flat_map(|v| v.children.iter().map(move |&c| (v.label, c)))
            .collect()
    }

    /// The tree parent (the self-loop is ignored, so 0 has none).
    pub fn parent(&self, label: i64) -> Option<i64> {
        self.vertices
            .iter()
            .find(|v| v.label != label && v.children.contains(&label))
            .map(|v| v.label)
    }

    /// Endpoint of the arc nearer to `X`.
    pub fn near_marker(label: i64) -> i64 {
        if label >= 0 {
            label
        } else {
            label + 1
        }
    }

    /// Endpoint of the arc farther from `X`.
    pub fn far_marker(label: i64) -> i64 {
        if label >= 0 {
            label + 1
        } else {
            label
        }
    }

    /// Child farthest from `X`: its far end is the fold.
    fn outer_child(&self, label: i64) -> Option<i64> {
        self.vertex(label)?.children.iter().copied().max_by_key(|c| c.abs())
    }

    /// Sign word of the path from the root to each vertex.
    pub fn codes(&self) -> Vec<SymbolWord> {
        let mut codes = vec![SymbolWord::new(); self.vertices.len()];
        for row in self.levels.iter().skip(1) {
            for &v in row {
                let p = self.parent(v).expect("non-root vertices have parents");
                let code = codes[(p - self.e_min) as usize].extended(self.vertex(v).unwrap().sign);
                codes[(v - self.e_min) as usize] = code;
            }
        }
        codes
    }
}

pub fn folding_tree(window: &ManifoldWindow) -> FoldingTree {
    let markers = window.points().iter().map(|p| PointKind::of(&p.label)).collect();
    FoldingTree::new(
        window.e_min(),
        window.arcs().iter().map(|a| a.sign).collect(),
        window.arcs().iter().map(|a| a.children.clone()).collect(),
        markers,
    )
    .expect("a grown window yields a consistent tree")
}

/// Vertices are the gaps of the pattern; the children of gap `i` are the gaps
/// between the images of its two ends.
pub fn tree_from_pattern(pattern: &FoldingPattern) -> Result<FoldingTree, SymbolicError> {
    let children = (pattern.e_min()..pattern.e_max())
        .map(|i| pattern.children(i).unwrap_or_default())
        .collect();
    FoldingTree::new(
        pattern.e_min(),
        pattern.arc_signs().to_vec(),
        children,
        pattern.kinds().to_vec(),
    )
}

/// Reads one kneading entry per `G` marker. The turning point `L(G)` is the
/// far end of the outer child of the sibling next to `G` on the side of `X`,
/// and its tail is the sign sequence along the outermost descent from there.
pub fn kneading_from_tree(tree: &FoldingTree, m: usize) -> Result<KneadingSet, SymbolicError> {
    if m == 0 {
        return Err(SymbolicError::EmptyTail);
    }
    let codes = tree.codes();
    let code = |v: i64| codes[(v - tree.e_min()) as usize].clone();
    let gluing: Vec<i64> = tree
        .markers()
        .iter()
        .enumerate()
        .filter(|(_, k)| **k == PointKind::G)
        .map(|(i, _)| tree.e_min() + i as i64)
        .collect();
    let g0_rank = gluing
        .iter()
        .position(|&e| e == 0)
        .ok_or_else(|| SymbolicError::InconsistentArrows("E_0 is not a G marker".into()))? as i64;
    let mut entries = Vec::new();
    for (rank, &g) in gluing.iter().enumerate() {
        let n = g0_rank - rank as i64;
        let (alpha, start) = if g == 0 {
            (SymbolWord::new(), Some(0))
        } else {
            let near = if g > 0 { g - 1 } else { g };
            let parent = tree
                .parent(near)
                .ok_or_else(|| SymbolicError::InconsistentArrows(format!("G marker at E_{g} has no parent arc")))?;
            (code(parent), tree.outer_child(near))
        };
        let mut tail = SymbolWord::new();
        let mut v = start;
        while let Some(label) = v {
            if tail.len() == m {
                break;
            }
            tail.push_sign(tree.vertex(label).expect("children are vertices").sign);
            v = tree.outer_child(label);
        }
        entries.push(KneadingEntry {
            n,
            alpha,
            truncated: tail.len() < m,
            tail,
        });
    }
    Ok(KneadingSet::new(tree.depth(), m, entries))
}
