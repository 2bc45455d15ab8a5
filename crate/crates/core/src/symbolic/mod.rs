//! Symbol sequences, the kneading set, the folding pattern and the folding
//! tree, with conversions between them and two admissibility predicates.

mod admissibility;
pub mod io;
mod kneading;
mod order;
mod pattern;
mod tree;

pub use admissibility::{admissible_right_tail, admissible_window, CheckMode, Verdict};
pub use kneading::{kneading_set, KneadingEntry, KneadingSet};
pub use order::{gplex_compare, plex_compare, plex_compare_at, GplexOrdering, PlexOrdering, TailWord};
pub use pattern::{folding_pattern, pattern_from_kneading, FoldingPattern, PointKind};
pub use tree::{folding_tree, kneading_from_tree, tree_from_pattern, FoldingTree, TreeVertex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("kneading tail length must be at least 1")]
    EmptyTail,
    #[error("insufficient kneading data at step {step}: entry n={n} {detail}")]
    InsufficientKneading { step: usize, n: i64, detail: String },
    #[error("kneading entry n={n} has arc-code `{found}` but the reconstruction gives `{expected}`")]
    AlphaMismatch { n: i64, expected: String, found: String },
    #[error("reconstruction failed at step {step}: {detail}")]
    Reconstruction { step: usize, detail: String },
    #[error("arrow map is inconsistent: {0}")]
    InconsistentArrows(String),
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
}
