//! Exact symbolic dynamics of the Lozi map `L(x, y) = (1 + y − a|x|, b·x)`.

pub mod exactnum;
pub mod geometry;
pub mod manifold;
pub mod oracle;
pub mod symbolic;
pub mod word;
