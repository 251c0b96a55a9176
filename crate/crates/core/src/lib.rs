//! Hexagon/prism multidesigns of complete graphs.
//!
//! A hexagon is the 6-cycle `C6`; a prism is its complement, two triangles
//! joined by a perfect matching. Together they partition `K6`. This crate
//! builds and checks designs on `K_n` that use both shapes:
//!
//! * decompositions, which exist exactly for `n ≡ 0, 1 (mod 3)`, `n >= 6`,
//!   apart from `n ∈ {7, 9, 10}`;
//! * maximum packings, whose leave has 1 edge for `n ≡ 2 (mod 3)`, `n >= 8`,
//!   and 6, 3, 3 edges at `n = 7, 9, 10`;
//! * minimum coverings, whose padding has 2 edges for `n ≡ 2 (mod 3)`,
//!   `n >= 8`, and 6, 3, 3 edges at `n = 7, 9, 10`.
//!
//! [`construct`] assembles designs recursively from joins of small cliques,
//! [`verify`] checks any design independently, and [`search`] certifies the
//! small cases by exhaustive enumeration.

pub mod bipartite;
pub mod catalog;
pub mod cli;
pub mod construct;
pub mod feasibility;
pub mod format;
pub mod graph;
pub mod search;
pub mod verify;

pub use feasibility::{classify, FeasibilityReport};
pub use graph::{Block, BlockKind, Design, DesignKind, Edge, Host, Vertex};
pub use verify::{verify_design, VerificationReport};
