//! Hexagon decompositions of complete bipartite graphs `K_{m,n}`.
//!
//! They exist exactly when `m` and `n` are even, both at least 4, and `6 | mn`.
//! Under those conditions one side is a multiple of 6. That side is cut into
//! groups of 6, the other into parts of 4 and 6, and every group/part pair is
//! filled with a translate of the `K_{6,4}` or `K_{6,6}` seed.

use thiserror::Error;

use crate::catalog::{derived_base, place, DerivedKey};
use crate::graph::{Design, DesignKind, Host, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("no hexagon decomposition of K_{{{m},{n}}}: {clause}")]
    Infeasible { m: usize, n: usize, clause: String },
    #[error("cannot split a side of {0} vertices into parts of 4 and 6")]
    BadSide(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSpec {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

impl BipartiteSpec {
    pub fn new(
        left: impl IntoIterator<Item = Vertex>,
        right: impl IntoIterator<Item = Vertex>,
    ) -> Self {
        BipartiteSpec {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    fn check(&self) -> Result<(), BipartiteError> {
        let (m, n) = (self.left.len(), self.right.len());
        let fail = |clause: &str| {
            Err(BipartiteError::Infeasible {
                m,
                n,
                clause: clause.to_string(),
            })
        };
        if let Err(e) = self.host().validate() {
            return fail(&e.to_string());
        }
        if m % 2 != 0 || n % 2 != 0 {
            return fail("m and n must both be even");
        }
        if m < 4 || n < 4 {
            return fail("each side needs at least 4 vertices");
        }
        if (m * n) % 6 != 0 {
            return fail("6 must divide mn");
        }
        Ok(())
    }

    pub fn host(&self) -> Host {
        Host::CompleteBipartite {
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

/// Splits an even side of at least 4 vertices into 4s followed by 6s, using
/// as few 4s as possible.
pub fn side_partition(n: usize) -> Result<Vec<usize>, BipartiteError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(BipartiteError::BadSide(n));
    }
    let fours = match n % 6 {
        0 => 0,
        4 => 1,
        _ => 2,
    };
    let mut parts = vec![4; fours];
    parts.resize(fours + (n - 4 * fours) / 6, 6);
    Ok(parts)
}

pub fn c6_decompose_bipartite(spec: &BipartiteSpec) -> Result<Design, BipartiteError> {
    spec.check()?;
    let (axis, other) = if spec.left.len().is_multiple_of(6) {
        (&spec.left, &spec.right)
    } else {
        (&spec.right, &spec.left)
    };
    assert_eq!(
        axis.len() % 6,
        0,
        "one side of an admissible K_(m,n) is divisible by 6"
    );

    let mut blocks = Vec::with_capacity(spec.left.len() * spec.right.len() / 6);
    for group in axis.chunks(6) {
        let mut start = 0;
        for size in side_partition(other.len())? {
            let part = &other[start..start + size];
            start += size;
            let seed = derived_base(if size == 4 {
                DerivedKey::Bipartite6x4
            } else {
                DerivedKey::Bipartite6x6
            });
            let labels: Vec<Vertex> = group.iter().chain(part).copied().collect();
            blocks.extend(place(seed, &labels).blocks);
        }
    }
    Ok(Design::new(
        spec.host(),
        DesignKind::HexagonDecomposition,
        blocks,
    ))
}
