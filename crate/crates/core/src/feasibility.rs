//! Counting and degree arguments: which orders decompose, and how small a
//! leave or padding can be.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::pair_count;

/// Edges in a hexagon and in a prism.
pub const HEXAGON_EDGES: u64 = 6;
pub const PRISM_EDGES: u64 = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("order {0} is unsupported: a hexagon or prism needs at least 6 vertices")]
    UnsupportedOrder(u32),
}

/// All non-negative `(x, y)` with `6x + 9y = edge_count`, ascending in `y`.
/// With `require_both`, only solutions with `x, y >= 1`.
pub fn block_count_solutions(edge_count: u64, require_both: bool) -> Vec<(u64, u64)> {
    (0..=edge_count / PRISM_EDGES)
        .filter_map(|y| {
            let rest = edge_count - PRISM_EDGES * y;
            rest.is_multiple_of(HEXAGON_EDGES)
                .then_some((rest / HEXAGON_EDGES, y))
        })
        .filter(|&(x, y)| !require_both || (x >= 1 && y >= 1))
        .collect()
}

/// All non-negative `(p, q)` with `2p + 3q = degree`, ascending in `q`.
pub fn degree_solutions(degree: u64) -> Vec<(u64, u64)> {
    (0..=degree / 3)
        .filter_map(|q| {
            let rest = degree - 3 * q;
            rest.is_multiple_of(2).then_some((rest / 2, q))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub n: u32,
    pub edge_count: u64,
    pub decomposition_exists: bool,
    pub min_leave: u64,
    pub min_padding: u64,
    /// `(hexagons, prisms)` with both positive and `6x + 9y = n(n-1)/2`.
    pub block_solutions: Vec<(u64, u64)>,
    /// `(hexagon incidences, prism incidences)` per vertex with `2p + 3q = n - 1`.
    pub degree_solutions: Vec<(u64, u64)>,
    /// Why no decomposition exists, when it does not.
    pub reason: Option<String>,
    /// Extra remarks about the stated extremal values.
    pub annotations: Vec<String>,
}

/// Orders in `n ≡ 0, 1 (mod 3)` that still admit no decomposition.
pub const EXCEPTIONAL_ORDERS: [u32; 3] = [7, 9, 10];

pub fn classify(n: u32) -> Result<FeasibilityReport, FeasibilityError> {
    if n < 6 {
        return Err(FeasibilityError::UnsupportedOrder(n));
    }
    let edge_count = pair_count(n as u64);
    let divisible = n % 3 != 2;
    let exceptional = EXCEPTIONAL_ORDERS.contains(&n);
    let decomposition_exists = divisible && !exceptional;

    let (min_leave, min_padding) = match n {
        _ if decomposition_exists => (0, 0),
        7 => (6, 6),
        9 | 10 => (3, 3),
        _ => (1, 2),
    };

    let reason = if decomposition_exists {
        None
    } else if !divisible {
        Some(format!(
            "n = {n} ≡ 2 (mod 3), so n(n-1)/2 = {edge_count} is not a multiple of gcd(6,9) = 3"
        ))
    } else {
        Some(format!(
            "n = {n} satisfies n ≡ 0,1 (mod 3) but is one of the exceptional orders \
             n ∈ {{7,9,10}} where the counting and degree constraints cannot be met"
        ))
    };

    let mut annotations = Vec::new();
    if matches!(n, 9 | 10) {
        annotations.push(format!(
            "padding 3, not 2: n(n-1)/2 = {edge_count} ≡ 0 (mod 3) and block edge totals \
             are multiples of 3, so the padding must be ≡ 0 (mod 3)"
        ));
    }

    Ok(FeasibilityReport {
        n,
        edge_count,
        decomposition_exists,
        min_leave,
        min_padding,
        block_solutions: block_count_solutions(edge_count, true),
        degree_solutions: degree_solutions(n as u64 - 1),
        reason,
        annotations,
    })
}

fn smallest_offset(n: u32, step: impl Fn(u64, u64) -> Option<u64>) -> u64 {
    let edges = pair_count(n as u64);
    let skip_zero = classify(n).is_ok_and(|r| !r.decomposition_exists);
    (0..)
        .filter(|&k| !(skip_zero && k == 0))
        .find(|&k| step(edges, k).is_some_and(|m| !block_count_solutions(m, true).is_empty()))
        .expect("some offset within 6 always works")
}

/// Smallest leave size that the edge-count arithmetic allows.
pub fn leave_lower_bound(n: u32) -> u64 {
    smallest_offset(n, |edges, k| edges.checked_sub(k))
}

/// Smallest padding size that the edge-count arithmetic allows.
pub fn padding_lower_bound(n: u32) -> u64 {
    smallest_offset(n, |edges, k| Some(edges + k))
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |v: &[(u64, u64)]| {
            v.iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "order n = {} ({} edges)", self.n, self.edge_count)?;
        writeln!(f, "decomposition exists: {}", self.decomposition_exists)?;
        if let Some(reason) = &self.reason {
            writeln!(f, "reason: {reason}")?;
        }
        writeln!(f, "minimum leave: {}", self.min_leave)?;
        writeln!(f, "minimum padding: {}", self.min_padding)?;
        writeln!(f, "block solutions (x,y): {}", pairs(&self.block_solutions))?;
        writeln!(
            f,
            "degree solutions (p,q): {}",
            pairs(&self.degree_solutions)
        )?;
        for note in &self.annotations {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}
