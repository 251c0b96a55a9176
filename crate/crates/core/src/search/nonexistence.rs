//! Two independent certificates that `K_7`, `K_9` and `K_10` admit no
//! hexagon/prism decomposition: a counting argument over the block-count and
//! incidence solutions, and an exhaustive enumeration.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{hexagon_decomposable, search_unsplit, SearchConfig, SearchResult, SearchStats};
use crate::feasibility::{block_count_solutions, degree_solutions};
use crate::graph::{all_blocks_on, pair_count, Block, Edge, Host, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NonexistenceError {
    #[error("nonexistence certificates cover n in {{7, 9, 10}}, not {0}")]
    UnsupportedOrder(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCountVerdict {
    pub hexagons: u64,
    pub prisms: u64,
    pub ruled_out: bool,
    pub argument: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyticBranch {
    pub degree_solutions: Vec<(u64, u64)>,
    pub cases: Vec<BlockCountVerdict>,
    pub rules_out: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationCase {
    pub hexagons: u64,
    pub prisms: u64,
    /// Edge-disjoint prism sets tried (one prism through vertex 0).
    pub prism_sets: u64,
    /// Prism sets whose remainder splits into the required hexagons.
    pub completions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerativeBranch {
    pub method: String,
    pub cases: Vec<EnumerationCase>,
    pub search: Option<SearchStats>,
    pub rules_out: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceReport {
    pub n: u32,
    pub edge_count: u64,
    pub analytic: AnalyticBranch,
    pub enumerative: EnumerativeBranch,
    /// Both branches rule out every decomposition.
    pub nonexistent: bool,
}

pub fn confirm_nonexistence(n: u32) -> Result<NonexistenceReport, NonexistenceError> {
    if !matches!(n, 7 | 9 | 10) {
        return Err(NonexistenceError::UnsupportedOrder(n));
    }
    let analytic = analytic_branch(n);
    let enumerative = if n == 7 {
        full_search(n)
    } else {
        prism_set_enumeration(n)
    };
    Ok(NonexistenceReport {
        n,
        edge_count: pair_count(n as u64),
        nonexistent: analytic.rules_out && enumerative.rules_out,
        analytic,
        enumerative,
    })
}

/// Fewest edges any `t` vertices of a prism induce, by brute force over subsets.
fn min_induced_prism_edges(t: usize) -> usize {
    let prism = Block::Prism([0, 1, 2], [3, 4, 5]).edges_unchecked();
    (0u32..64)
        .filter(|m| m.count_ones() as usize == t)
        .map(|m| {
            prism
                .iter()
                .filter(|e| m & (1 << e.lo()) != 0 && m & (1 << e.hi()) != 0)
                .count()
        })
        .min()
        .unwrap_or(0)
}

/// Counting argument for one `(x, y)`; vertex `v` lies in `q_v` prisms with
/// `(p_v, q_v)` a solution of `2p + 3q = n - 1`.
fn judge(n: u64, y: u64, prism_incidences: &[u64]) -> (bool, String) {
    let allowed = |q: u64| prism_incidences.contains(&q);
    match y {
        1 => {
            if !allowed(1) {
                return (
                    true,
                    format!(
                        "each vertex of the single prism needs 2p + 3 = {}, which has no solution",
                        n - 1
                    ),
                );
            }
            if n > 6 && !allowed(0) {
                return (
                    true,
                    format!(
                        "the {} vertices outside the single prism keep odd degree {} for hexagons",
                        n - 6,
                        n - 1
                    ),
                );
            }
        }
        2 if !allowed(1) => {
            return (
                true,
                "no vertex may lie in exactly one prism, so both prisms share their 6 vertices; \
                 18 prism edges do not fit in the 15 edges of K_6"
                    .into(),
            );
        }
        3 if (0..=3).filter(|&q| allowed(q)).all(|q| q == 1 || q == 3) => {
            // Sum of incidences is 6y = 18 = (n - t) + 3t.
            let t = (18 - n as i64) / 2;
            if t >= 0 && (18 - n as i64) % 2 == 0 {
                let t = t as usize;
                let per_prism = min_induced_prism_edges(t);
                let room = t * t.saturating_sub(1) / 2;
                if 3 * per_prism > room {
                    return (
                        true,
                        format!(
                            "every vertex lies in 1 or 3 prisms, so {t} vertices lie in all three; \
                             each prism induces at least {per_prism} edges on them, and 3*{per_prism} \
                             exceeds the {room} edges of K_{t}"
                        ),
                    );
                }
            }
        }
        _ => {}
    }
    (false, "not excluded by counting".into())
}

fn analytic_branch(n: u32) -> AnalyticBranch {
    let edges = pair_count(n as u64);
    let degrees = degree_solutions(n as u64 - 1);
    let prism_incidences: Vec<u64> = degrees.iter().map(|&(_, q)| q).collect();
    let cases: Vec<BlockCountVerdict> = block_count_solutions(edges, true)
        .into_iter()
        .map(|(x, y)| {
            let (ruled_out, argument) = judge(n as u64, y, &prism_incidences);
            BlockCountVerdict {
                hexagons: x,
                prisms: y,
                ruled_out,
                argument,
            }
        })
        .collect();
    AnalyticBranch {
        rules_out: cases.iter().all(|c| c.ruled_out),
        degree_solutions: degrees,
        cases,
    }
}

fn full_search(n: u32) -> EnumerativeBranch {
    let out = search_unsplit(&Host::Complete(n), &SearchConfig::default())
        .expect("small complete hosts need no budget");
    EnumerativeBranch {
        method: format!("exhaustive block search on K_{n}"),
        cases: Vec::new(),
        search: Some(out.stats),
        rules_out: out.result == SearchResult::ExhaustedNone,
    }
}

struct PrismTable {
    masks: Vec<u64>,
    through_zero: Vec<bool>,
    stars: Vec<u64>,
    n: usize,
}

impl PrismTable {
    fn new(n: u32) -> Self {
        debug_assert!(pair_count(n as u64) <= 64);
        let mut masks = Vec::new();
        let mut through_zero = Vec::new();
        for six in six_subsets(n) {
            for b in all_blocks_on(six) {
                if let Block::Prism(..) = b {
                    masks.push(
                        b.edges_unchecked()
                            .iter()
                            .fold(0u64, |m, e| m | 1 << e.index()),
                    );
                    through_zero.push(six[0] == 0);
                }
            }
        }
        let stars = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| w != v)
                    .fold(0u64, |m, w| m | 1 << Edge::of(v, w).index())
            })
            .collect();
        PrismTable {
            masks,
            through_zero,
            stars,
            n: n as usize,
        }
    }

    fn adjacency(&self, edges: u64) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        let mut m = edges;
        while m != 0 {
            let e = Edge::from_index(m.trailing_zeros() as usize);
            m &= m - 1;
            adj[e.lo() as usize] |= 1 << e.hi();
            adj[e.hi() as usize] |= 1 << e.lo();
        }
        adj
    }

    fn completes(&self, remainder: u64, hexagons: u64) -> bool {
        if remainder.count_ones() as u64 != 6 * hexagons {
            return false;
        }
        if self
            .stars
            .iter()
            .any(|s| (remainder & s).count_ones() % 2 == 1)
        {
            return false;
        }
        hexagon_decomposable(&self.adjacency(remainder), hexagons)
    }
}

fn six_subsets(n: u32) -> Vec<[Vertex; 6]> {
    let mut out = Vec::new();
    let mut idx = [0u32, 1, 2, 3, 4, 5];
    loop {
        out.push(idx);
        let Some(i) = (0..6).rev().find(|&i| idx[i] < n - 6 + i as u32) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..6 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every set of `y` edge-disjoint prisms, listed once: the first is the
/// lowest-indexed member through vertex 0 (some member must contain it up to
/// relabeling), the rest increase in index.
fn count_prism_sets(table: &PrismTable, x: u64, y: u64) -> (u64, u64) {
    let full = if table.n * (table.n - 1) / 2 == 64 {
        u64::MAX
    } else {
        (1u64 << (table.n * (table.n - 1) / 2)) - 1
    };
    let firsts: Vec<usize> = (0..table.masks.len())
        .filter(|&i| table.through_zero[i])
        .collect();
    firsts
        .par_iter()
        .map(|&a| {
            let used = table.masks[a];
            let pool: Vec<u64> = (0..table.masks.len())
                .filter(|&j| j != a && table.masks[j] & used == 0)
                .filter(|&j| !table.through_zero[j] || j > a)
                .map(|j| table.masks[j])
                .collect();
            let mut tally = (0u64, 0u64);
            extend(table, &pool, 0, used, y - 1, x, full, &mut tally);
            tally
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    table: &PrismTable,
    pool: &[u64],
    start: usize,
    used: u64,
    left: u64,
    hexagons: u64,
    full: u64,
    tally: &mut (u64, u64),
) {
    if left == 0 {
        tally.0 += 1;
        if table.completes(full & !used, hexagons) {
            tally.1 += 1;
        }
        return;
    }
    for i in start..pool.len() {
        if pool[i] & used == 0 {
            extend(
                table,
                pool,
                i + 1,
                used | pool[i],
                left - 1,
                hexagons,
                full,
                tally,
            );
        }
    }
}

fn prism_set_enumeration(n: u32) -> EnumerativeBranch {
    let table = PrismTable::new(n);
    let cases: Vec<EnumerationCase> = block_count_solutions(pair_count(n as u64), true)
        .into_iter()
        .map(|(x, y)| {
            let (prism_sets, completions) = count_prism_sets(&table, x, y);
            EnumerationCase {
                hexagons: x,
                prisms: y,
                prism_sets,
                completions,
            }
        })
        .collect();
    EnumerativeBranch {
        method: format!(
            "all edge-disjoint prism sets on K_{n}, each remainder tested for a hexagon decomposition"
        ),
        rules_out: cases.iter().all(|c| c.completions == 0),
        cases,
        search: None,
    }
}

impl fmt::Display for NonexistenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "K_{} ({} edges): {}",
            self.n,
            self.edge_count,
            if self.nonexistent {
                "no decomposition exists"
            } else {
                "NOT certified"
            }
        )?;
        writeln!(
            f,
            "counting argument (degree solutions {:?}):",
            self.analytic.degree_solutions
        )?;
        for c in &self.analytic.cases {
            writeln!(
                f,
                "  (x,y) = ({},{}): {} - {}",
                c.hexagons,
                c.prisms,
                if c.ruled_out { "impossible" } else { "open" },
                c.argument
            )?;
        }
        writeln!(f, "enumeration: {}", self.enumerative.method)?;
        for c in &self.enumerative.cases {
            writeln!(
                f,
                "  (x,y) = ({},{}): {} prism sets, {} completions",
                c.hexagons, c.prisms, c.prism_sets, c.completions
            )?;
        }
        if let Some(s) = &self.enumerative.search {
            writeln!(f, "  search exhausted after {} nodes", s.nodes)?;
        }
        Ok(())
    }
}
