//! Exhaustive backtracking over block placements.
//!
//! Each node picks the lexicographically smallest undecided edge and branches
//! over every hexagon and prism through it that fits in the remaining graph,
//! prisms first, each kind in canonical order. A node is cut when some vertex's
//! remaining degree can no longer be written as `2p + 3q` within the block
//! budgets, or when the remaining edge count is not a reachable `6a + 9b`.
//! Running out of branches is therefore a complete enumeration.
//!
//! Public searches run once per admissible `(hexagons, prisms)` pair, which
//! turns the degree rule into a parity test on prism incidences and enables a
//! bound on how many vertices the remaining prisms can share.

mod nonexistence;

pub use nonexistence::{
    confirm_nonexistence, AnalyticBranch, BlockCountVerdict, EnumerativeBranch, NonexistenceError,
    NonexistenceReport,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::feasibility::block_count_solutions;
use crate::graph::{canonical_form, Block, Design, DesignKind, Edge, GraphError, Host, Vertex};

/// Widest host the bitmask engine accepts.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// Hosts with more edges than `K_10` need an explicit node budget.
pub const UNBUDGETED_MAX_EDGES: usize = 45;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search hosts must be simple graphs; edge {0} repeats")]
    MultigraphHost(Edge),
    #[error("host has {0} vertices; the search engine handles at most 64")]
    HostTooLarge(usize),
    #[error("host has {0} edges; searches on more than 45 edges need an explicit node budget")]
    BudgetRequired(usize),
    #[error("inconsistent bound: {0}")]
    InconsistentBound(String),
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockTypes {
    Hexagon,
    Prism,
    Both,
}

impl BlockTypes {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "hexagon" | "hexagons" => BlockTypes::Hexagon,
            "prism" | "prisms" => BlockTypes::Prism,
            "both" => BlockTypes::Both,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub blocks: BlockTypes,
    pub min_hexagons: u64,
    pub min_prisms: u64,
    /// Exact `(hexagons, prisms)` counts.
    pub targets: Option<(u64, u64)>,
    /// Maximum number of search nodes.
    pub budget: Option<u64>,
    /// Fix the first block through edge `{0,1}` up to the symmetries of `K_n`.
    pub symmetry_breaking: bool,
    /// Prune on vertex/prism incidence counts once no leave remains.
    pub incidence_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            blocks: BlockTypes::Both,
            min_hexagons: 1,
            min_prisms: 1,
            targets: None,
            budget: None,
            symmetry_breaking: true,
            incidence_pruning: true,
        }
    }
}

impl SearchConfig {
    pub fn only(blocks: BlockTypes) -> Self {
        SearchConfig {
            blocks,
            min_hexagons: 0,
            min_prisms: 0,
            ..Default::default()
        }
    }

    pub fn with_targets(mut self, hexagons: u64, prisms: u64) -> Self {
        self.targets = Some((hexagons, prisms));
        self
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    fn hexagon_range(&self) -> (u64, u64) {
        match (self.blocks, self.targets) {
            (BlockTypes::Prism, _) => (0, 0),
            (_, Some((x, _))) => (x, x),
            _ => (self.min_hexagons, u64::MAX),
        }
    }

    fn prism_range(&self) -> (u64, u64) {
        match (self.blocks, self.targets) {
            (BlockTypes::Hexagon, _) => (0, 0),
            (_, Some((_, y))) => (y, y),
            _ => (self.min_prisms, u64::MAX),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub placements: u64,
    /// Candidates at one node sharing a canonical form; the branching rule keeps this at zero.
    pub duplicate_candidates: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.placements += other.placements;
        self.duplicate_candidates += other.duplicate_candidates;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Design),
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Design> {
        match &self.result {
            SearchResult::Found(d) => Some(d),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.result {
            SearchResult::Found(_) => "Found",
            SearchResult::ExhaustedNone => "ExhaustedNone",
            SearchResult::BudgetExceeded => "BudgetExceeded",
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if let SearchResult::Found(d) = &self.result {
            let (x, y) = d.block_counts();
            write!(f, " ({x} hexagons, {y} prisms)")?;
        }
        write!(
            f,
            "; nodes {}, max depth {}, placements {}",
            self.stats.nodes, self.stats.max_depth, self.stats.placements
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalKind {
    Packing,
    Covering,
}

/// Searches for a decomposition of a simple host into hexagons and prisms.
pub fn search_multidecomposition(
    host: &Host,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let graph = LocalGraph::from_host(host)?;
    check_budget(graph.edge_count, cfg)?;
    Ok(solve(&graph, host, cfg, Mode::Exact { leave: 0 }))
}

/// Looks for a packing with a leave of exactly `bound` edges, or a covering
/// with a padding of exactly `bound` edges.
///
/// Packings branch at each undecided edge between the blocks through it and
/// putting it in the leave, which enumerates every candidate leave. Coverings
/// may reuse covered edges as long as the total reuse stays within `bound`.
pub fn find_extremal(
    host: &Host,
    kind: ExtremalKind,
    bound: u64,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let graph = LocalGraph::from_host(host)?;
    check_budget(graph.edge_count, cfg)?;
    let edges = graph.edge_count as u64;
    let used = match kind {
        ExtremalKind::Packing => edges.checked_sub(bound).ok_or_else(|| {
            SearchError::InconsistentBound(format!(
                "a leave of {bound} edges exceeds the {edges} host edges"
            ))
        })?,
        ExtremalKind::Covering => edges + bound,
    };
    if block_count_solutions(used, true).is_empty() {
        return Err(SearchError::InconsistentBound(format!(
            "{used} = 6x + 9y has no solution with x, y >= 1"
        )));
    }
    let mode = match kind {
        ExtremalKind::Packing => Mode::Exact { leave: bound },
        ExtremalKind::Covering => Mode::Cover { overage: bound },
    };
    Ok(solve(&graph, host, cfg, mode))
}

/// Runs one exact-count search per admissible `(hexagons, prisms)` pair, in
/// ascending order of prisms, sharing the node budget. The cases partition
/// the designs, so exhausting all of them is a complete enumeration.
fn solve(graph: &LocalGraph, host: &Host, cfg: &SearchConfig, mode: Mode) -> SearchOutcome {
    let edges = graph.edge_count as u64;
    let covered = match mode {
        Mode::Exact { leave } => edges - leave,
        Mode::Cover { overage } => edges + overage,
    };
    let (h_lo, h_hi) = cfg.hexagon_range();
    let (p_lo, p_hi) = cfg.prism_range();
    let mut stats = SearchStats::default();
    for (x, y) in block_count_solutions(covered, false) {
        if !(h_lo..=h_hi).contains(&x) || !(p_lo..=p_hi).contains(&y) {
            continue;
        }
        let mut case = cfg.clone();
        case.targets = Some((x, y));
        if let Some(budget) = cfg.budget {
            if stats.nodes >= budget {
                return SearchOutcome {
                    result: SearchResult::BudgetExceeded,
                    stats,
                };
            }
            case.budget = Some(budget - stats.nodes);
        }
        let outcome = Engine::new(graph, &case, mode).run(host.clone(), cfg);
        stats.merge(&outcome.stats);
        if outcome.result != SearchResult::ExhaustedNone {
            return SearchOutcome {
                result: outcome.result,
                stats,
            };
        }
    }
    stats.nodes = stats.nodes.max(1);
    SearchOutcome {
        result: SearchResult::ExhaustedNone,
        stats,
    }
}

/// One search over all block counts at once, with no case split and no
/// incidence bound: only counting and degree pruning.
pub(crate) fn search_unsplit(
    host: &Host,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let graph = LocalGraph::from_host(host)?;
    check_budget(graph.edge_count, cfg)?;
    let cfg = SearchConfig {
        incidence_pruning: false,
        ..cfg.clone()
    };
    Ok(Engine::new(&graph, &cfg, Mode::Exact { leave: 0 }).run(host.clone(), &cfg))
}

fn check_budget(edges: usize, cfg: &SearchConfig) -> Result<(), SearchError> {
    match cfg.budget {
        Some(0) => Err(SearchError::ZeroBudget),
        None if edges > UNBUDGETED_MAX_EDGES => Err(SearchError::BudgetRequired(edges)),
        _ => Ok(()),
    }
}

/// Host relabeled onto `0..k` with per-vertex adjacency bitmasks.
pub(crate) struct LocalGraph {
    labels: Vec<Vertex>,
    adj: Vec<u64>,
    edge_count: usize,
    complete: bool,
}

impl LocalGraph {
    pub(crate) fn from_host(host: &Host) -> Result<Self, SearchError> {
        host.validate()?;
        let labels = host.vertices();
        if labels.len() > MAX_SEARCH_VERTICES {
            return Err(SearchError::HostTooLarge(labels.len()));
        }
        let local = |v: Vertex| labels.binary_search(&v).expect("host vertex") as u32;
        let mut adj = vec![0u64; labels.len()];
        let edges = crate::graph::host_edges(host);
        for e in &edges {
            let (a, b) = (local(e.lo()), local(e.hi()));
            if adj[a as usize] & (1 << b) != 0 {
                return Err(SearchError::MultigraphHost(*e));
            }
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        let complete = matches!(host, Host::Complete(_));
        Ok(LocalGraph {
            labels,
            adj,
            edge_count: edges.len(),
            complete,
        })
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let edge_count = adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2;
        LocalGraph {
            labels: (0..adj.len() as Vertex).collect(),
            adj,
            edge_count,
            complete: false,
        }
    }

    fn order(&self) -> usize {
        self.adj.len()
    }
}

#[derive(Clone, Copy, Debug)]
enum Mode {
    /// Blocks are edge-disjoint; exactly `leave` edges stay unused.
    Exact { leave: u64 },
    /// Every edge covered; block edges total `|E| + overage`.
    Cover { overage: u64 },
}

enum Flow {
    Found,
    Continue,
    Budget,
}

#[inline]
fn bit(v: u32) -> u64 {
    1u64 << v
}

fn bits(mut w: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if w == 0 {
            return None;
        }
        let b = w.trailing_zeros();
        w &= w - 1;
        Some(b)
    })
}

/// Which way a block passes through the branching edge; blocks in the same
/// class are interchangeable under the stabilizer of that edge in `Sym(n)`.
fn root_class(b: &Block, u: u32, v: u32) -> u8 {
    match *b {
        Block::Hexagon(_) => 0,
        Block::Prism(t, s) => {
            let same_triangle =
                (t.contains(&u) && t.contains(&v)) || (s.contains(&u) && s.contains(&v));
            if same_triangle {
                1
            } else {
                2
            }
        }
    }
}

struct Engine {
    n: usize,
    labels: Vec<Vertex>,
    /// Undecided edges (exact mode) or uncovered edges (cover mode).
    free: Vec<u64>,
    host_adj: Vec<u64>,
    /// Per-edge use counts, cover mode only.
    uses: Vec<u8>,
    free_edges: u64,
    mode: Mode,
    /// Leave edges or padding uses still to spend.
    slack: u64,
    hex_range: (u64, u64),
    prism_range: (u64, u64),
    hexagons: u64,
    prisms: u64,
    symmetric_root: bool,
    incidence_pruning: bool,
    budget: Option<u64>,
    placed: Vec<Block>,
    leave: Vec<(u32, u32)>,
    stats: SearchStats,
}

impl Engine {
    fn new(graph: &LocalGraph, cfg: &SearchConfig, mode: Mode) -> Self {
        let n = graph.order();
        let slack = match mode {
            Mode::Exact { leave } => leave,
            Mode::Cover { overage } => overage,
        };
        Engine {
            n,
            labels: graph.labels.clone(),
            free: graph.adj.clone(),
            host_adj: graph.adj.clone(),
            uses: match mode {
                Mode::Cover { .. } => vec![0; n * n],
                Mode::Exact { .. } => Vec::new(),
            },
            free_edges: graph.edge_count as u64,
            mode,
            slack,
            hex_range: cfg.hexagon_range(),
            prism_range: cfg.prism_range(),
            hexagons: 0,
            prisms: 0,
            symmetric_root: cfg.symmetry_breaking && graph.complete,
            incidence_pruning: cfg.incidence_pruning,
            budget: cfg.budget,
            placed: Vec::new(),
            leave: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn run(&mut self, host: Host, cfg: &SearchConfig) -> SearchOutcome {
        let result = if !self.feasible() {
            self.stats.nodes = 1;
            SearchResult::ExhaustedNone
        } else {
            match self.dfs(0) {
                Flow::Found => SearchResult::Found(self.design(host, cfg)),
                Flow::Continue => SearchResult::ExhaustedNone,
                Flow::Budget => SearchResult::BudgetExceeded,
            }
        };
        SearchOutcome {
            result,
            stats: self.stats,
        }
    }

    fn design(&self, host: Host, cfg: &SearchConfig) -> Design {
        let label = |v: u32| self.labels[v as usize];
        let blocks: Vec<Block> = self.placed.iter().map(|b| b.map(label)).collect();
        let mut design = Design::new(host, DesignKind::Decomposition, blocks);
        let (x, y) = design.block_counts();
        design.kind = match self.mode {
            Mode::Exact { leave } if leave > 0 => DesignKind::Packing,
            Mode::Cover { overage } if overage > 0 => DesignKind::Covering,
            _ if x > 0 && y > 0 && cfg.min_hexagons > 0 && cfg.min_prisms > 0 => {
                DesignKind::Decomposition
            }
            _ if y == 0 => DesignKind::HexagonDecomposition,
            _ if x == 0 => DesignKind::PrismDecomposition,
            _ => DesignKind::Decomposition,
        };
        design.leave = self
            .leave
            .iter()
            .map(|&(a, b)| Edge::of(label(a), label(b)))
            .collect();
        design.leave.sort_unstable();
        if let Mode::Cover { .. } = self.mode {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    for _ in 1..self.uses[a * self.n + b].max(1) {
                        design
                            .padding
                            .push(Edge::of(label(a as u32), label(b as u32)));
                    }
                }
            }
            design.padding.sort_unstable();
        }
        design
    }

    /// Some `(a, b)` in the remaining budgets with `6a + 9b = edges`.
    fn counts_reachable(&self, edges: u64, need_exact_mins: bool) -> bool {
        let (hmin, hmax) = self.hex_range;
        let (pmin, pmax) = self.prism_range;
        let h_lo = if need_exact_mins {
            hmin.saturating_sub(self.hexagons)
        } else {
            0
        };
        let p_lo = if need_exact_mins {
            pmin.saturating_sub(self.prisms)
        } else {
            0
        };
        let h_hi = hmax.saturating_sub(self.hexagons);
        let p_hi = pmax.saturating_sub(self.prisms);
        (p_lo..=p_hi.min(edges / 9)).any(|b| {
            let rest = edges - 9 * b;
            rest.is_multiple_of(6) && (h_lo..=h_hi).contains(&(rest / 6))
        })
    }

    /// Smallest number of leave edges at a vertex of remaining degree `r`.
    fn degree_deficit(&self, r: u64) -> Option<u64> {
        let h_hi = self.hex_range.1.saturating_sub(self.hexagons);
        let p_hi = self.prism_range.1.saturating_sub(self.prisms);
        (0..=r).find(|&d| {
            let target = r - d;
            (0..=p_hi.min(target / 3)).any(|q| {
                let rest = target - 3 * q;
                rest.is_multiple_of(2) && rest / 2 <= h_hi
            })
        })
    }

    /// With no leave left, vertex `v` lies in `q_v ≡ r_v (mod 2)` of the `b`
    /// prisms still to place, and the `q_v` sum to `6b`. Two edge-disjoint
    /// prisms share at most 4 vertices, so `Σ C(q_v, 2) <= 4 C(b, 2)`; the
    /// left side is smallest when the `q_v` are as even as parity allows.
    fn incidences_reachable(&self, edges: u64) -> bool {
        let p_lo = self.prism_range.0.saturating_sub(self.prisms);
        let p_hi = self.prism_range.1.saturating_sub(self.prisms);
        let degrees: Vec<u64> = self.free.iter().map(|w| w.count_ones() as u64).collect();
        let mut q = vec![0u64; degrees.len()];
        let mut cap = vec![0u64; degrees.len()];
        (p_lo..=p_hi.min(edges / 9)).any(|b| {
            let rest = edges - 9 * b;
            if !rest.is_multiple_of(6)
                || !(self.hex_range.0..=self.hex_range.1).contains(&(self.hexagons + rest / 6))
            {
                return false;
            }
            let (mut sum_lo, mut sum_hi) = (0, 0);
            for (v, &r) in degrees.iter().enumerate() {
                let lo = r % 2;
                let mut hi = (r / 3).min(b);
                if hi % 2 != lo {
                    hi = hi.wrapping_sub(1);
                }
                if hi < lo || hi == u64::MAX {
                    return false;
                }
                q[v] = lo;
                cap[v] = hi;
                sum_lo += lo;
                sum_hi += hi;
            }
            if !(sum_lo..=sum_hi).contains(&(6 * b)) {
                return false;
            }
            for _ in 0..(6 * b - sum_lo) / 2 {
                let v = (0..q.len())
                    .filter(|&v| q[v] + 2 <= cap[v])
                    .min_by_key(|&v| q[v])
                    .expect("sum_hi bounds the total");
                q[v] += 2;
            }
            let shared: u64 = q.iter().map(|&x| x * x.saturating_sub(1) / 2).sum();
            shared <= 4 * (b * b.saturating_sub(1) / 2)
        })
    }

    fn feasible(&self) -> bool {
        match self.mode {
            Mode::Exact { .. } => {
                let Some(edges) = self.free_edges.checked_sub(self.slack) else {
                    return false;
                };
                if !self.counts_reachable(edges, true) {
                    return false;
                }
                if self.incidence_pruning && self.slack == 0 && !self.incidences_reachable(edges) {
                    return false;
                }
                let mut deficit = 0;
                for v in 0..self.n {
                    match self.degree_deficit(self.free[v].count_ones() as u64) {
                        Some(d) => deficit += d,
                        None => return false,
                    }
                    if deficit > 2 * self.slack {
                        return false;
                    }
                }
                true
            }
            Mode::Cover { .. } => self.counts_reachable(self.free_edges + self.slack, true),
        }
    }

    fn candidates(&self, u: u32, v: u32) -> Vec<Block> {
        let g = match self.mode {
            Mode::Exact { .. } => &self.free,
            Mode::Cover { .. } => &self.host_adj,
        };
        let adj = |x: u32| g[x as usize];
        let mut out = Vec::new();
        if self.hexagons < self.hex_range.1 {
            for a1 in bits(adj(u) & !bit(v)) {
                for a2 in bits(adj(a1) & !(bit(u) | bit(v))) {
                    for a3 in bits(adj(a2) & !(bit(u) | bit(v) | bit(a1))) {
                        for a4 in bits(adj(a3) & adj(v) & !(bit(u) | bit(a1) | bit(a2))) {
                            out.push(canonical_form(&Block::Hexagon([u, a1, a2, a3, a4, v])));
                        }
                    }
                }
            }
        }
        if self.prisms < self.prism_range.1 {
            // {u,v} inside a triangle.
            for w in bits(adj(u) & adj(v)) {
                for u2 in bits(adj(u) & !(bit(v) | bit(w))) {
                    for v2 in bits(adj(v) & adj(u2) & !(bit(u) | bit(w))) {
                        for w2 in bits(adj(w) & adj(u2) & adj(v2) & !(bit(u) | bit(v))) {
                            out.push(canonical_form(&Block::Prism([u, v, w], [u2, v2, w2])));
                        }
                    }
                }
            }
            // {u,v} as a rung.
            for a in bits(adj(u) & !bit(v)) {
                for b in bits(adj(u) & adj(a) & !bit(v) & !(u64::MAX >> (63 - a))) {
                    for a2 in bits(adj(v) & adj(a) & !(bit(u) | bit(b))) {
                        for b2 in bits(adj(v) & adj(b) & adj(a2) & !(bit(u) | bit(a))) {
                            out.push(canonical_form(&Block::Prism([u, a, b], [v, a2, b2])));
                        }
                    }
                }
            }
        }
        out.sort_unstable_by(|a, b| b.kind().cmp(&a.kind()).then(a.cmp(b)));
        out
    }

    fn apply(&mut self, b: &Block, add: bool) -> u64 {
        let mut reused = 0;
        for e in b.edges_unchecked() {
            let (a, c) = (e.lo() as usize, e.hi() as usize);
            match self.mode {
                Mode::Exact { .. } => {
                    self.free[a] ^= 1 << c;
                    self.free[c] ^= 1 << a;
                }
                Mode::Cover { .. } => {
                    let slot = &mut self.uses[a * self.n + c];
                    if add {
                        *slot += 1;
                        if *slot == 1 {
                            self.free[a] &= !(1 << c);
                            self.free[c] &= !(1 << a);
                            continue;
                        }
                        reused += 1;
                    } else {
                        *slot -= 1;
                        if *slot == 0 {
                            self.free[a] |= 1 << c;
                            self.free[c] |= 1 << a;
                            continue;
                        }
                        reused += 1;
                    }
                }
            }
        }
        let fresh = b.edge_count() as u64 - reused;
        if add {
            self.free_edges -= fresh;
            self.slack -= reused;
        } else {
            self.free_edges += fresh;
            self.slack += reused;
        }
        let counter = match b {
            Block::Hexagon(_) => &mut self.hexagons,
            Block::Prism(..) => &mut self.prisms,
        };
        if add {
            *counter += 1;
        } else {
            *counter -= 1;
        }
        reused
    }

    fn reuse_cost(&self, b: &Block) -> u64 {
        b.edges_unchecked()
            .iter()
            .filter(|e| self.uses[e.lo() as usize * self.n + e.hi() as usize] > 0)
            .count() as u64
    }

    fn done(&self) -> bool {
        self.slack == 0 && self.hexagons >= self.hex_range.0 && self.prisms >= self.prism_range.0
    }

    fn dfs(&mut self, depth: usize) -> Flow {
        if self.budget.is_some_and(|b| self.stats.nodes >= b) {
            return Flow::Budget;
        }
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let Some(u) = (0..self.n).find(|&x| self.free[x] != 0) else {
            return if self.done() {
                Flow::Found
            } else {
                Flow::Continue
            };
        };
        let u = u as u32;
        let v = self.free[u as usize].trailing_zeros();

        let mut cands = self.candidates(u, v);
        self.stats.duplicate_candidates += cands.windows(2).filter(|w| w[0] == w[1]).count() as u64;
        if depth == 0 && self.symmetric_root {
            let mut seen = [false; 3];
            cands.retain(|b| {
                let class = root_class(b, u, v) as usize;
                !std::mem::replace(&mut seen[class], true)
            });
        }

        for b in &cands {
            if let Mode::Cover { .. } = self.mode {
                if self.reuse_cost(b) > self.slack {
                    continue;
                }
            }
            self.apply(b, true);
            self.placed.push(*b);
            self.stats.placements += 1;
            let flow = if self.feasible() {
                self.dfs(depth + 1)
            } else {
                Flow::Continue
            };
            match flow {
                Flow::Continue => {
                    self.placed.pop();
                    self.apply(b, false);
                }
                other => return other,
            }
        }

        if let Mode::Exact { .. } = self.mode {
            if self.slack > 0 {
                self.free[u as usize] &= !bit(v);
                self.free[v as usize] &= !bit(u);
                self.free_edges -= 1;
                self.slack -= 1;
                self.leave.push((u, v));
                let flow = if self.feasible() {
                    self.dfs(depth + 1)
                } else {
                    Flow::Continue
                };
                match flow {
                    Flow::Continue => {
                        self.leave.pop();
                        self.slack += 1;
                        self.free_edges += 1;
                        self.free[u as usize] |= bit(v);
                        self.free[v as usize] |= bit(u);
                    }
                    other => return other,
                }
            }
        }
        Flow::Continue
    }
}

/// Whether the graph given by `adj` splits into exactly `hexagons` hexagons.
pub(crate) fn hexagon_decomposable(adj: &[u64], hexagons: u64) -> bool {
    let graph = LocalGraph::from_adjacency(adj.to_vec());
    if graph.edge_count as u64 != 6 * hexagons || adj.iter().any(|w| w.count_ones() % 2 == 1) {
        return false;
    }
    let cfg = SearchConfig::only(BlockTypes::Hexagon).with_targets(hexagons, 0);
    let mut engine = Engine::new(&graph, &cfg, Mode::Exact { leave: 0 });
    engine.feasible() && matches!(engine.dfs(0), Flow::Found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_design;

    #[test]
    fn k6_found_with_both_types() {
        let out = search_multidecomposition(&Host::Complete(6), &SearchConfig::default()).unwrap();
        let d = out.found().expect("K6 splits into a hexagon and a prism");
        assert_eq!(d.block_counts(), (1, 1));
        assert!(verify_design(d).valid);
    }

    #[test]
    fn k7_exhausts_without_duplicates() {
        for symmetry in [true, false] {
            for incidence_pruning in [true, false] {
                let cfg = SearchConfig {
                    symmetry_breaking: symmetry,
                    incidence_pruning,
                    ..Default::default()
                };
                let out = search_multidecomposition(&Host::Complete(7), &cfg).unwrap();
                assert_eq!(out.result, SearchResult::ExhaustedNone);
                let plain = search_unsplit(&Host::Complete(7), &cfg).unwrap();
                assert_eq!(plain.result, SearchResult::ExhaustedNone);
                assert_eq!(plain.stats.duplicate_candidates, 0);
                assert!(plain.stats.nodes > 1);
            }
        }
    }

    #[test]
    fn k12_and_k13_found_within_budget() {
        for n in [12, 13] {
            let cfg = SearchConfig::default().with_budget(200_000);
            let out = search_multidecomposition(&Host::Complete(n), &cfg).unwrap();
            let d = out
                .found()
                .unwrap_or_else(|| panic!("K{n}: {:?}", out.result));
            let (x, y) = d.block_counts();
            assert!(x >= 1 && y >= 1);
            assert!(verify_design(d).valid);
        }
    }

    #[test]
    fn incidence_bound_agrees_with_plain_search() {
        // Exact hexagon/prism counts on small hosts, with and without the bound.
        let hosts = [
            Host::Complete(6),
            Host::Complete(7),
            Host::Complete(9),
            Host::bipartite(0..4, 4..10),
        ];
        for host in hosts {
            for blocks in [BlockTypes::Both, BlockTypes::Hexagon, BlockTypes::Prism] {
                let on = SearchConfig::only(blocks).with_budget(2_000_000);
                let off = SearchConfig {
                    incidence_pruning: false,
                    ..on.clone()
                };
                let a = search_multidecomposition(&host, &on).unwrap();
                let b = search_multidecomposition(&host, &off).unwrap();
                assert_eq!(
                    a.found().is_some(),
                    b.found().is_some(),
                    "{host:?} {blocks:?}"
                );
                assert!(a.stats.nodes <= b.stats.nodes);
            }
        }
    }

    #[test]
    fn candidate_lists_are_canonical_and_distinct() {
        let graph = LocalGraph::from_host(&Host::Complete(7)).unwrap();
        let cfg = SearchConfig::default();
        let engine = Engine::new(&graph, &cfg, Mode::Exact { leave: 0 });
        let cands = engine.candidates(0, 1);
        // Hexagons (0,a,b,c,d,1): ordered choices of 4 of the other 5 vertices.
        let hex = cands
            .iter()
            .filter(|b| matches!(b, Block::Hexagon(_)))
            .count();
        assert_eq!(hex, 5 * 4 * 3 * 2);
        let prism = cands.len() - hex;
        // Oracle: every labeled prism on a 6-subset through edge {0,1}.
        let mut brute = 0;
        for skip in 2..7u32 {
            let vs: Vec<u32> = (0..7).filter(|&x| x != skip).collect();
            let six: [u32; 6] = vs.try_into().unwrap();
            brute += crate::graph::all_blocks_on(six)
                .iter()
                .filter(|b| matches!(b, Block::Prism(..)))
                .filter(|b| b.edges_unchecked().contains(&Edge::of(0, 1)))
                .count();
        }
        assert_eq!(prism, brute);
        assert!(cands[..prism].iter().all(|b| matches!(b, Block::Prism(..))));
        assert!(cands[..prism].windows(2).all(|w| w[0] < w[1]));
        assert!(cands[prism..].windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn k9_hexagons_only() {
        let cfg = SearchConfig::only(BlockTypes::Hexagon).with_targets(6, 0);
        let out = search_multidecomposition(&Host::Complete(9), &cfg).unwrap();
        let d = out.found().expect("K9 has a hexagon decomposition");
        assert_eq!(d.kind, DesignKind::HexagonDecomposition);
        assert!(verify_design(d).valid);
    }

    #[test]
    fn deterministic() {
        let cfg = SearchConfig::only(BlockTypes::Prism);
        let a = search_multidecomposition(&Host::Complete(10), &cfg).unwrap();
        let b = search_multidecomposition(&Host::Complete(10), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(verify_design(a.found().unwrap()).valid);
    }

    #[test]
    fn budget_rules() {
        let cfg = SearchConfig::default();
        assert_eq!(
            search_multidecomposition(&Host::Complete(12), &cfg),
            Err(SearchError::BudgetRequired(66))
        );
        let out = search_unsplit(&Host::Complete(7), &cfg.clone().with_budget(3)).unwrap();
        assert_eq!(out.result, SearchResult::BudgetExceeded);
        assert_eq!(
            search_multidecomposition(&Host::Complete(7), &cfg.with_budget(0)),
            Err(SearchError::ZeroBudget)
        );
    }

    #[test]
    fn multigraph_rejected() {
        let e = Edge::of(0, 1);
        let host = Host::Explicit(vec![e, e]);
        assert_eq!(
            search_multidecomposition(&host, &SearchConfig::default()),
            Err(SearchError::MultigraphHost(e))
        );
    }

    #[test]
    fn extremal_k7() {
        let cfg = SearchConfig::default();
        let err = find_extremal(&Host::Complete(7), ExtremalKind::Packing, 3, &cfg).unwrap_err();
        assert!(matches!(err, SearchError::InconsistentBound(ref s) if s.contains("18")));
        let out = find_extremal(&Host::Complete(7), ExtremalKind::Covering, 3, &cfg).unwrap();
        assert_eq!(out.result, SearchResult::ExhaustedNone);
        let out = find_extremal(&Host::Complete(7), ExtremalKind::Packing, 6, &cfg).unwrap();
        let d = out.found().unwrap();
        assert_eq!(d.leave.len(), 6);
        assert!(verify_design(d).valid);
        let out = find_extremal(&Host::Complete(7), ExtremalKind::Covering, 6, &cfg).unwrap();
        let d = out.found().unwrap();
        assert_eq!(d.padding.len(), 6);
        assert!(verify_design(d).valid);
    }

    #[test]
    fn extremal_k8() {
        let cfg = SearchConfig::default();
        let out = find_extremal(&Host::Complete(8), ExtremalKind::Packing, 1, &cfg).unwrap();
        let d = out.found().unwrap();
        assert_eq!(d.leave.len(), 1);
        assert!(verify_design(d).valid);
        let out = find_extremal(&Host::Complete(8), ExtremalKind::Covering, 2, &cfg).unwrap();
        let d = out.found().unwrap();
        assert_eq!(d.padding.len(), 2);
        assert!(verify_design(d).valid);
    }

    #[test]
    fn hexagon_decomposable_helper() {
        let k9 = LocalGraph::from_host(&Host::Complete(9)).unwrap();
        assert!(hexagon_decomposable(&k9.adj, 6));
        let k7 = LocalGraph::from_host(&Host::Complete(7)).unwrap();
        assert!(!hexagon_decomposable(&k7.adj, 3));
    }
}
