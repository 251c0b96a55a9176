//! Recursive constructions from joins of cliques.
//!
//! `K_n` is written as a join `G_1 ∨ ... ∨ G_t` of cliques on consecutive
//! intervals. A few groups of parts carry a base design (a catalog entry or a
//! search-derived seed), and every pair of parts not inside a common group is
//! filled with a hexagon decomposition of the complete bipartite graph between
//! them. A lone `K_1` or `K_2` apex is shared by several groups, so the apex
//! never needs a fill of its own.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{c6_decompose_bipartite, BipartiteSpec};
use crate::catalog::{self, derived_base, place, CatalogKey, DerivedKey};
use crate::feasibility::{classify, FeasibilityReport};
use crate::graph::{canonical_form, relabel_design, Block, Design, DesignKind, Edge, Host, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("K_{n} has no hexagon/prism design below 6 vertices", n = .0)]
    UnsupportedOrder(u32),
    #[error("K_{} admits no decomposition: {}", .0.n, .0.reason.as_deref().unwrap_or("see report"))]
    Infeasible(Box<FeasibilityReport>),
    #[error("K_{n} {kind} is built by a block transformation, not a join layout")]
    NoLayout { n: u32, kind: DesignKind },
    #[error("{0} designs are not produced by the constructions")]
    UnsupportedKind(DesignKind),
    #[error("expected a {expected}, got {got}")]
    WrongBlock { expected: &'static str, got: Block },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PartKind {
    K1,
    K2,
    K4,
    K6,
    K8,
    K10,
    K12,
    K14,
    K16,
}

impl PartKind {
    pub fn size(self) -> u32 {
        match self {
            PartKind::K1 => 1,
            PartKind::K2 => 2,
            PartKind::K4 => 4,
            PartKind::K6 => 6,
            PartKind::K8 => 8,
            PartKind::K10 => 10,
            PartKind::K12 => 12,
            PartKind::K14 => 14,
            PartKind::K16 => 16,
        }
    }
}

impl fmt::Display for PartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.size())
    }
}

/// A clique on the interval `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub kind: PartKind,
    pub start: Vertex,
    pub end: Vertex,
}

impl Part {
    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        self.start..self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinLayout {
    pub n: u32,
    pub parts: Vec<Part>,
}

impl JoinLayout {
    fn new(kinds: &[PartKind]) -> Self {
        let mut start = 0;
        let parts = kinds
            .iter()
            .map(|&kind| {
                let part = Part {
                    kind,
                    start,
                    end: start + kind.size(),
                };
                start = part.end;
                part
            })
            .collect();
        JoinLayout { n: start, parts }
    }

    pub fn kinds(&self) -> Vec<PartKind> {
        self.parts.iter().map(|p| p.kind).collect()
    }

    /// All unordered pairs of part indices.
    pub fn cross_pairs(&self) -> Vec<(usize, usize)> {
        let t = self.parts.len();
        (0..t)
            .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
            .collect()
    }
}

impl fmt::Display for JoinLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.parts.iter().map(|p| p.kind.to_string()).collect();
        write!(f, "K{} = {}", self.n, names.join(" ∨ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Base {
    Catalog(CatalogKey),
    Derived(DerivedKey),
    /// The `K_8` packing relabeled so its leave is `{0,1}`.
    Packing8OnApex,
}

impl Base {
    fn design(self) -> Design {
        match self {
            Base::Catalog(key) => catalog::get(key).expect("bases are catalog keys").clone(),
            Base::Derived(key) => derived_base(key).clone(),
            Base::Packing8OnApex => {
                let k8 = catalog::get(CatalogKey::Packing(8)).expect("K_8 packing bundled");
                let (u, v) = k8.leave[0].endpoints();
                let mut perm: Vec<Vertex> = (0..8).collect();
                perm.swap(0, u as usize);
                perm.swap(1, v as usize);
                relabel_design(k8, &perm).expect("a transposition pair is a bijection")
            }
        }
    }
}

struct Plan {
    layout: JoinLayout,
    /// Part indices carrying one base design each.
    groups: Vec<(Vec<usize>, Base)>,
}

use PartKind::*;

fn apex_plan(head_kinds: &[PartKind], head: Base, twelves: u32) -> Plan {
    let mut kinds = head_kinds.to_vec();
    kinds.extend(std::iter::repeat_n(K12, twelves as usize));
    let layout = JoinLayout::new(&kinds);
    let mut groups = vec![((0..head_kinds.len()).collect(), head)];
    for i in head_kinds.len()..kinds.len() {
        groups.push((vec![0, i], Base::Catalog(CatalogKey::Decomposition(13))));
    }
    Plan { layout, groups }
}

fn plan(n: u32, kind: DesignKind) -> Result<Plan, ConstructError> {
    if !kind.is_mixed() {
        return Err(ConstructError::UnsupportedKind(kind));
    }
    let report = classify(n).map_err(|_| ConstructError::UnsupportedOrder(n))?;
    let kind = if report.decomposition_exists {
        DesignKind::Decomposition
    } else {
        kind
    };
    let decomposition = |key| Base::Catalog(CatalogKey::Decomposition(key));
    Ok(match (kind, n % 6) {
        (DesignKind::Decomposition, _) if !report.decomposition_exists => {
            return Err(ConstructError::Infeasible(Box::new(report)))
        }
        (_, _) if matches!(n, 7 | 9 | 10) => return Err(ConstructError::NoLayout { n, kind }),
        (DesignKind::Decomposition, 0) => {
            let layout = JoinLayout::new(&vec![K6; n as usize / 6]);
            let groups = (0..layout.parts.len())
                .map(|i| (vec![i], decomposition(6)))
                .collect();
            Plan { layout, groups }
        }
        (DesignKind::Decomposition, 1) if n % 12 == 1 => {
            apex_plan(&[K1, K12], decomposition(13), (n - 13) / 12)
        }
        (DesignKind::Decomposition, 1) => {
            apex_plan(&[K1, K6, K12], decomposition(19), (n - 19) / 12)
        }
        (DesignKind::Decomposition, 3) if n % 12 == 3 => {
            apex_plan(&[K1, K14], decomposition(15), (n - 15) / 12)
        }
        (DesignKind::Decomposition, 3) => apex_plan(
            &[K1, K8],
            Base::Derived(DerivedKey::Hexagons9),
            (n - 9) / 12,
        ),
        (DesignKind::Decomposition, _) => {
            let mut kinds = vec![K10];
            kinds.extend(std::iter::repeat_n(K6, (n as usize - 10) / 6));
            let layout = JoinLayout::new(&kinds);
            let mut groups = vec![(vec![0], Base::Derived(DerivedKey::Prisms10))];
            groups.extend((1..kinds.len()).map(|i| (vec![i], decomposition(6))));
            Plan { layout, groups }
        }
        (DesignKind::Packing, 2) => {
            let mut kinds = vec![K2];
            kinds.extend(std::iter::repeat_n(K6, (n as usize - 2) / 6));
            let layout = JoinLayout::new(&kinds);
            let base = if n == 8 {
                Base::Catalog(CatalogKey::Packing(8))
            } else {
                Base::Packing8OnApex
            };
            let groups = (1..kinds.len()).map(|i| (vec![0, i], base)).collect();
            Plan { layout, groups }
        }
        (DesignKind::Packing, _) if n % 12 == 5 => apex_plan(
            &[K1, K16],
            Base::Catalog(CatalogKey::Packing(17)),
            (n - 17) / 12,
        ),
        (DesignKind::Packing, _) => apex_plan(
            &[K1, K10],
            Base::Catalog(CatalogKey::Packing(11)),
            (n - 11) / 12,
        ),
        (DesignKind::Covering, 2) => {
            let mut kinds = vec![K8];
            kinds.extend(std::iter::repeat_n(K6, (n as usize - 8) / 6));
            let layout = JoinLayout::new(&kinds);
            let mut groups = vec![(vec![0], Base::Catalog(CatalogKey::Covering(8)))];
            groups.extend((1..kinds.len()).map(|i| (vec![i], decomposition(6))));
            Plan { layout, groups }
        }
        (DesignKind::Covering, _) if n % 12 == 5 => apex_plan(
            &[K1, K4, K12],
            Base::Catalog(CatalogKey::Covering(17)),
            (n - 17) / 12,
        ),
        (DesignKind::Covering, _) => apex_plan(
            &[K1, K4, K6],
            Base::Catalog(CatalogKey::Covering(11)),
            (n - 11) / 12,
        ),
        _ => unreachable!("mixed kinds only"),
    })
}

/// The join layout used for `K_n` and the requested kind. Orders with a
/// decomposition always get the decomposition layout.
pub fn join_layout(n: u32, kind: DesignKind) -> Result<JoinLayout, ConstructError> {
    plan(n, kind).map(|p| p.layout)
}

fn assemble(plan: &Plan, kind: DesignKind) -> Design {
    let layout = &plan.layout;
    let mut blocks = Vec::new();
    let mut leave = Vec::new();
    let mut padding = Vec::new();
    for (parts, base) in &plan.groups {
        let labels: Vec<Vertex> = parts
            .iter()
            .flat_map(|&i| layout.parts[i].vertices())
            .collect();
        let placed = place(&base.design(), &labels);
        blocks.extend(placed.blocks);
        leave.extend(placed.leave);
        padding.extend(placed.padding);
    }
    leave.sort_unstable();
    leave.dedup();
    for (i, j) in layout.cross_pairs() {
        if plan
            .groups
            .iter()
            .any(|(g, _)| g.contains(&i) && g.contains(&j))
        {
            continue;
        }
        let spec = BipartiteSpec::new(layout.parts[i].vertices(), layout.parts[j].vertices());
        let fill = c6_decompose_bipartite(&spec).expect("layouts pair admissible sides");
        blocks.extend(fill.blocks);
    }
    padding.sort_unstable();
    let kind = if leave.is_empty() && padding.is_empty() {
        DesignKind::Decomposition
    } else {
        kind
    };
    Design {
        host: Host::Complete(layout.n),
        kind,
        blocks,
        leave,
        padding,
    }
}

/// A hexagon/prism decomposition of `K_n`.
pub fn multidecompose(n: u32) -> Result<Design, ConstructError> {
    Ok(assemble(
        &plan(n, DesignKind::Decomposition)?,
        DesignKind::Decomposition,
    ))
}

/// A packing of `K_n` with the smallest possible leave; a decomposition when
/// one exists.
pub fn max_multipack(n: u32) -> Result<Design, ConstructError> {
    match n {
        7 | 9 => Ok(catalog::get(CatalogKey::Packing(n))
            .expect("bundled")
            .clone()),
        10 => {
            let mut d = derived_base(DerivedKey::Prisms10).clone();
            let (hexagon, matching) = prism_minus_matching(&d.blocks[0])?;
            d.blocks[0] = hexagon;
            d.kind = DesignKind::Packing;
            d.leave = sorted(matching);
            Ok(d)
        }
        _ => Ok(assemble(
            &plan(n, DesignKind::Packing)?,
            DesignKind::Packing,
        )),
    }
}

/// A covering of `K_n` with the smallest possible padding; a decomposition
/// when one exists.
pub fn min_multicover(n: u32) -> Result<Design, ConstructError> {
    match n {
        7 => Ok(catalog::get(CatalogKey::Covering(7))
            .expect("bundled")
            .clone()),
        9 => {
            let mut d = derived_base(DerivedKey::Hexagons9).clone();
            let (prism, matching) = hexagon_plus_factor(&d.blocks[0])?;
            d.blocks[0] = prism;
            d.kind = DesignKind::Covering;
            d.padding = sorted(matching);
            Ok(d)
        }
        10 => {
            let mut d = derived_base(DerivedKey::Prisms10).clone();
            let (first, second, extra) = prism_to_two_hexagons(&d.blocks[0])?;
            d.blocks.splice(0..1, [first, second]);
            d.kind = DesignKind::Covering;
            d.padding = sorted(extra);
            Ok(d)
        }
        _ => Ok(assemble(
            &plan(n, DesignKind::Covering)?,
            DesignKind::Covering,
        )),
    }
}

/// Dispatches on the design kind.
pub fn construct(n: u32, kind: DesignKind) -> Result<Design, ConstructError> {
    match kind {
        DesignKind::Decomposition => multidecompose(n),
        DesignKind::Packing => max_multipack(n),
        DesignKind::Covering => min_multicover(n),
        other => Err(ConstructError::UnsupportedKind(other)),
    }
}

fn sorted(edges: [Edge; 3]) -> Vec<Edge> {
    let mut v = edges.to_vec();
    v.sort_unstable();
    v
}

fn prism_of(b: &Block) -> Result<([Vertex; 3], [Vertex; 3]), ConstructError> {
    match *b {
        Block::Prism(t, s) => Ok((t, s)),
        Block::Hexagon(_) => Err(ConstructError::WrongBlock {
            expected: "prism",
            got: *b,
        }),
    }
}

/// Removes a perfect matching from a prism so that a hexagon remains. On the
/// canonical form `[a,b,c;d,e,f]` the matching is `{ab, cf, de}` and the
/// hexagon is `(b,c,a,d,f,e)`.
pub fn prism_minus_matching(p: &Block) -> Result<(Block, [Edge; 3]), ConstructError> {
    prism_of(p)?;
    let ([a, b, c], [d, e, f]) = prism_of(&canonical_form(p))?;
    Ok((
        Block::Hexagon([b, c, a, d, f, e]),
        [Edge::of(a, b), Edge::of(c, f), Edge::of(d, e)],
    ))
}

/// Adds a perfect matching to a hexagon `(a,b,c,d,e,f)` to form a prism:
/// the matching is `{ac, df, be}` and the prism `[a,b,c;f,e,d]`.
pub fn hexagon_plus_factor(h: &Block) -> Result<(Block, [Edge; 3]), ConstructError> {
    let Block::Hexagon([a, b, c, d, e, f]) = *h else {
        return Err(ConstructError::WrongBlock {
            expected: "hexagon",
            got: *h,
        });
    };
    Ok((
        Block::Prism([a, b, c], [f, e, d]),
        [Edge::of(a, c), Edge::of(d, f), Edge::of(b, e)],
    ))
}

/// Covers a prism `[a,b,c;d,e,f]` with the hexagons `(a,b,c,f,e,d)` and
/// `(a,c,b,e,f,d)`, which use `bc`, `ef` and `ad` twice.
pub fn prism_to_two_hexagons(p: &Block) -> Result<(Block, Block, [Edge; 3]), ConstructError> {
    let ([a, b, c], [d, e, f]) = prism_of(p)?;
    Ok((
        Block::Hexagon([a, b, c, f, e, d]),
        Block::Hexagon([a, c, b, e, f, d]),
        [Edge::of(b, c), Edge::of(e, f), Edge::of(a, d)],
    ))
}
