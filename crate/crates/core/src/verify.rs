//! Validation of a [`Design`] against its host.
//!
//! Nothing here calls into the construction or block-shape code: edge sets are
//! recomputed from the raw vertex tuples and compared as multisets, so the
//! verifier can serve as an oracle for everything else in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::graph::{Block, Design, DesignKind, Edge, Host, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "finding", rename_all = "kebab-case")]
pub enum Finding {
    MalformedHost {
        detail: String,
    },
    RepeatedVertex {
        block: usize,
        tuple: String,
    },
    VertexOutsideHost {
        block: usize,
        tuple: String,
        vertex: Vertex,
    },
    BadShape {
        block: usize,
        tuple: String,
        detail: String,
    },
    WrongBlockType {
        block: usize,
        tuple: String,
        expected: String,
    },
    MissingBlockType {
        missing: String,
    },
    EdgeNotInHost {
        edge: (Vertex, Vertex),
        blocks: Vec<usize>,
    },
    EdgeOverused {
        edge: (Vertex, Vertex),
        uses: u32,
        allowed: u32,
        blocks: Vec<usize>,
    },
    EdgesUncovered {
        edges: Vec<(Vertex, Vertex)>,
    },
    LeaveOverlapsBlock {
        edge: (Vertex, Vertex),
        blocks: Vec<usize>,
    },
    LeaveNotInHost {
        edge: (Vertex, Vertex),
    },
    LeaveRepeated {
        edge: (Vertex, Vertex),
    },
    LeaveMismatch {
        declared: Vec<(Vertex, Vertex)>,
        actual: Vec<(Vertex, Vertex)>,
    },
    PaddingNotInHost {
        edge: (Vertex, Vertex),
    },
    PaddingMismatch {
        declared: Vec<(Vertex, Vertex)>,
        actual: Vec<(Vertex, Vertex)>,
    },
    UnexpectedLeave {
        count: usize,
    },
    UnexpectedPadding {
        count: usize,
    },
    IncidenceMismatch {
        vertex: Vertex,
        hexagons: u32,
        prisms: u32,
        expected_degree: i64,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |es: &[(Vertex, Vertex)]| {
            es.iter()
                .map(|(a, b)| format!("{{{a},{b}}}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Finding::MalformedHost { detail } => write!(f, "malformed host: {detail}"),
            Finding::RepeatedVertex { block, tuple } => {
                write!(f, "block #{block} {tuple} repeats a vertex")
            }
            Finding::VertexOutsideHost {
                block,
                tuple,
                vertex,
            } => {
                write!(
                    f,
                    "block #{block} {tuple} uses vertex {vertex} outside the host"
                )
            }
            Finding::BadShape {
                block,
                tuple,
                detail,
            } => {
                write!(f, "block #{block} {tuple} has the wrong shape: {detail}")
            }
            Finding::WrongBlockType {
                block,
                tuple,
                expected,
            } => {
                write!(f, "block #{block} {tuple} is not a {expected}")
            }
            Finding::MissingBlockType { missing } => write!(f, "no {missing} present"),
            Finding::EdgeNotInHost {
                edge: (a, b),
                blocks,
            } => {
                write!(f, "edge {{{a},{b}}} is not a host edge (blocks {blocks:?})")
            }
            Finding::EdgeOverused {
                edge: (a, b),
                uses,
                allowed,
                blocks,
            } => write!(
                f,
                "edge {{{a},{b}}} used {uses} times, allowed {allowed} (blocks {blocks:?})"
            ),
            Finding::EdgesUncovered { edges } => {
                write!(f, "{} uncovered edges: {}", edges.len(), list(edges))
            }
            Finding::LeaveOverlapsBlock {
                edge: (a, b),
                blocks,
            } => {
                write!(f, "leave edge {{{a},{b}}} is used by blocks {blocks:?}")
            }
            Finding::LeaveNotInHost { edge: (a, b) } => {
                write!(f, "leave edge {{{a},{b}}} is not a host edge")
            }
            Finding::LeaveRepeated { edge: (a, b) } => {
                write!(f, "leave edge {{{a},{b}}} listed more than once")
            }
            Finding::LeaveMismatch { declared, actual } => write!(
                f,
                "declared leave [{}] differs from actual leave [{}]",
                list(declared),
                list(actual)
            ),
            Finding::PaddingNotInHost { edge: (a, b) } => {
                write!(f, "padding edge {{{a},{b}}} is not a host edge")
            }
            Finding::PaddingMismatch { declared, actual } => write!(
                f,
                "declared padding [{}] differs from actual padding [{}]",
                list(declared),
                list(actual)
            ),
            Finding::UnexpectedLeave { count } => {
                write!(
                    f,
                    "{count} leave edges declared on a design that has no leave"
                )
            }
            Finding::UnexpectedPadding { count } => {
                write!(
                    f,
                    "{count} padding edges declared on a design that has no padding"
                )
            }
            Finding::IncidenceMismatch {
                vertex,
                hexagons,
                prisms,
                expected_degree,
            } => write!(
                f,
                "vertex {vertex}: 2*{hexagons} + 3*{prisms} != {expected_degree}"
            ),
        }
    }
}

/// Hexagon and prism incidences of one host vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub vertex: Vertex,
    pub hexagons: u32,
    pub prisms: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub kind: String,
    pub failures: Vec<Finding>,
    pub hexagon_count: usize,
    pub prism_count: usize,
    pub leave: Vec<(Vertex, Vertex)>,
    pub padding: Vec<(Vertex, Vertex)>,
    pub incidence: Vec<Incidence>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} hexagons, {} prisms)",
            self.kind,
            if self.valid { "valid" } else { "INVALID" },
            self.hexagon_count,
            self.prism_count
        )?;
        if !self.leave.is_empty() {
            writeln!(f, "leave ({}): {:?}", self.leave.len(), self.leave)?;
        }
        if !self.padding.is_empty() {
            writeln!(f, "padding ({}): {:?}", self.padding.len(), self.padding)?;
        }
        for finding in &self.failures {
            writeln!(f, "  - {finding}")?;
        }
        Ok(())
    }
}

fn pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

fn raw_edges(b: &Block) -> Vec<(Vertex, Vertex)> {
    match *b {
        Block::Hexagon(v) => (0..6).map(|i| pair(v[i], v[(i + 1) % 6])).collect(),
        Block::Prism(t, s) => {
            let mut out = Vec::with_capacity(9);
            for i in 0..3 {
                out.push(pair(t[i], t[(i + 1) % 3]));
                out.push(pair(s[i], s[(i + 1) % 3]));
                out.push(pair(t[i], s[i]));
            }
            out
        }
    }
}

fn raw_vertices(b: &Block) -> [Vertex; 6] {
    match *b {
        Block::Hexagon(v) => v,
        Block::Prism(t, s) => [t[0], t[1], t[2], s[0], s[1], s[2]],
    }
}

/// Degree pattern and triangle count of a block's edge list, checked from scratch.
fn shape_problem(b: &Block, edges: &[(Vertex, Vertex)]) -> Option<String> {
    let mut verts: Vec<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let distinct: BTreeSet<_> = edges.iter().collect();
    let (want_edges, want_degree) = match b {
        Block::Hexagon(_) => (6, 2),
        Block::Prism(..) => (9, 3),
    };
    if verts.len() != 6 || distinct.len() != want_edges {
        return Some(format!(
            "{} vertices, {} distinct edges",
            verts.len(),
            distinct.len()
        ));
    }
    for &v in &verts {
        let d = edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        if d != want_degree {
            return Some(format!("vertex {v} has degree {d}"));
        }
    }
    let mut triangles = 0;
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            for &c in &verts[j + 1..] {
                if distinct.contains(&(a, b))
                    && distinct.contains(&(b, c))
                    && distinct.contains(&(a, c))
                {
                    triangles += 1;
                }
            }
        }
    }
    match b {
        Block::Hexagon(_) if triangles != 0 => Some("contains a triangle".into()),
        Block::Prism(..) if triangles != 2 => Some(format!("{triangles} triangles, not 2")),
        _ => None,
    }
}

fn host_multiset(host: &Host) -> Result<BTreeMap<(Vertex, Vertex), u32>, String> {
    let mut counts = BTreeMap::new();
    match host {
        Host::Complete(n) => {
            for a in 0..*n {
                for b in a + 1..*n {
                    counts.insert((a, b), 1);
                }
            }
        }
        Host::CompleteBipartite { left, right } => {
            for &a in left {
                for &b in right {
                    if a == b {
                        return Err(format!("vertex {a} lies on both sides"));
                    }
                    let slot = counts.entry(pair(a, b)).or_insert(0);
                    *slot += 1;
                    if *slot > 1 {
                        return Err(format!("pair {{{a},{b}}} appears twice"));
                    }
                }
            }
        }
        Host::Explicit(edges) => {
            for e in edges {
                *counts.entry(pair(e.lo(), e.hi())).or_insert(0) += 1;
            }
        }
    }
    Ok(counts)
}

fn host_vertex_set(host: &Host, counts: &BTreeMap<(Vertex, Vertex), u32>) -> BTreeSet<Vertex> {
    match host {
        Host::Complete(n) => (0..*n).collect(),
        Host::CompleteBipartite { left, right } => left.iter().chain(right).copied().collect(),
        Host::Explicit(_) => counts.keys().flat_map(|&(a, b)| [a, b]).collect(),
    }
}

fn edge_list(es: &[Edge]) -> Vec<(Vertex, Vertex)> {
    let mut out: Vec<_> = es.iter().map(|e| (e.lo(), e.hi())).collect();
    out.sort_unstable();
    out
}

pub fn verify_design(d: &Design) -> VerificationReport {
    let mut failures = Vec::new();
    let host = match host_multiset(&d.host) {
        Ok(h) => h,
        Err(detail) => {
            failures.push(Finding::MalformedHost { detail });
            BTreeMap::new()
        }
    };
    let vertices = host_vertex_set(&d.host, &host);

    let mut uses: BTreeMap<(Vertex, Vertex), (u32, Vec<usize>)> = BTreeMap::new();
    let mut hexagon_count = 0;
    let mut prism_count = 0;
    let mut incidence: BTreeMap<Vertex, Incidence> = vertices
        .iter()
        .map(|&v| {
            (
                v,
                Incidence {
                    vertex: v,
                    ..Default::default()
                },
            )
        })
        .collect();

    for (i, b) in d.blocks.iter().enumerate() {
        let tuple = b.to_string();
        let vs = raw_vertices(b);
        let mut sorted = vs;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            failures.push(Finding::RepeatedVertex { block: i, tuple });
            continue;
        }
        if let Some(&v) = vs.iter().find(|v| !vertices.contains(v)) {
            failures.push(Finding::VertexOutsideHost {
                block: i,
                tuple,
                vertex: v,
            });
            continue;
        }
        let edges = raw_edges(b);
        if let Some(detail) = shape_problem(b, &edges) {
            failures.push(Finding::BadShape {
                block: i,
                tuple,
                detail,
            });
            continue;
        }
        let is_hex = matches!(b, Block::Hexagon(_));
        match (d.kind, is_hex) {
            (DesignKind::HexagonDecomposition, false) => failures.push(Finding::WrongBlockType {
                block: i,
                tuple: tuple.clone(),
                expected: "hexagon".into(),
            }),
            (DesignKind::PrismDecomposition, true) => failures.push(Finding::WrongBlockType {
                block: i,
                tuple: tuple.clone(),
                expected: "prism".into(),
            }),
            _ => {}
        }
        if is_hex {
            hexagon_count += 1;
        } else {
            prism_count += 1;
        }
        for v in vs {
            let slot = incidence.get_mut(&v).expect("vertex checked above");
            if is_hex {
                slot.hexagons += 1;
            } else {
                slot.prisms += 1;
            }
        }
        for e in edges {
            let slot = uses.entry(e).or_insert((0, Vec::new()));
            slot.0 += 1;
            slot.1.push(i);
        }
    }

    if d.kind.is_mixed() {
        if hexagon_count == 0 {
            failures.push(Finding::MissingBlockType {
                missing: "hexagon".into(),
            });
        }
        if prism_count == 0 {
            failures.push(Finding::MissingBlockType {
                missing: "prism".into(),
            });
        }
    }

    for (&e, (_, blocks)) in &uses {
        if !host.contains_key(&e) {
            failures.push(Finding::EdgeNotInHost {
                edge: e,
                blocks: blocks.clone(),
            });
        }
    }

    let used = |e: &(Vertex, Vertex)| uses.get(e).map_or(0, |u| u.0);
    let mut actual_leave = Vec::new();
    let mut actual_padding = Vec::new();
    let mut uncovered = Vec::new();

    match d.kind {
        DesignKind::Decomposition
        | DesignKind::HexagonDecomposition
        | DesignKind::PrismDecomposition
        | DesignKind::Packing => {
            for (&e, (count, blocks)) in &uses {
                let allowed = host.get(&e).copied().unwrap_or(0);
                if allowed > 0 && *count > allowed {
                    failures.push(Finding::EdgeOverused {
                        edge: e,
                        uses: *count,
                        allowed,
                        blocks: blocks.clone(),
                    });
                }
            }
            for (&e, &mult) in &host {
                for _ in used(&e)..mult {
                    if d.kind == DesignKind::Packing {
                        actual_leave.push(e);
                    } else {
                        uncovered.push(e);
                    }
                }
            }
        }
        DesignKind::Covering => {
            for (&e, &mult) in &host {
                let u = used(&e);
                if u < mult {
                    uncovered.extend(std::iter::repeat_n(e, (mult - u) as usize));
                }
                for _ in mult..u {
                    actual_padding.push(e);
                }
            }
        }
    }
    if !uncovered.is_empty() {
        failures.push(Finding::EdgesUncovered { edges: uncovered });
    }

    let declared_leave = edge_list(&d.leave);
    let declared_padding = edge_list(&d.padding);
    match d.kind {
        DesignKind::Packing => {
            for w in declared_leave.windows(2) {
                if w[0] == w[1] {
                    failures.push(Finding::LeaveRepeated { edge: w[0] });
                }
            }
            for e in &declared_leave {
                if !host.contains_key(e) {
                    failures.push(Finding::LeaveNotInHost { edge: *e });
                } else if let Some((_, blocks)) = uses.get(e) {
                    if host[e] == 1 {
                        failures.push(Finding::LeaveOverlapsBlock {
                            edge: *e,
                            blocks: blocks.clone(),
                        });
                    }
                }
            }
            if declared_leave != actual_leave {
                failures.push(Finding::LeaveMismatch {
                    declared: declared_leave.clone(),
                    actual: actual_leave.clone(),
                });
            }
        }
        _ if !declared_leave.is_empty() => failures.push(Finding::UnexpectedLeave {
            count: declared_leave.len(),
        }),
        _ => {}
    }
    match d.kind {
        DesignKind::Covering => {
            for e in &declared_padding {
                if !host.contains_key(e) {
                    failures.push(Finding::PaddingNotInHost { edge: *e });
                }
            }
            if declared_padding != actual_padding {
                failures.push(Finding::PaddingMismatch {
                    declared: declared_padding.clone(),
                    actual: actual_padding.clone(),
                });
            }
        }
        _ if !declared_padding.is_empty() => failures.push(Finding::UnexpectedPadding {
            count: declared_padding.len(),
        }),
        _ => {}
    }

    // 2p + 3q must equal the number of block-edge uses at each vertex.
    let mut host_degree: BTreeMap<Vertex, i64> = BTreeMap::new();
    for (&(a, b), &m) in &host {
        *host_degree.entry(a).or_insert(0) += m as i64;
        *host_degree.entry(b).or_insert(0) += m as i64;
    }
    for &(a, b) in &actual_leave {
        *host_degree.entry(a).or_insert(0) -= 1;
        *host_degree.entry(b).or_insert(0) -= 1;
    }
    for &(a, b) in &actual_padding {
        *host_degree.entry(a).or_insert(0) += 1;
        *host_degree.entry(b).or_insert(0) += 1;
    }
    if failures.is_empty() {
        for inc in incidence.values() {
            let expected = host_degree.get(&inc.vertex).copied().unwrap_or(0);
            if 2 * inc.hexagons as i64 + 3 * inc.prisms as i64 != expected {
                failures.push(Finding::IncidenceMismatch {
                    vertex: inc.vertex,
                    hexagons: inc.hexagons,
                    prisms: inc.prisms,
                    expected_degree: expected,
                });
            }
        }
    }

    VerificationReport {
        valid: failures.is_empty(),
        kind: d.kind.as_str().to_string(),
        failures,
        hexagon_count,
        prism_count,
        leave: actual_leave,
        padding: actual_padding,
        incidence: incidence.into_values().collect(),
    }
}

/// Per-vertex `(hexagons, prisms)` containing each host vertex.
pub fn incidence_table(d: &Design) -> Vec<Incidence> {
    let mut table: BTreeMap<Vertex, Incidence> = d
        .host
        .vertices()
        .into_iter()
        .map(|v| {
            (
                v,
                Incidence {
                    vertex: v,
                    ..Default::default()
                },
            )
        })
        .collect();
    for b in &d.blocks {
        for v in raw_vertices(b) {
            let slot = table.entry(v).or_insert(Incidence {
                vertex: v,
                ..Default::default()
            });
            match b {
                Block::Hexagon(_) => slot.hexagons += 1,
                Block::Prism(..) => slot.prisms += 1,
            }
        }
    }
    table.into_values().collect()
}
