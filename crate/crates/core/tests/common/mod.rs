//! Test-side oracle: rebuilds edge multisets straight from block tuples and
//! checks a design against its host without touching the library verifier.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hexprism::{Block, Design, DesignKind, Host};

pub type Pair = (u32, u32);

pub fn pair(a: u32, b: u32) -> Pair {
    (a.min(b), a.max(b))
}

pub fn host_pairs(host: &Host) -> Vec<Pair> {
    match host {
        Host::Complete(n) => (0..*n)
            .flat_map(|a| (a + 1..*n).map(move |b| (a, b)))
            .collect(),
        Host::CompleteBipartite { left, right } => left
            .iter()
            .flat_map(|&a| right.iter().map(move |&b| pair(a, b)))
            .collect(),
        Host::Explicit(edges) => edges
            .iter()
            .map(|e| e.endpoints())
            .map(|(a, b)| pair(a, b))
            .collect(),
    }
}

/// Hexagon: consecutive tuple entries. Prism: the complement, inside its six
/// vertices, of the hexagon `(a, e, c, d, b, f)`.
pub fn oracle_edges(b: &Block) -> Vec<Pair> {
    match *b {
        Block::Hexagon(v) => (0..6).map(|i| pair(v[i], v[(i + 1) % 6])).collect(),
        Block::Prism([a, b, c], [d, e, f]) => {
            let hex: BTreeSet<Pair> = oracle_edges(&Block::Hexagon([a, e, c, d, b, f]))
                .into_iter()
                .collect();
            let vs = [a, b, c, d, e, f];
            let mut out = Vec::new();
            for i in 0..6 {
                for j in i + 1..6 {
                    let p = pair(vs[i], vs[j]);
                    if !hex.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
    }
}

fn distinct(b: &Block) -> bool {
    let vs: BTreeSet<u32> = b.vertices().into_iter().collect();
    vs.len() == 6
}

/// Leave and padding sizes of a design the oracle accepts.
#[derive(Debug, PartialEq, Eq)]
pub struct Accepted {
    pub hexagons: usize,
    pub prisms: usize,
    pub leave: usize,
    pub padding: usize,
}

pub fn oracle_check(d: &Design) -> Result<Accepted, String> {
    let host: BTreeSet<Pair> = host_pairs(&d.host).into_iter().collect();
    let mut uses: BTreeMap<Pair, usize> = host.iter().map(|&p| (p, 0)).collect();
    let (mut hexagons, mut prisms) = (0, 0);
    for (i, b) in d.blocks.iter().enumerate() {
        if !distinct(b) {
            return Err(format!("block {i} {b} repeats a vertex"));
        }
        match b {
            Block::Hexagon(_) => hexagons += 1,
            Block::Prism(..) => prisms += 1,
        }
        for p in oracle_edges(b) {
            *uses
                .get_mut(&p)
                .ok_or_else(|| format!("block {i} {b} uses non-host edge {p:?}"))? += 1;
        }
    }
    let uncovered: Vec<Pair> = uses
        .iter()
        .filter(|(_, &c)| c == 0)
        .map(|(&p, _)| p)
        .collect();
    let excess: Vec<Pair> = uses
        .iter()
        .flat_map(|(&p, &c)| std::iter::repeat_n(p, c.saturating_sub(1)))
        .collect();
    let leave: Vec<Pair> = d.leave.iter().map(|e| e.endpoints()).collect();
    let padding: Vec<Pair> = d.padding.iter().map(|e| e.endpoints()).collect();
    let mut sorted_padding = padding.clone();
    sorted_padding.sort_unstable();

    let exact = |what: &str| -> Result<(), String> {
        if !uncovered.is_empty() || !excess.is_empty() || !leave.is_empty() || !padding.is_empty() {
            return Err(format!(
                "{what}: {} uncovered, {} excess, stated leave {leave:?}, padding {padding:?}",
                uncovered.len(),
                excess.len()
            ));
        }
        Ok(())
    };
    match d.kind {
        DesignKind::Decomposition => {
            exact("decomposition")?;
            if hexagons == 0 || prisms == 0 {
                return Err("a multidecomposition needs both shapes".into());
            }
        }
        DesignKind::HexagonDecomposition => {
            exact("hexagon decomposition")?;
            if prisms > 0 {
                return Err("prism in a hexagon decomposition".into());
            }
        }
        DesignKind::PrismDecomposition => {
            exact("prism decomposition")?;
            if hexagons > 0 {
                return Err("hexagon in a prism decomposition".into());
            }
        }
        DesignKind::Packing => {
            if !excess.is_empty() || !padding.is_empty() {
                return Err(format!("packing reuses {excess:?}"));
            }
            let mut stated = leave.clone();
            stated.sort_unstable();
            if stated != uncovered {
                return Err(format!("stated leave {stated:?}, actual {uncovered:?}"));
            }
            if hexagons == 0 || prisms == 0 {
                return Err("a multipacking needs both shapes".into());
            }
        }
        DesignKind::Covering => {
            if !uncovered.is_empty() || !leave.is_empty() {
                return Err(format!("covering misses {uncovered:?}"));
            }
            if sorted_padding != excess {
                return Err(format!("stated padding {padding:?}, actual {excess:?}"));
            }
            if hexagons == 0 || prisms == 0 {
                return Err("a multicovering needs both shapes".into());
            }
        }
    }
    Ok(Accepted {
        hexagons,
        prisms,
        leave: leave.len(),
        padding: padding.len(),
    })
}

/// Checks `2 p_v + 3 q_v = deg(v) - deg_leave(v) + deg_padding(v)` at every
/// host vertex.
pub fn incidence_identity(d: &Design) -> Result<(), String> {
    let mut degree: BTreeMap<u32, i64> = BTreeMap::new();
    for (a, b) in host_pairs(&d.host) {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    for e in &d.leave {
        let (a, b) = e.endpoints();
        *degree.get_mut(&a).unwrap() -= 1;
        *degree.get_mut(&b).unwrap() -= 1;
    }
    for e in &d.padding {
        let (a, b) = e.endpoints();
        *degree.get_mut(&a).unwrap() += 1;
        *degree.get_mut(&b).unwrap() += 1;
    }
    let mut weight: BTreeMap<u32, i64> = degree.keys().map(|&v| (v, 0)).collect();
    for b in &d.blocks {
        let w = match b {
            Block::Hexagon(_) => 2,
            Block::Prism(..) => 3,
        };
        for v in b.vertices() {
            *weight
                .get_mut(&v)
                .ok_or_else(|| format!("vertex {v} outside host"))? += w;
        }
    }
    for (v, deg) in degree {
        if weight[&v] != deg {
            return Err(format!(
                "vertex {v}: 2p + 3q = {} but expected {deg}",
                weight[&v]
            ));
        }
    }
    Ok(())
}

/// `(n, kind)` pairs the constructions handle, for every `n` in the range.
pub fn constructible(range: std::ops::RangeInclusive<u32>) -> Vec<(u32, DesignKind)> {
    let mut out = Vec::new();
    for n in range {
        if n % 3 == 2 || matches!(n, 7 | 9 | 10) {
            out.push((n, DesignKind::Packing));
            out.push((n, DesignKind::Covering));
        } else {
            out.push((n, DesignKind::Decomposition));
        }
    }
    out
}
