//! Bundled designs: explicit small designs in 0-based labels, plus four seed
//! designs found by search and frozen as data.
//!
//! Every entry is checked by [`verify_design`] the first time the catalog is
//! touched; a bad entry panics rather than leaking into a construction.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bipartite::{c6_decompose_bipartite, BipartiteSpec};
use crate::format::parse_design;
use crate::graph::{Block, Design, DesignKind, Edge, Host, Vertex};
use crate::search::{search_multidecomposition, BlockTypes, SearchConfig, SearchOutcome};
use crate::verify::verify_design;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogKey {
    Decomposition(u32),
    Packing(u32),
    Covering(u32),
    HexagonDecomposition(u32),
    PrismDecomposition(u32),
    /// Sides `(left, right)`.
    BipartiteHexagonDecomposition(u32, u32),
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Decomposition(n) => write!(f, "decomposition-{n}"),
            CatalogKey::Packing(n) => write!(f, "packing-{n}"),
            CatalogKey::Covering(n) => write!(f, "covering-{n}"),
            CatalogKey::HexagonDecomposition(n) => write!(f, "hexagons-{n}"),
            CatalogKey::PrismDecomposition(n) => write!(f, "prisms-{n}"),
            CatalogKey::BipartiteHexagonDecomposition(m, n) => write!(f, "bipartite-{m}x{n}"),
        }
    }
}

impl CatalogKey {
    /// Inverse of `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        let (kind, order) = s.rsplit_once('-')?;
        if kind == "bipartite" {
            let (m, n) = order.split_once('x')?;
            return Some(CatalogKey::BipartiteHexagonDecomposition(
                m.parse().ok()?,
                n.parse().ok()?,
            ));
        }
        let n = order.parse().ok()?;
        Some(match kind {
            "decomposition" => CatalogKey::Decomposition(n),
            "packing" => CatalogKey::Packing(n),
            "covering" => CatalogKey::Covering(n),
            "hexagons" => CatalogKey::HexagonDecomposition(n),
            "prisms" => CatalogKey::PrismDecomposition(n),
            _ => return None,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("no catalog entry {0}")]
    UnknownKey(CatalogKey),
}

/// The seed designs the constructions need but the literature only cites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedKey {
    /// `K_9` into 6 hexagons.
    Hexagons9,
    /// `K_10` into 5 prisms.
    Prisms10,
    /// `K_{6,4}` on `{0..5} | {6..9}` into 4 hexagons.
    Bipartite6x4,
    /// `K_{6,6}` on `{0..5} | {6..11}` into 6 hexagons.
    Bipartite6x6,
}

impl DerivedKey {
    pub const ALL: [DerivedKey; 4] = [
        DerivedKey::Hexagons9,
        DerivedKey::Prisms10,
        DerivedKey::Bipartite6x4,
        DerivedKey::Bipartite6x6,
    ];

    pub fn catalog_key(self) -> CatalogKey {
        match self {
            DerivedKey::Hexagons9 => CatalogKey::HexagonDecomposition(9),
            DerivedKey::Prisms10 => CatalogKey::PrismDecomposition(10),
            DerivedKey::Bipartite6x4 => CatalogKey::BipartiteHexagonDecomposition(6, 4),
            DerivedKey::Bipartite6x6 => CatalogKey::BipartiteHexagonDecomposition(6, 6),
        }
    }

    pub fn name(self) -> String {
        self.catalog_key().to_string()
    }

    pub fn file_name(self) -> String {
        format!("{}.json", self.name())
    }

    pub fn host(self) -> Host {
        match self {
            DerivedKey::Hexagons9 => Host::Complete(9),
            DerivedKey::Prisms10 => Host::Complete(10),
            DerivedKey::Bipartite6x4 => Host::bipartite(0..6, 6..10),
            DerivedKey::Bipartite6x6 => Host::bipartite(0..6, 6..12),
        }
    }

    pub fn config(self) -> SearchConfig {
        match self {
            DerivedKey::Hexagons9 => SearchConfig::only(BlockTypes::Hexagon).with_targets(6, 0),
            DerivedKey::Prisms10 => SearchConfig::only(BlockTypes::Prism).with_targets(0, 5),
            DerivedKey::Bipartite6x4 => SearchConfig::only(BlockTypes::Hexagon),
            DerivedKey::Bipartite6x6 => {
                SearchConfig::only(BlockTypes::Hexagon).with_budget(1_000_000)
            }
        }
    }

    fn data(self) -> &'static str {
        match self {
            DerivedKey::Hexagons9 => include_str!("../data/derived/hexagons-9.json"),
            DerivedKey::Prisms10 => include_str!("../data/derived/prisms-10.json"),
            DerivedKey::Bipartite6x4 => include_str!("../data/derived/bipartite-6x4.json"),
            DerivedKey::Bipartite6x6 => include_str!("../data/derived/bipartite-6x6.json"),
        }
    }
}

/// Runs the search that originally produced a frozen seed.
pub fn seed_search(key: DerivedKey) -> SearchOutcome {
    search_multidecomposition(&key.host(), &key.config())
        .expect("seed search configurations are well-formed")
}

const TRANSCRIPTIONS: [(CatalogKey, &str); 11] = [
    (
        CatalogKey::Decomposition(13),
        include_str!("../data/decomposition-13.json"),
    ),
    (
        CatalogKey::Decomposition(15),
        include_str!("../data/decomposition-15.json"),
    ),
    (
        CatalogKey::Decomposition(19),
        include_str!("../data/decomposition-19.json"),
    ),
    (
        CatalogKey::Packing(7),
        include_str!("../data/packing-7.json"),
    ),
    (
        CatalogKey::Packing(8),
        include_str!("../data/packing-8.json"),
    ),
    (
        CatalogKey::Packing(9),
        include_str!("../data/packing-9.json"),
    ),
    (
        CatalogKey::Packing(11),
        include_str!("../data/packing-11.json"),
    ),
    (
        CatalogKey::Packing(17),
        include_str!("../data/packing-17.json"),
    ),
    (
        CatalogKey::Covering(7),
        include_str!("../data/covering-7.json"),
    ),
    (
        CatalogKey::Covering(8),
        include_str!("../data/covering-8.json"),
    ),
    (
        CatalogKey::Covering(11),
        include_str!("../data/covering-11.json"),
    ),
];

/// Blocks and padding printed for the `K_17` covering, without the two
/// hexagon decompositions it delegates.
const COVERING_17_LISTED: &str = include_str!("../data/covering-17-listed.json");

/// Every catalog key, in listing order.
pub fn keys() -> Vec<CatalogKey> {
    let mut keys = vec![CatalogKey::Decomposition(6)];
    keys.extend(TRANSCRIPTIONS.iter().map(|(k, _)| *k));
    keys.push(CatalogKey::Covering(17));
    keys.extend(DerivedKey::ALL.map(DerivedKey::catalog_key));
    keys.sort();
    keys
}

pub fn get(key: CatalogKey) -> Result<&'static Design, CatalogError> {
    if let Some(d) = DerivedKey::ALL.into_iter().find(|d| d.catalog_key() == key) {
        return Ok(derived_base(d));
    }
    entries()
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, d)| d)
        .ok_or(CatalogError::UnknownKey(key))
}

/// One hexagon plus its complementary prism on `{0..5}`.
pub fn k6_multidecomposition() -> Design {
    Design::new(
        Host::Complete(6),
        DesignKind::Decomposition,
        vec![
            Block::Hexagon([0, 1, 2, 3, 4, 5]),
            Block::Prism([0, 2, 4], [3, 5, 1]),
        ],
    )
}

pub fn derived_base(key: DerivedKey) -> &'static Design {
    static DERIVED: OnceLock<Vec<(DerivedKey, Design)>> = OnceLock::new();
    let all = DERIVED.get_or_init(|| {
        DerivedKey::ALL
            .into_iter()
            .map(|k| (k, load(&k.name(), k.data())))
            .collect()
    });
    &all.iter()
        .find(|(k, _)| *k == key)
        .expect("all keys loaded")
        .1
}

fn entries() -> &'static [(CatalogKey, Design)] {
    static ENTRIES: OnceLock<Vec<(CatalogKey, Design)>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let mut all = vec![(CatalogKey::Decomposition(6), k6_multidecomposition())];
        for (key, text) in TRANSCRIPTIONS {
            all.push((key, load(&key.to_string(), text)));
        }
        all.push((CatalogKey::Covering(17), covering_17()));
        for (key, d) in &all {
            check(&key.to_string(), d);
        }
        all
    })
}

fn load(name: &str, text: &str) -> Design {
    let d = parse_design(text).unwrap_or_else(|e| panic!("catalog entry {name}: {e}"));
    check(name, &d);
    d
}

fn check(name: &str, d: &Design) {
    let report = verify_design(d);
    assert!(
        report.valid,
        "catalog entry {name} fails verification:\n{report}"
    );
}

/// The `K_17` covering: the listed blocks, a hexagon decomposition of the
/// `K_9` on `{8..16}`, and one of the `K_{8,6}` between `{0..7}` and `{11..16}`.
fn covering_17() -> Design {
    let mut d = parse_design(COVERING_17_LISTED).expect("bundled data parses");
    let k9 = derived_base(DerivedKey::Hexagons9);
    let shift: Vec<Vertex> = (8..17).collect();
    let b1 = place(k9, &shift);
    let b2 =
        c6_decompose_bipartite(&BipartiteSpec::new(0..8, 11..17)).expect("K_{8,6} is admissible");
    let mut blocks = b1.blocks;
    blocks.extend(b2.blocks);
    blocks.append(&mut d.blocks);
    d.blocks = blocks;
    d
}

/// Blocks, leave and padding of a design on `{0..k-1}` moved onto `labels`.
pub(crate) struct Placed {
    pub blocks: Vec<Block>,
    pub leave: Vec<Edge>,
    pub padding: Vec<Edge>,
}

pub(crate) fn place(d: &Design, labels: &[Vertex]) -> Placed {
    let f = |v: Vertex| labels[v as usize];
    Placed {
        blocks: d.blocks.iter().map(|b| b.map(f)).collect(),
        leave: d.leave.iter().map(|e| e.map(f)).collect(),
        padding: d.padding.iter().map(|e| e.map(f)).collect(),
    }
}
