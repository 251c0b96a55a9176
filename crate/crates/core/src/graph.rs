//! Vertices, edges, hosts, the two block shapes and designs built from them.
//!
//! A hexagon `(a,b,c,d,e,f)` is the 6-cycle `a-b-c-d-e-f-a`. A prism
//! `[a,b,c;d,e,f]` is the complement of a 6-cycle: triangles `{a,b,c}` and
//! `{d,e,f}` joined by the rungs `ad`, `be`, `cf`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0}-{0} is a loop")]
    Loop(Vertex),
    #[error("block {0} repeats a vertex")]
    RepeatedVertex(Block),
    #[error("host is malformed: {0}")]
    MalformedHost(String),
    #[error("relabeling is not a bijection on the host vertex set: {0}")]
    NotBijective(String),
}

/// Unordered pair of distinct vertices, stored as `(min, max)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a));
        }
        Ok(Self::of(a, b))
    }

    /// Caller guarantees `a != b`.
    #[inline]
    pub(crate) fn of(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    #[inline]
    pub fn lo(self) -> Vertex {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// Colex pairing `hi(hi-1)/2 + lo`; dense over the edges of `K_n` for any `n`.
    #[inline]
    pub fn index(self) -> usize {
        let hi = self.hi as usize;
        hi * (hi - 1) / 2 + self.lo as usize
    }

    pub fn from_index(index: usize) -> Self {
        // Largest hi with hi(hi-1)/2 <= index.
        let mut hi = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
        while hi * (hi - 1) / 2 > index {
            hi -= 1;
        }
        while (hi + 1) * hi / 2 <= index {
            hi += 1;
        }
        let lo = index - hi * (hi - 1) / 2;
        Edge {
            lo: lo as Vertex,
            hi: hi as Vertex,
        }
    }

    pub fn map(self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Edge::of(f(self.lo), f(self.hi))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Number of edges of `K_n`.
pub fn pair_count(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Edge set backed by a bitset over [`Edge::index`].
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_order(n: u32) -> Self {
        let bits = pair_count(n as u64) as usize;
        EdgeSet {
            words: vec![0; bits.div_ceil(64)],
            len: 0,
        }
    }

    pub fn complete(n: u32) -> Self {
        let mut set = Self::with_order(n);
        for hi in 1..n {
            for lo in 0..hi {
                set.insert(Edge::of(lo, hi));
            }
        }
        set
    }

    /// Returns `true` if the edge was not present.
    pub fn insert(&mut self, e: Edge) -> bool {
        let i = e.index();
        let (w, b) = (i / 64, i % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        self.len += fresh as usize;
        fresh
    }

    /// Returns `true` if the edge was present.
    pub fn remove(&mut self, e: Edge) -> bool {
        let i = e.index();
        let (w, b) = (i / 64, i % 64);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.len -= 1;
        true
    }

    pub fn contains(&self, e: Edge) -> bool {
        let i = e.index();
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Edges in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(Edge::from_index(wi * 64 + b))
            })
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Host {
    /// `K_n` on `{0, ..., n-1}`.
    Complete(u32),
    CompleteBipartite {
        left: Vec<Vertex>,
        right: Vec<Vertex>,
    },
    /// Edge multiset; each listed occurrence has multiplicity one.
    Explicit(Vec<Edge>),
}

impl Host {
    pub fn bipartite(
        left: impl IntoIterator<Item = Vertex>,
        right: impl IntoIterator<Item = Vertex>,
    ) -> Self {
        Host::CompleteBipartite {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            Host::Complete(_) => Ok(()),
            Host::CompleteBipartite { left, right } => {
                let l: BTreeSet<_> = left.iter().collect();
                let r: BTreeSet<_> = right.iter().collect();
                if l.len() != left.len() || r.len() != right.len() {
                    return Err(GraphError::MalformedHost(
                        "a bipartite side repeats a vertex".into(),
                    ));
                }
                if let Some(v) = l.intersection(&r).next() {
                    return Err(GraphError::MalformedHost(format!(
                        "vertex {v} lies on both bipartite sides"
                    )));
                }
                Ok(())
            }
            Host::Explicit(_) => Ok(()),
        }
    }

    /// Sorted vertex set.
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Host::Complete(n) => (0..*n).collect(),
            Host::CompleteBipartite { left, right } => {
                let mut vs: Vec<_> = left.iter().chain(right).copied().collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
            Host::Explicit(edges) => {
                let mut vs: Vec<_> = edges.iter().flat_map(|e| [e.lo, e.hi]).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Host::Complete(n) => pair_count(*n as u64) as usize,
            Host::CompleteBipartite { left, right } => left.len() * right.len(),
            Host::Explicit(edges) => edges.len(),
        }
    }

    /// Largest vertex label plus one.
    pub fn label_bound(&self) -> usize {
        self.vertices().last().map_or(0, |&v| v as usize + 1)
    }

    fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Host {
        match self {
            Host::Complete(n) => Host::Complete(*n),
            Host::CompleteBipartite { left, right } => Host::CompleteBipartite {
                left: left.iter().map(|&v| f(v)).collect(),
                right: right.iter().map(|&v| f(v)).collect(),
            },
            Host::Explicit(edges) => Host::Explicit(edges.iter().map(|e| e.map(&f)).collect()),
        }
    }
}

/// Edge multiset of a host, sorted.
pub fn host_edges(host: &Host) -> Vec<Edge> {
    match host {
        Host::Complete(n) => {
            let mut edges = Vec::with_capacity(host.edge_count());
            for lo in 0..*n {
                for hi in lo + 1..*n {
                    edges.push(Edge::of(lo, hi));
                }
            }
            edges
        }
        Host::CompleteBipartite { left, right } => {
            let mut edges: Vec<_> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| Edge::of(a, b)))
                .collect();
            edges.sort_unstable();
            edges
        }
        Host::Explicit(edges) => {
            let mut edges = edges.clone();
            edges.sort_unstable();
            edges
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Hexagon,
    Prism,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Hexagon => "hexagon",
            BlockKind::Prism => "prism",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Hexagon([Vertex; 6]),
    Prism([Vertex; 3], [Vertex; 3]),
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Hexagon([a, b, c, d, e, g]) => write!(f, "({a},{b},{c},{d},{e},{g})"),
            Block::Prism([a, b, c], [d, e, g]) => write!(f, "[{a},{b},{c};{d},{e},{g}]"),
        }
    }
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Hexagon(_) => BlockKind::Hexagon,
            Block::Prism(..) => BlockKind::Prism,
        }
    }

    /// The six vertices in tuple order (first triple, then second, for prisms).
    pub fn vertices(&self) -> [Vertex; 6] {
        match *self {
            Block::Hexagon(vs) => vs,
            Block::Prism([a, b, c], [d, e, f]) => [a, b, c, d, e, f],
        }
    }

    pub fn has_distinct_vertices(&self) -> bool {
        let mut vs = self.vertices();
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Block::Hexagon(_) => 6,
            Block::Prism(..) => 9,
        }
    }

    /// Edge list without the distinctness check; only meaningful for valid blocks.
    pub(crate) fn edges_unchecked(&self) -> Vec<Edge> {
        match *self {
            Block::Hexagon([a, b, c, d, e, f]) => vec![
                Edge::of(a, b),
                Edge::of(b, c),
                Edge::of(c, d),
                Edge::of(d, e),
                Edge::of(e, f),
                Edge::of(a, f),
            ],
            Block::Prism([a, b, c], [d, e, f]) => vec![
                Edge::of(a, b),
                Edge::of(b, c),
                Edge::of(a, c),
                Edge::of(d, e),
                Edge::of(e, f),
                Edge::of(d, f),
                Edge::of(a, d),
                Edge::of(b, e),
                Edge::of(c, f),
            ],
        }
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Block {
        match *self {
            Block::Hexagon(vs) => Block::Hexagon(vs.map(f)),
            Block::Prism(t, s) => Block::Prism(t.map(&f), s.map(&f)),
        }
    }
}

/// Edge set of a block in the order of the defining formula.
pub fn block_edges(b: &Block) -> Result<Vec<Edge>, GraphError> {
    if !b.has_distinct_vertices() {
        return Err(GraphError::RepeatedVertex(*b));
    }
    Ok(b.edges_unchecked())
}

/// Canonical representative of a valid block.
///
/// Hexagons take the lexicographically least of their 12 rotations and
/// reflections. Prisms put the triangle holding the smallest vertex first,
/// sort it, and permute the second triangle so the rungs stay positional.
pub fn canonical_form(b: &Block) -> Block {
    match *b {
        Block::Hexagon(vs) => {
            let mut best = vs;
            for start in 0..6 {
                let fwd: [Vertex; 6] = std::array::from_fn(|i| vs[(start + i) % 6]);
                let back: [Vertex; 6] = std::array::from_fn(|i| vs[(start + 6 - i) % 6]);
                best = best.min(fwd).min(back);
            }
            Block::Hexagon(best)
        }
        Block::Prism(t, s) => {
            let (t, s) = if t.iter().min() < s.iter().min() {
                (t, s)
            } else {
                (s, t)
            };
            let mut rungs = [(t[0], s[0]), (t[1], s[1]), (t[2], s[2])];
            rungs.sort_unstable();
            Block::Prism(rungs.map(|r| r.0), rungs.map(|r| r.1))
        }
    }
}

/// Identifies a hexagon or prism from its edge set; `None` for anything else.
pub fn recognize(edges: &[Edge]) -> Option<Block> {
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != 6 && edges.len() != 9 {
        return None;
    }
    let mut verts: Vec<Vertex> = edges.iter().flat_map(|e| [e.lo, e.hi]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != 6 {
        return None;
    }
    let local = |v: Vertex| verts.binary_search(&v).unwrap();
    let mut adj = [[false; 6]; 6];
    for e in &edges {
        let (a, b) = (local(e.lo), local(e.hi));
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let degree = |a: usize| adj[a].iter().filter(|&&x| x).count();

    if edges.len() == 6 {
        if (0..6).any(|a| degree(a) != 2) {
            return None;
        }
        // Walk the cycle from local vertex 0; a 2-regular graph on 6 vertices is
        // a hexagon exactly when this walk visits every vertex.
        let mut cycle = [0usize; 6];
        let mut prev = usize::MAX;
        for i in 1..6 {
            let cur = cycle[i - 1];
            let next = (0..6).find(|&x| adj[cur][x] && x != prev)?;
            if next == 0 {
                return None;
            }
            prev = cur;
            cycle[i] = next;
        }
        if !adj[cycle[5]][0] {
            return None;
        }
        return Some(canonical_form(&Block::Hexagon(cycle.map(|i| verts[i]))));
    }

    if (0..6).any(|a| degree(a) != 3) {
        return None;
    }
    let mut triangles = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                if adj[a][b] && adj[b][c] && adj[a][c] {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    if triangles.len() != 2 {
        return None;
    }
    let (t, s) = (triangles[0], triangles[1]);
    if t.iter().any(|x| s.contains(x)) {
        return None;
    }
    // Cubic with two disjoint triangles: the remaining three edges are rungs.
    let partner = |a: usize| s.iter().copied().find(|&b| adj[a][b]);
    let rungs = [partner(t[0])?, partner(t[1])?, partner(t[2])?];
    Some(canonical_form(&Block::Prism(
        t.map(|i| verts[i]),
        rungs.map(|i| verts[i]),
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DesignKind {
    /// Partition into hexagons and prisms, at least one of each.
    Decomposition,
    /// Edge-disjoint blocks, at least one of each; uncovered edges form the leave.
    Packing,
    /// Every edge covered, at least one of each; repeated uses form the padding.
    Covering,
    /// Partition into hexagons only.
    HexagonDecomposition,
    /// Partition into prisms only.
    PrismDecomposition,
}

impl DesignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignKind::Decomposition => "decomposition",
            DesignKind::Packing => "packing",
            DesignKind::Covering => "covering",
            DesignKind::HexagonDecomposition => "hexagon-decomposition",
            DesignKind::PrismDecomposition => "prism-decomposition",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "decomposition" => DesignKind::Decomposition,
            "packing" => DesignKind::Packing,
            "covering" => DesignKind::Covering,
            "hexagon-decomposition" => DesignKind::HexagonDecomposition,
            "prism-decomposition" => DesignKind::PrismDecomposition,
            _ => return None,
        })
    }

    /// Whether the kind demands at least one hexagon and at least one prism.
    pub fn is_mixed(self) -> bool {
        matches!(
            self,
            DesignKind::Decomposition | DesignKind::Packing | DesignKind::Covering
        )
    }
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub host: Host,
    pub kind: DesignKind,
    pub blocks: Vec<Block>,
    /// Sorted; empty unless `kind` is `Packing`.
    pub leave: Vec<Edge>,
    /// Sorted multiset; empty unless `kind` is `Covering`.
    pub padding: Vec<Edge>,
}

impl Design {
    pub fn new(host: Host, kind: DesignKind, blocks: Vec<Block>) -> Self {
        Design {
            host,
            kind,
            blocks,
            leave: Vec::new(),
            padding: Vec::new(),
        }
    }

    /// `(hexagons, prisms)`.
    pub fn block_counts(&self) -> (usize, usize) {
        let hex = self
            .blocks
            .iter()
            .filter(|b| b.kind() == BlockKind::Hexagon)
            .count();
        (hex, self.blocks.len() - hex)
    }

    pub fn covered_edge_count(&self) -> usize {
        self.blocks.iter().map(Block::edge_count).sum()
    }
}

/// Relabels every block, leave and padding edge through `perm`, indexed by old
/// label. `perm` must restrict to a bijection of the host vertex set.
pub fn relabel_design(d: &Design, perm: &[Vertex]) -> Result<Design, GraphError> {
    let vertices = d.host.vertices();
    if perm.len() < d.host.label_bound() {
        return Err(GraphError::NotBijective(format!(
            "map covers {} labels but the host uses labels up to {}",
            perm.len(),
            d.host.label_bound().saturating_sub(1)
        )));
    }
    let mut image: Vec<Vertex> = vertices.iter().map(|&v| perm[v as usize]).collect();
    image.sort_unstable();
    if image != vertices {
        return Err(GraphError::NotBijective(
            "image differs from the host vertex set".into(),
        ));
    }
    let f = |v: Vertex| perm[v as usize];
    let mut leave: Vec<Edge> = d.leave.iter().map(|e| e.map(f)).collect();
    let mut padding: Vec<Edge> = d.padding.iter().map(|e| e.map(f)).collect();
    leave.sort_unstable();
    padding.sort_unstable();
    Ok(Design {
        host: d.host.relabel(f),
        kind: d.kind,
        blocks: d.blocks.iter().map(|b| b.map(f)).collect(),
        leave,
        padding,
    })
}

/// Every labeled hexagon and prism on the given six vertices (60 of each).
pub fn all_blocks_on(vs: [Vertex; 6]) -> Vec<Block> {
    let mut seen = BTreeSet::new();
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    loop {
        let p = perm.map(|i| vs[i]);
        seen.insert(canonical_form(&Block::Hexagon(p)));
        seen.insert(canonical_form(&Block::Prism(
            [p[0], p[1], p[2]],
            [p[3], p[4], p[5]],
        )));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    seen.into_iter().collect()
}

pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
