//! The JSON design-file format and a human-readable text rendering.
//!
//! ```json
//! {
//!   "host": {"type":"complete","n":6},
//!   "kind": "decomposition",
//!   "blocks": [
//!     {"type":"hexagon","vertices":[0,1,2,3,4,5]},
//!     {"type":"prism","triangles":[[0,2,4],[3,5,1]]}
//!   ],
//!   "leave": [],
//!   "padding": []
//! }
//! ```
//!
//! Emission is deterministic: one block per line, edges as `[lo,hi]` in
//! sorted order. Text output is for people and is not parsed back.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Block, BlockKind, Design, DesignKind, Edge, GraphError, Host};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown design kind {0:?}")]
    UnknownKind(String),
    #[error("bad edge: {0}")]
    Edge(#[from] GraphError),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum HostFile {
    Complete { n: u32 },
    Bipartite { left: Vec<u32>, right: Vec<u32> },
    Explicit { edges: Vec<[u32; 2]> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum BlockFile {
    Hexagon { vertices: [u32; 6] },
    Prism { triangles: [[u32; 3]; 2] },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    host: HostFile,
    kind: String,
    blocks: Vec<BlockFile>,
    #[serde(default)]
    leave: Vec<[u32; 2]>,
    #[serde(default)]
    padding: Vec<[u32; 2]>,
}

fn host_file(host: &Host) -> HostFile {
    match host {
        Host::Complete(n) => HostFile::Complete { n: *n },
        Host::CompleteBipartite { left, right } => HostFile::Bipartite {
            left: left.clone(),
            right: right.clone(),
        },
        Host::Explicit(edges) => HostFile::Explicit {
            edges: edges.iter().map(|e| [e.lo(), e.hi()]).collect(),
        },
    }
}

fn block_file(b: &Block) -> BlockFile {
    match *b {
        Block::Hexagon(vertices) => BlockFile::Hexagon { vertices },
        Block::Prism(t, s) => BlockFile::Prism { triangles: [t, s] },
    }
}

fn edges(list: &[[u32; 2]]) -> Result<Vec<Edge>, FormatError> {
    let mut out = list
        .iter()
        .map(|&[a, b]| Edge::new(a, b))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    Ok(out)
}

pub fn parse_design(text: &str) -> Result<Design, FormatError> {
    let file: DesignFile = serde_json::from_str(text)?;
    let host = match file.host {
        HostFile::Complete { n } => Host::Complete(n),
        HostFile::Bipartite { left, right } => Host::CompleteBipartite { left, right },
        HostFile::Explicit { edges: list } => Host::Explicit(edges(&list)?),
    };
    let kind = DesignKind::parse(&file.kind).ok_or(FormatError::UnknownKind(file.kind))?;
    let blocks = file
        .blocks
        .into_iter()
        .map(|b| match b {
            BlockFile::Hexagon { vertices } => Block::Hexagon(vertices),
            BlockFile::Prism { triangles: [t, s] } => Block::Prism(t, s),
        })
        .collect();
    Ok(Design {
        host,
        kind,
        blocks,
        leave: edges(&file.leave)?,
        padding: edges(&file.padding)?,
    })
}

fn edge_array(list: &[Edge]) -> String {
    let pairs: Vec<[u32; 2]> = list.iter().map(|e| [e.lo(), e.hi()]).collect();
    serde_json::to_string(&pairs).expect("plain integers serialize")
}

pub fn emit_design(d: &Design) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"host\": {},", json(&host_file(&d.host)));
    let _ = writeln!(out, "  \"kind\": \"{}\",", d.kind.as_str());
    if d.blocks.is_empty() {
        out.push_str("  \"blocks\": [],\n");
    } else {
        out.push_str("  \"blocks\": [\n");
        for (i, b) in d.blocks.iter().enumerate() {
            let sep = if i + 1 == d.blocks.len() { "" } else { "," };
            let _ = writeln!(out, "    {}{sep}", json(&block_file(b)));
        }
        out.push_str("  ],\n");
    }
    let _ = writeln!(out, "  \"leave\": {},", edge_array(&d.leave));
    let _ = writeln!(out, "  \"padding\": {}", edge_array(&d.padding));
    out.push_str("}\n");
    out
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("design parts serialize")
}

pub fn render_text(d: &Design) -> String {
    let (hex, prism) = d.block_counts();
    let mut out = String::new();
    let host = match &d.host {
        Host::Complete(n) => format!("K_{n}"),
        Host::CompleteBipartite { left, right } => {
            format!(
                "K_{{{},{}}} on {:?} | {:?}",
                left.len(),
                right.len(),
                left,
                right
            )
        }
        Host::Explicit(edges) => format!("explicit graph with {} edges", edges.len()),
    };
    let _ = writeln!(out, "{} of {host}", d.kind);
    let _ = writeln!(
        out,
        "{} blocks: {hex} hexagons, {prism} prisms",
        d.blocks.len()
    );
    for kind in [BlockKind::Prism, BlockKind::Hexagon] {
        let line: Vec<String> = d
            .blocks
            .iter()
            .filter(|b| b.kind() == kind)
            .map(Block::to_string)
            .collect();
        if !line.is_empty() {
            let _ = writeln!(out, "{kind}s:");
            for chunk in line.chunks(6) {
                let _ = writeln!(out, "  {}", chunk.join(" "));
            }
        }
    }
    let list = |es: &[Edge]| es.iter().map(Edge::to_string).collect::<Vec<_>>().join(" ");
    if d.kind == DesignKind::Packing {
        let _ = writeln!(out, "leave ({}): {}", d.leave.len(), list(&d.leave));
    }
    if d.kind == DesignKind::Covering {
        let _ = writeln!(out, "padding ({}): {}", d.padding.len(), list(&d.padding));
    }
    out
}
