//! Backtracking search for decompositions of small complete graphs.
//!
//! ```text
//! cargo run --release --example search_small_orders
//! ```

use std::time::Instant;

use hexprism::search::{search_multidecomposition, BlockTypes, SearchConfig};
use hexprism::{verify_design, Host};

fn main() {
    let runs = [
        (6, SearchConfig::default()),
        (7, SearchConfig::default()),
        (12, SearchConfig::default().with_budget(1_000_000)),
        (13, SearchConfig::default().with_budget(1_000_000)),
        (9, SearchConfig::only(BlockTypes::Hexagon)),
        (10, SearchConfig::only(BlockTypes::Prism)),
        (9, SearchConfig::default()),
    ];
    for (n, cfg) in runs {
        let start = Instant::now();
        let out = search_multidecomposition(&Host::Complete(n), &cfg).expect("valid request");
        println!(
            "K_{n:<3} {:?} blocks: {out} [{:.2?}]",
            cfg.blocks,
            start.elapsed()
        );
        if let Some(d) = out.found() {
            assert!(verify_design(d).valid);
        }
    }
}
