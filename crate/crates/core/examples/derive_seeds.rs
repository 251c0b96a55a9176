//! Re-derives the four search-found seed designs and writes them as design files.
//!
//! ```text
//! cargo run --release --example derive_seeds -- crates/core/data/derived
//! ```

use std::path::PathBuf;
use std::time::Instant;

use hexprism::catalog::{seed_search, DerivedKey};
use hexprism::format::emit_design;
use hexprism::verify_design;

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from);
    for key in DerivedKey::ALL {
        let start = Instant::now();
        let outcome = seed_search(key);
        let design = outcome.found().expect("seed designs exist");
        let report = verify_design(design);
        println!(
            "{:<28} {} in {:.2?} ({} nodes), verifier: {}",
            key.name(),
            outcome.label(),
            start.elapsed(),
            outcome.stats.nodes,
            if report.valid { "valid" } else { "INVALID" }
        );
        if let Some(dir) = &dir {
            let path = dir.join(key.file_name());
            std::fs::write(&path, emit_design(design)).expect("write seed file");
        }
    }
}
