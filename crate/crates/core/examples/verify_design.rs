//! Verifies a design file, or shows the verifier rejecting a corrupted design.
//!
//! ```text
//! cargo run --example verify_design -- design.json
//! cargo run --example verify_design
//! ```

use hexprism::construct::multidecompose;
use hexprism::format::parse_design;
use hexprism::{verify_design, Block};

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable design file");
        let design = parse_design(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        print!("{}", verify_design(&design));
        return;
    }

    let mut design = multidecompose(12).expect("K_12 decomposes");
    println!("{}", verify_design(&design));

    // Overwrite the last hexagon with a copy of the first.
    let last = design
        .blocks
        .iter()
        .rposition(|b| matches!(b, Block::Hexagon(_)))
        .unwrap();
    design.blocks[last] = design.blocks[0];
    print!("{}", verify_design(&design));
}
