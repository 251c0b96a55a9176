//! Hexagon decompositions of `K_{m,n}` tiled from two small seeds.

use hexprism::bipartite::{c6_decompose_bipartite, side_partition, BipartiteSpec};
use hexprism::verify_design;

fn main() {
    for (m, n) in [(6, 4), (12, 14), (8, 18), (18, 20), (5, 6), (4, 8)] {
        let spec = BipartiteSpec::new(0..m, m..m + n);
        match c6_decompose_bipartite(&spec) {
            Ok(d) => {
                let short = if m % 6 == 0 { n } else { m };
                println!(
                    "K_{{{m},{n}}}: {} hexagons, other side cut as {:?}, {}",
                    d.blocks.len(),
                    side_partition(short as usize).unwrap(),
                    if verify_design(&d).valid {
                        "valid"
                    } else {
                        "INVALID"
                    }
                );
            }
            Err(e) => println!("{e}"),
        }
    }
}
