//! The three local moves used at the small exceptional orders.

use hexprism::construct::{hexagon_plus_factor, prism_minus_matching, prism_to_two_hexagons};
use hexprism::Block;

fn main() {
    let prism = Block::Prism([0, 1, 2], [3, 4, 5]);
    let hexagon = Block::Hexagon([0, 1, 2, 3, 4, 5]);

    let (h, matching) = prism_minus_matching(&prism).unwrap();
    println!("{prism} minus the matching {matching:?} leaves {h}");

    let (p, factor) = hexagon_plus_factor(&hexagon).unwrap();
    println!("{hexagon} plus {factor:?} is {p}");

    let (a, b, reused) = prism_to_two_hexagons(&prism).unwrap();
    println!("{prism} becomes {a} and {b}, reusing {reused:?}");
}
