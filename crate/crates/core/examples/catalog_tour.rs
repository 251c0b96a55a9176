//! Lists the bundled designs with their block counts, leaves and paddings.

use hexprism::catalog::{get, keys};
use hexprism::verify_design;

fn main() {
    for key in keys() {
        let d = get(key).expect("listed keys resolve");
        let (x, y) = d.block_counts();
        let r = verify_design(d);
        println!(
            "{:<18} {:>3} hexagons {:>3} prisms  leave {:?}  padding {:?}  {}",
            key.to_string(),
            x,
            y,
            r.leave,
            r.padding,
            if r.valid { "ok" } else { "INVALID" }
        );
    }
}
