//! Packings and coverings of `K_7` and `K_8` at a fixed leave or padding size.

use hexprism::search::{find_extremal, ExtremalKind, SearchConfig};
use hexprism::Host;

fn main() {
    let cfg = SearchConfig::default();
    for (n, kind, bound) in [
        (7, ExtremalKind::Packing, 3),
        (7, ExtremalKind::Packing, 6),
        (7, ExtremalKind::Covering, 3),
        (7, ExtremalKind::Covering, 6),
        (8, ExtremalKind::Packing, 1),
        (8, ExtremalKind::Covering, 2),
    ] {
        match find_extremal(&Host::Complete(n), kind, bound, &cfg) {
            Ok(out) => {
                print!("K_{n} {kind:?} with {bound}: {out}");
                if let Some(d) = out.found() {
                    print!(", leave {:?}, padding {:?}", d.leave, d.padding);
                }
                println!();
            }
            Err(e) => println!("K_{n} {kind:?} with {bound}: {e}"),
        }
    }
}
