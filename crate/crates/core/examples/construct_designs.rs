//! Builds a decomposition, a maximum packing and a minimum covering of `K_n`
//! and prints the join layout behind each.
//!
//! ```text
//! cargo run --example construct_designs -- 23
//! ```

use hexprism::construct::{construct, join_layout};
use hexprism::format::render_text;
use hexprism::{classify, verify_design, DesignKind};

fn main() {
    let n: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("order must be an integer"))
        .unwrap_or(20);
    let report = classify(n).expect("order is at least 6");

    let kinds = if report.decomposition_exists {
        vec![DesignKind::Decomposition]
    } else {
        vec![DesignKind::Packing, DesignKind::Covering]
    };
    for kind in kinds {
        match join_layout(n, kind) {
            Ok(layout) => println!("{layout}"),
            Err(_) => println!("K_{n} {kind}: taken whole from the catalog"),
        }
        let design = construct(n, kind).expect("construction succeeds");
        let check = verify_design(&design);
        assert!(check.valid, "{check}");
        print!("{}", render_text(&design));
        println!(
            "verifier: valid, leave {}, padding {}\n",
            check.leave.len(),
            check.padding.len()
        );
    }
}
