//! Tabulates existence, minimum leave and minimum padding by order.
//!
//! ```text
//! cargo run --example classify_orders -- 6 30
//! ```

use hexprism::classify;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<u32>().expect("integer bound"));
    let lo = args.next().unwrap_or(6);
    let hi = args.next().unwrap_or(30);

    println!(
        "{:>4} {:>6} {:>7} {:>6} {:>8}  block counts",
        "n", "edges", "design", "leave", "padding"
    );
    for n in lo..=hi {
        let r = classify(n).expect("orders start at 6");
        let counts: Vec<String> = r
            .block_solutions
            .iter()
            .map(|(x, y)| format!("{x}+{y}"))
            .collect();
        println!(
            "{:>4} {:>6} {:>7} {:>6} {:>8}  {}",
            n,
            r.edge_count,
            if r.decomposition_exists { "yes" } else { "no" },
            r.min_leave,
            r.min_padding,
            counts.join(" ")
        );
    }
}
