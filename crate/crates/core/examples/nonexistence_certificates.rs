//! Certifies that `K_7`, `K_9` and `K_10` have no hexagon/prism decomposition,
//! once by counting and once by enumeration.
//!
//! `K_10` enumerates a few hundred million prism triples; use `--release`.
//!
//! ```text
//! cargo run --release --example nonexistence_certificates -- 7 9
//! ```

use std::time::Instant;

use hexprism::search::confirm_nonexistence;

fn main() {
    let orders: Vec<u32> = match std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<Vec<u32>, _>>()
    {
        Ok(v) if !v.is_empty() => v,
        _ => vec![7, 9, 10],
    };
    for n in orders {
        let start = Instant::now();
        let report = confirm_nonexistence(n).expect("one of 7, 9, 10");
        print!("{report}");
        println!("[{:.2?}]\n", start.elapsed());
    }
}
