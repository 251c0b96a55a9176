//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{constructible, incidence_identity, oracle_check, oracle_edges, pair};
use hexprism::bipartite::{c6_decompose_bipartite, BipartiteSpec};
use hexprism::catalog::{self, derived_base, seed_search, CatalogKey, DerivedKey};
use hexprism::construct::construct;
use hexprism::graph::{all_blocks_on, canonical_form, recognize, relabel_design};
use hexprism::search::{
    confirm_nonexistence, find_extremal, search_multidecomposition, BlockTypes, ExtremalKind,
    SearchConfig, SearchError, SearchResult,
};
use hexprism::{verify_design, Block, Design, DesignKind, Edge, Host};

type Check = Result<String, String>;
type Pairs = Vec<(u32, u32)>;
type Criterion = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

/// Library verifier and test oracle must both accept.
fn both_accept(d: &Design, label: &str) -> Result<common::Accepted, String> {
    let report = verify_design(d);
    ensure(report.valid, || {
        format!("{label}: verifier rejects:\n{report}")
    })?;
    oracle_check(d).map_err(|e| format!("{label}: oracle rejects: {e}"))
}

fn decomposition_sweep() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in (6..=200u32).filter(|n| n % 3 != 2 && !matches!(n, 7 | 9 | 10)) {
        let d = construct(n, DesignKind::Decomposition).map_err(|e| format!("K{n}: {e}"))?;
        ensure(d.kind == DesignKind::Decomposition, || {
            format!("K{n}: kind {}", d.kind)
        })?;
        let a = both_accept(&d, &format!("K{n}"))?;
        ensure(a.hexagons >= 1 && a.prisms >= 1, || format!("K{n}: {a:?}"))?;
        ensure(
            6 * a.hexagons + 9 * a.prisms == (n * (n - 1) / 2) as usize,
            || format!("K{n}: 6x + 9y mismatch"),
        )?;
        count += 1;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10), "sweep")?;
    Ok(format!("{count} orders in [6,200], {t:.2?}"))
}

fn expected_leave(n: u32) -> usize {
    match n {
        7 => 6,
        9 | 10 => 3,
        _ => 1,
    }
}

fn expected_padding(n: u32) -> usize {
    match n {
        7 => 6,
        9 | 10 => 3,
        _ => 2,
    }
}

fn extremal_sweep(kind: DesignKind) -> Check {
    let start = Instant::now();
    let orders: Vec<u32> = [7, 9, 10]
        .into_iter()
        .chain((8..=200).filter(|n| n % 3 == 2))
        .collect();
    for &n in &orders {
        let d = construct(n, kind).map_err(|e| format!("K{n} {kind}: {e}"))?;
        ensure(d.kind == kind, || format!("K{n}: kind {}", d.kind))?;
        let a = both_accept(&d, &format!("K{n} {kind}"))?;
        let (got, want) = match kind {
            DesignKind::Packing => (a.leave, expected_leave(n)),
            _ => (a.padding, expected_padding(n)),
        };
        ensure(got == want, || {
            format!("K{n} {kind}: size {got}, expected {want}")
        })?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10), "sweep")?;
    Ok(format!("{} orders, {t:.2?}", orders.len()))
}

fn nonexistence() -> Check {
    let mut notes = Vec::new();
    for (n, limit) in [(7, 1), (9, 60), (10, 600)] {
        let start = Instant::now();
        let r = confirm_nonexistence(n).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        ensure(r.analytic.rules_out, || {
            format!("K{n}: analytic branch inconclusive")
        })?;
        ensure(r.enumerative.rules_out, || {
            format!("K{n}: enumerative branch inconclusive")
        })?;
        ensure(r.nonexistent, || format!("K{n}: report does not conclude"))?;
        for case in &r.enumerative.cases {
            ensure(case.completions == 0, || format!("K{n}: completion found"))?;
        }
        within(t, Duration::from_secs(limit), &format!("K{n}"))?;
        notes.push(format!("K{n} {t:.2?}"));
    }
    Ok(notes.join(", "))
}

fn minimality_k7() -> Check {
    let cfg = SearchConfig::default();
    let out = find_extremal(&Host::Complete(7), ExtremalKind::Covering, 3, &cfg)
        .map_err(|e| e.to_string())?;
    ensure(out.result == SearchResult::ExhaustedNone, || {
        format!("covering with padding 3: {out}")
    })?;
    match find_extremal(&Host::Complete(7), ExtremalKind::Packing, 3, &cfg) {
        Err(SearchError::InconsistentBound(why)) => {
            ensure(why.contains("18 = 6x + 9y"), || format!("reason: {why}"))?;
            Ok(format!(
                "covering 3 exhausted in {} nodes; packing 3: {why}",
                out.stats.nodes
            ))
        }
        other => Err(format!("packing 3 not rejected: {other:?}")),
    }
}

/// 1-based edges as printed, shifted to 0-based.
fn shifted(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut v: Vec<_> = pairs.iter().map(|&(a, b)| pair(a - 1, b - 1)).collect();
    v.sort_unstable();
    v
}

fn transcriptions() -> Check {
    let star7: Vec<(u32, u32)> = (1..=6).map(|i| (i, 7)).collect();
    #[rustfmt::skip]
    let expected: [(CatalogKey, (usize, usize), Pairs, Pairs); 13] = [
        (CatalogKey::Decomposition(6), (1, 1), vec![], vec![]),
        (CatalogKey::Decomposition(13), (7, 4), vec![], vec![]),
        (CatalogKey::Decomposition(15), (10, 5), vec![], vec![]),
        (CatalogKey::Decomposition(19), (15, 9), vec![], vec![]),
        (CatalogKey::Packing(7), (1, 1), star7, vec![]),
        (CatalogKey::Packing(8), (3, 1), vec![(3, 6)], vec![]),
        (CatalogKey::Packing(9), (1, 3), vec![(2, 4), (2, 9), (4, 9)], vec![]),
        (CatalogKey::Packing(11), (3, 4), vec![(1, 2)], vec![]),
        (CatalogKey::Packing(17), (18, 3), vec![(1, 10)], vec![]),
        (CatalogKey::Covering(7), (3, 1), vec![], vec![(1, 2), (1, 5), (1, 6), (3, 6), (4, 5), (5, 6)]),
        (CatalogKey::Covering(8), (2, 2), vec![], vec![(1, 8), (3, 5)]),
        (CatalogKey::Covering(11), (5, 3), vec![], vec![(3, 4), (8, 11)]),
        (CatalogKey::Covering(17), (20, 2), vec![], vec![(3, 5), (7, 8)]),
    ];
    for (key, counts, leave, padding) in &expected {
        let d = catalog::get(*key).map_err(|e| e.to_string())?;
        both_accept(d, &key.to_string())?;
        ensure(d.block_counts() == *counts, || {
            format!("{key}: counts {:?}, expected {counts:?}", d.block_counts())
        })?;
        let ends = |es: &[Edge]| es.iter().map(|e| e.endpoints()).collect::<Vec<_>>();
        ensure(ends(&d.leave) == shifted(leave), || {
            format!("{key}: leave {:?}", d.leave)
        })?;
        ensure(ends(&d.padding) == shifted(padding), || {
            format!("{key}: padding {:?}", d.padding)
        })?;
    }
    Ok(format!("{} designs", expected.len()))
}

fn alternates(d: &Design, left: &[u32]) -> bool {
    d.blocks.iter().all(|b| match b {
        Block::Hexagon(v) => (0..6).all(|i| left.contains(&v[i]) != left.contains(&v[(i + 1) % 6])),
        Block::Prism(..) => false,
    })
}

fn bipartite_suite() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for six in [6u32, 12, 18] {
        for other in (4..=20u32).step_by(2) {
            for (m, n) in [(six, other), (other, six)] {
                let spec = BipartiteSpec::new(0..m, m..m + n);
                let d = c6_decompose_bipartite(&spec).map_err(|e| e.to_string())?;
                both_accept(&d, &format!("K_{{{m},{n}}}"))?;
                ensure(d.blocks.len() == (m * n / 6) as usize, || {
                    format!("K_{{{m},{n}}}: {} blocks", d.blocks.len())
                })?;
                ensure(alternates(&d, &spec.left), || {
                    format!("K_{{{m},{n}}} not alternating")
                })?;
                count += 1;
            }
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(1), "bipartite suite")?;
    Ok(format!("{count} hosts, {t:.2?}"))
}

fn block_round_trip() -> Result<(), String> {
    let blocks = all_blocks_on([0, 1, 2, 3, 4, 5]);
    ensure(blocks.len() == 120, || {
        format!("{} labeled blocks", blocks.len())
    })?;
    let mut edge_sets = std::collections::BTreeSet::new();
    for b in &blocks {
        ensure(canonical_form(b) == *b, || format!("{b} not canonical"))?;
        let mut oracle = oracle_edges(b);
        oracle.sort_unstable();
        edge_sets.insert(oracle.clone());
        let edges: Vec<Edge> = oracle
            .iter()
            .map(|&(a, c)| Edge::new(a, c).unwrap())
            .collect();
        ensure(recognize(&edges) == Some(*b), || {
            format!("{b}: recognize gives {:?}", recognize(&edges))
        })?;
    }
    ensure(edge_sets.len() == 120, || "edge sets collide".into())?;
    // Every tuple spelling of a block canonicalizes to the block itself.
    let mut perm = vec![0u32, 1, 2, 3, 4, 5];
    let mut spellings = 0;
    loop {
        let p: [u32; 6] = perm.clone().try_into().unwrap();
        for b in [
            Block::Hexagon(p),
            Block::Prism([p[0], p[1], p[2]], [p[3], p[4], p[5]]),
        ] {
            let mut e = oracle_edges(&b);
            e.sort_unstable();
            let c = canonical_form(&b);
            let mut ce = oracle_edges(&c);
            ce.sort_unstable();
            ensure(e == ce && blocks.contains(&c), || {
                format!("{b} canonicalizes to {c}")
            })?;
            spellings += 1;
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    ensure(spellings == 1440, || format!("{spellings} spellings"))
}

fn next_perm(xs: &mut [u32]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn property_suites() -> Check {
    block_round_trip()?;

    let mut designs: Vec<(String, Design)> = catalog::keys()
        .into_iter()
        .map(|k| (k.to_string(), catalog::get(k).unwrap().clone()))
        .collect();
    for (n, kind) in constructible(6..=60) {
        designs.push((
            format!("K{n} {kind}"),
            construct(n, kind).map_err(|e| e.to_string())?,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c6);
    for (label, d) in &designs {
        let before = verify_design(d);
        let labels = d.host.vertices();
        let bound = d.host.label_bound();
        for _ in 0..100 {
            let mut image = labels.clone();
            image.shuffle(&mut rng);
            let mut perm: Vec<u32> = (0..bound as u32).collect();
            for (&from, &to) in labels.iter().zip(&image) {
                perm[from as usize] = to;
            }
            let moved = relabel_design(d, &perm).map_err(|e| format!("{label}: {e}"))?;
            let after = verify_design(&moved);
            ensure(after.valid == before.valid, || {
                format!("{label}: validity changed")
            })?;
            ensure(
                (
                    after.hexagon_count,
                    after.prism_count,
                    after.leave.len(),
                    after.padding.len(),
                ) == (
                    before.hexagon_count,
                    before.prism_count,
                    before.leave.len(),
                    before.padding.len(),
                ),
                || format!("{label}: counts changed under relabeling"),
            )?;
            oracle_check(&moved).map_err(|e| format!("{label} relabeled: {e}"))?;
        }
    }

    let mut constructed = 0;
    for (n, kind) in constructible(6..=200) {
        let d = construct(n, kind).map_err(|e| e.to_string())?;
        incidence_identity(&d).map_err(|e| format!("K{n} {kind}: {e}"))?;
        constructed += 1;
    }
    Ok(format!(
        "120 blocks, {} designs x 100 relabelings, {constructed} incidence checks",
        designs.len()
    ))
}

fn oracle_agreement() -> Check {
    let start = Instant::now();
    let k6 = search_multidecomposition(&Host::Complete(6), &SearchConfig::default())
        .map_err(|e| e.to_string())?;
    let d = k6.found().ok_or("K6 not found")?;
    both_accept(d, "searched K6")?;

    let cfg = SearchConfig::default().with_budget(1_000_000);
    let k12 = search_multidecomposition(&Host::Complete(12), &cfg).map_err(|e| e.to_string())?;
    let d = k12.found().ok_or_else(|| format!("K12: {k12}"))?;
    let a = both_accept(d, "searched K12")?;
    ensure(a.hexagons >= 1 && a.prisms >= 1, || {
        "K12 lacks a shape".into()
    })?;

    for key in [DerivedKey::Hexagons9, DerivedKey::Prisms10] {
        let out = seed_search(key);
        let d = out
            .found()
            .ok_or_else(|| format!("{}: {out}", key.name()))?;
        both_accept(d, &key.name())?;
        let frozen = derived_base(key);
        both_accept(frozen, &format!("frozen {}", key.name()))?;
        ensure(d == frozen, || {
            format!("{} differs from the frozen data", key.name())
        })?;
    }
    let hex_only =
        search_multidecomposition(&Host::Complete(9), &SearchConfig::only(BlockTypes::Hexagon))
            .map_err(|e| e.to_string())?;
    ensure(hex_only.found().is_some(), || {
        "K9 hexagons not found".into()
    })?;
    let t = start.elapsed();
    within(t, Duration::from_secs(60), "searches")?;
    Ok(format!(
        "K6, K12 {:?}, K9 hexagons, K10 prisms, {t:.2?}",
        d.block_counts()
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        (
            "decompositions of K_n, n = 0,1 mod 3, n in [6,200]",
            decomposition_sweep,
        ),
        ("packing leaves 1 / 6 / 3", || {
            extremal_sweep(DesignKind::Packing)
        }),
        ("covering paddings 2 / 6 / 3", || {
            extremal_sweep(DesignKind::Covering)
        }),
        ("nonexistence at 7, 9, 10 by both branches", nonexistence),
        ("K7 minimality certificates", minimality_k7),
        ("transcribed designs", transcriptions),
        ("bipartite hexagon tilings", bipartite_suite),
        (
            "block, relabeling and incidence properties",
            property_suites,
        ),
        ("search agrees with frozen seeds", oracle_agreement),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
