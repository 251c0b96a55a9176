mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hexprism::format::{emit_design, parse_design};
use hexprism::{Block, DesignKind, Edge};

fn hexprism(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexprism"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hexprism-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_k13_writes_eleven_blocks() {
    let file = scratch("k13.json");
    let out = hexprism(&["construct", "--n", "13", "--output", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let d = parse_design(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(d.blocks.len(), 11);
    assert_eq!(code(&hexprism(&["verify", path_str(&file)])), 0);
}

#[test]
fn construct_k7_decomposition_explains_itself() {
    let out = hexprism(&["construct", "--n", "7", "--kind", "decomposition"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out) + &String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("{7,9,10}"), "{text}");
}

#[test]
fn construct_k10_covering_pads_three_edges() {
    let out = hexprism(&["construct", "--n", "10", "--kind", "covering"]);
    assert_eq!(code(&out), 0);
    let d = parse_design(&stdout(&out)).unwrap();
    assert_eq!(d.kind, DesignKind::Covering);
    assert_eq!(d.padding.len(), 3);
    common::oracle_check(&d).unwrap();
}

#[test]
fn construct_then_verify_every_order() {
    for (n, kind) in common::constructible(6..=200) {
        let out = hexprism(&["construct", "--n", &n.to_string(), "--kind", kind.as_str()]);
        assert_eq!(code(&out), 0, "K{n} {kind}");
        let file = scratch(&format!("sweep-{n}-{kind}.json"));
        std::fs::write(&file, &out.stdout).unwrap();
        let check = hexprism(&["verify", path_str(&file), "--format", "json"]);
        assert_eq!(code(&check), 0, "K{n} {kind}: {}", stdout(&check));
        let report: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
        assert_eq!(report["valid"], true);
        std::fs::remove_file(&file).unwrap();
    }
}

#[test]
fn verify_rejects_broken_designs() {
    let out = hexprism(&["catalog", "--key", "decomposition-13"]);
    let good = parse_design(&stdout(&out)).unwrap();

    let mut mutated = good.clone();
    mutated.blocks[5] = mutated.blocks[5].map(|v| if v == 12 { 0 } else { v });
    let file = scratch("mutated.json");
    std::fs::write(&file, emit_design(&mutated)).unwrap();
    let out = hexprism(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 1);
    let reused: Vec<String> = stdout(&out)
        .lines()
        .filter(|l| l.contains("used 2 times"))
        .map(String::from)
        .collect();
    assert!(!reused.is_empty());
    assert!(
        reused
            .iter()
            .all(|l| l.contains(" 5]") || l.contains("[5,")),
        "{reused:?}"
    );

    let packing = parse_design(&stdout(&hexprism(&["catalog", "--key", "packing-8"]))).unwrap();
    let mut overlapping = packing.clone();
    let Block::Hexagon(v) = overlapping.blocks[1] else {
        panic!()
    };
    overlapping.leave.push(Edge::new(v[0], v[1]).unwrap());
    overlapping.leave.sort_unstable();
    std::fs::write(&file, emit_design(&overlapping)).unwrap();
    assert_eq!(code(&hexprism(&["verify", path_str(&file)])), 1);

    std::fs::write(&file, "{\"host\":").unwrap();
    assert_eq!(code(&hexprism(&["verify", path_str(&file)])), 2);
}

#[test]
fn classify_nine() {
    let out = hexprism(&["classify", "--n", "9", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["decomposition_exists"], false);
    assert_eq!(r["min_leave"], 3);
    assert_eq!(r["min_padding"], 3);
    assert!(!r["annotations"].as_array().unwrap().is_empty());
}

#[test]
fn search_exit_codes() {
    let out = hexprism(&["search", "--n", "7"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("ExhaustedNone"));

    let out = hexprism(&[
        "search",
        "--host",
        "bipartite:6x6",
        "--blocks",
        "hexagon",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["design"]["blocks"].as_array().unwrap().len(), 6);

    assert_eq!(
        code(&hexprism(&["search", "--n", "13", "--budget", "5"])),
        3
    );
    assert_eq!(code(&hexprism(&["search", "--n", "13"])), 2);
    assert_eq!(code(&hexprism(&["search", "--n", "9", "--certify"])), 1);
    assert_eq!(code(&hexprism(&["search", "--n", "12", "--certify"])), 2);
}

#[test]
fn search_writes_found_design() {
    let file = scratch("k6.json");
    let out = hexprism(&["search", "--n", "6", "--output", path_str(&file)]);
    assert_eq!(code(&out), 0);
    let d = parse_design(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(d.block_counts(), (1, 1));
}

#[test]
fn catalog_lists_and_exports() {
    let out = hexprism(&["catalog", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 17);

    let dir = scratch("export");
    assert_eq!(code(&hexprism(&["catalog", "--export", path_str(&dir)])), 0);
    let files = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(files, 17);
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        assert_eq!(
            code(&hexprism(&["verify", path_str(&path)])),
            0,
            "{}",
            path.display()
        );
    }
    assert_eq!(code(&hexprism(&["catalog", "--key", "tiling-4"])), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&hexprism(&[])), 2);
    assert_eq!(code(&hexprism(&["construct", "--n", "5"])), 2);
    assert_eq!(code(&hexprism(&["construct", "--n", "x"])), 2);
    assert_eq!(code(&hexprism(&["verify", "/nonexistent/design.json"])), 2);
    assert_eq!(
        code(&hexprism(&["classify", "--n", "8", "--format", "yaml"])),
        2
    );
}
