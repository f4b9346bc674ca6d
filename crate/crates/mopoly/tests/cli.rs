//! End-to-end tests of the `mop` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn mop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn faces_pentagon() {
    let out = mop(&["faces", data("pentagon.mop").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("11 faces, f-vector (5, 5, 1)\n"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn faces_json_schema() {
    let out = mop(&["faces", data("pentagon.mop").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    assert_eq!(v["covers"].as_array().unwrap().len(), 5);
    assert_eq!(v["marks"]["m4"], "4");
    let faces = v["faces"].as_array().unwrap();
    assert_eq!(faces.len(), 11);
    for f in faces {
        assert!(f["blocks"].is_array());
        assert!(f["free_blocks"].is_array());
        assert!(f["dim"].is_number());
    }
}

#[test]
fn vertices_json() {
    let out = mop(&["vertices", data("pentagon.mop").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let vs = v["vertices"].as_array().unwrap();
    assert_eq!(vs.len(), 5);
    assert_eq!(vs[0]["coords"].as_array().unwrap().len(), 6);
}

#[test]
fn facets_fig3() {
    let out = mop(&["facets", data("fig3.mop").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("removed cover p<q"));
    assert!(text.contains("4 facets:"));
}

#[test]
fn conditional_dim_example53() {
    let out = mop(&[
        "conditional-dim",
        data("example53.mop").to_str().unwrap(),
        "--point",
        "p=1,q=2,r=3,s=4",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kernel_dim"], 2);
    assert_eq!(v["tiling_matrix"], serde_json::json!([["1", "0", "1", "0"], ["0", "1", "0", "1"]]));
}

#[test]
fn oracle_verify_with_seed() {
    let out = mop(&[
        "oracle-verify",
        data("pentagon.mop").to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("MISMATCH"));
}

#[test]
fn exit_codes() {
    // Domain error: vertices of a non-pointed polyhedron.
    let dir = std::env::temp_dir().join("mop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let unpointed = dir.join("unpointed.mop");
    std::fs::write(&unpointed, "elements: a b\ncovers: a<b\n").unwrap();
    let out = mop(&["vertices", unpointed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Parse error in the document.
    let broken = dir.join("broken.mop");
    std::fs::write(&broken, "elements: a\nmarks: a=oops\n").unwrap();
    let out = mop(&["check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Size guard respects --max-elements.
    let big = dir.join("big.mop");
    let names: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
    std::fs::write(&big, format!("elements: {}\nmarks: e0=0\n", names.join(" "))).unwrap();
    let out = mop(&["faces", big.to_str().unwrap(), "--max-elements", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mop(&["faces", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}
