//! Frozen outputs. Set `UPDATE_GOLDENS=1` to rewrite them after a reviewed change.

use serde_json::{json, Value};

use ninfty::catalog::hom_by_name;
use ninfty::format::transfer_to_json;
use ninfty::functors::{image_l, image_r, preimage_l, preimage_r};
use ninfty::transfer::{enumerate_all, hasse, DEFAULT_BUDGET};

fn check(name: &str, actual: Value) {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
        return;
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(actual, want, "{name} drifted");
}

fn pairs(t: &ninfty::transfer::TransferSystem) -> Value {
    transfer_to_json(t)["pairs"].clone()
}

#[test]
fn c4_to_s3_functors() {
    let f = hom_by_name("C4_to_S3").unwrap();
    let source = enumerate_all(f.source(), DEFAULT_BUDGET).unwrap();
    let target = enumerate_all(f.target(), DEFAULT_BUDGET).unwrap();
    let forward: Vec<Value> = source
        .iter()
        .map(|s| json!({ "s": pairs(s), "fL": pairs(&image_l(&f, s).unwrap()), "fR": pairs(&image_r(&f, s).unwrap()) }))
        .collect();
    let backward: Vec<Value> = target
        .iter()
        .map(|t| json!({ "t": pairs(t), "finvL": pairs(&preimage_l(&f, t).unwrap()), "finvR": pairs(&preimage_r(&f, t).unwrap()) }))
        .collect();
    check("c4_to_s3.json", json!({ "forward": forward, "backward": backward }));
}

#[test]
fn c8_lattice() {
    let g = ninfty::grp::group_by_name("C8").unwrap();
    let lattice = enumerate_all(&g, DEFAULT_BUDGET).unwrap();
    let systems: Vec<Value> = lattice.iter().map(pairs).collect();
    check("c8_lattice.json", json!({ "systems": systems, "covers": hasse(&lattice) }));
}
