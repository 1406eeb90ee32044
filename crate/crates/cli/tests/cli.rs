use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use entwb_core::io::state_from_json;
use entwb_core::states::sigma_b;
use serde_json::Value;

fn entwb(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entwb"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn construct_sigma_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    assert!(entwb(&["construct", "--b", "0.5"], &out).status.success());
    let states: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("sigma_"))
        .collect();
    assert_eq!(states, vec!["sigma_b0.5.json".to_string()]);
    let back = state_from_json(&fs::read_to_string(out.join("sigma_b0.5.json")).unwrap()).unwrap();
    assert_eq!(back.rho().max_abs_diff(sigma_b(0.5).unwrap().rho()), 0.0);
}

#[test]
fn construct_both_variants_writes_diff_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let r = entwb(
        &[
            "construct",
            "--family",
            "rho",
            "--n",
            "2",
            "--a",
            "0.5",
            "--variant",
            "both",
        ],
        &out,
    );
    assert!(r.status.success());
    assert!(out.join("rho_n2_a0.5_printed.json").exists());
    assert!(out.join("rho_n2_a0.5_consistent.json").exists());
    let diff = read_json(&out.join("rho_n2_a0.5_variant_diff.json"));
    let entries = diff["differences"].as_array().unwrap();
    // the two extra projectors e_2⊗e_4⊗e_2 and e_2⊗e_4⊗e_4 at flat indices 29 and 31
    let pos: Vec<(u64, u64)> = entries
        .iter()
        .map(|e| (e["row"].as_u64().unwrap(), e["col"].as_u64().unwrap()))
        .collect();
    assert_eq!(pos, vec![(29, 29), (31, 31)]);
}

#[test]
fn config_error_leaves_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let r = entwb(&["construct", "--b", "0.2,1.5"], &out);
    assert_eq!(r.status.code(), Some(2));
    assert!(!out.exists());
    let r = entwb(&["sweep", "--family", "rho", "--n", "4"], &out);
    assert_eq!(r.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn sweep_is_sorted_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, o2) = (dir.path().join("a"), dir.path().join("b"));
    assert!(entwb(&["sweep", "--format", "csv"], &o1).status.success());
    assert!(entwb(&["sweep", "--format", "csv"], &o2).status.success());
    let a = fs::read(o1.join("sweep.csv")).unwrap();
    assert_eq!(a, fs::read(o2.join("sweep.csv")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 27);
    let meta = read_json(&o1.join("sweep.meta.json"));
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn sweep_rho_reports_rank_of_full_partial_transpose() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let r = entwb(
        &[
            "sweep",
            "--family",
            "rho",
            "--n",
            "2",
            "--a",
            "0.5",
            "--restarts",
            "4",
            "--iters",
            "20",
        ],
        &out,
    );
    assert!(r.status.success());
    let doc = read_json(&out.join("sweep.json"));
    let row = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["split"] == "(AB)-C")
        .unwrap()
        .clone();
    let s = entwb_core::states::rho_a(2, 0.5, Default::default()).unwrap();
    let pt = entwb_core::bipartition::partial_transpose_state(&s, &[entwb_core::party::Party::C]).unwrap();
    let rank = entwb_core::tensor::rank(&pt, 1e-9).unwrap();
    assert_eq!(row["rank"].as_u64().unwrap() as usize, rank);
}

#[test]
fn verify_claims_is_deterministic_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, o2) = (dir.path().join("a"), dir.path().join("b"));
    let r = entwb(&["verify-claims"], &o1);
    assert_eq!(r.status.code(), Some(0), "refuted claims are not errors");
    assert!(entwb(&["verify-claims"], &o2).status.success());
    let a = fs::read(o1.join("claims.json")).unwrap();
    assert_eq!(a, fs::read(o2.join("claims.json")).unwrap());

    let claims: Value = serde_json::from_slice(&a).unwrap();
    let schema: Value = serde_json::from_str(include_str!("../../../docs/claims.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&claims).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");

    let list = claims.as_array().unwrap();
    assert_eq!(list.len(), 14);
    let by_id = |id: &str| list.iter().find(|c| c["claim_id"] == id).unwrap();
    assert_eq!(by_id("C2")["status"], "confirmed");
    for id in ["C9", "C10"] {
        let c = by_id(id);
        assert_eq!(c["status"], "refuted");
        assert!(c["evidence"]["counter_witness"]["psi"]["witness"]["amplitudes_flat"].is_array());
    }
    let summary = fs::read_to_string(o1.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 15);
}

#[test]
fn search_distill_finds_witness_for_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let r = entwb(&["search-distill", "--b", "0.5", "--split", "A-(BC)"], &out);
    assert!(r.status.success());
    let doc = read_json(&out.join("distill.json"));
    let rep = &doc["reports"][0];
    assert_eq!(rep["verdict"], "npt-rank2-witness");
    assert!(rep["best_value"].as_f64().unwrap() < 0.0);
    let bad = entwb(&["search-distill", "--split", "AB-X"], &dir.path().join("x"));
    assert_eq!(bad.status.code(), Some(2));
}
