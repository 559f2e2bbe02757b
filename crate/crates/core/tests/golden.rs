use std::path::Path;

use fivebrane_core::verify::{golden_check, golden_json, golden_specs, write_golden, Status, DEFAULT_FIXTURES};

/// Rewrites the stored golden files. Run with `--ignored` after an
/// intentional change to the engine, then review the diff.
#[test]
#[ignore]
fn regenerate_golden() {
    for path in write_golden(Path::new(DEFAULT_FIXTURES)).unwrap() {
        println!("wrote {}", path.display());
    }
}

#[test]
fn stored_golden_files_match_the_engine() {
    for spec in golden_specs() {
        let c = golden_check(Path::new(DEFAULT_FIXTURES), &spec);
        assert_eq!(c.status, Status::Pass, "{}", c.line());
    }
}

#[test]
fn golden_files_are_byte_stable() {
    for spec in golden_specs() {
        let path = Path::new(DEFAULT_FIXTURES).join("golden").join(format!("{}.json", spec.name));
        let stored = std::fs::read_to_string(&path).unwrap();
        assert_eq!(stored, golden_json(&spec).unwrap(), "{}", path.display());
    }
}

#[test]
fn tampered_golden_file_fails() {
    let dir = tempfile::tempdir().unwrap();
    write_golden(dir.path()).unwrap();
    let spec = golden_specs().into_iter().find(|s| s.name == "f1_t").unwrap();
    let path = dir.path().join("golden/f1_t.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["series"]["terms"][0]["num"] = serde_json::json!("7");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(golden_check(dir.path(), &spec).status, Status::Fail);

    std::fs::remove_file(&path).unwrap();
    assert_eq!(golden_check(dir.path(), &spec).status, Status::Fail);
}
