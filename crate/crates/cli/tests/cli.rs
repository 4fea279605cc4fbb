use std::path::PathBuf;

use lch_cli::{run, Output};
use serde_json::Value;

fn lch(args: &[&str]) -> Output {
    let mut argv = vec!["lch"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> Value {
    let out = lch(args);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn core_fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn chekanov_homology_json() {
    let v = json(&["homology", "--fixture", "chekanov", "--json"]);
    assert_eq!(v["command"], "homology");
    let dims = v["result"]["dims"].as_object().unwrap();
    assert_eq!(dims.len(), 3);
    assert_eq!(dims["-2"], 1);
    assert_eq!(dims["1"], 1);
    assert_eq!(dims["2"], 1);
}

#[test]
fn non_spun_torus_solution() {
    let out = lch(&["solve", "--fixture", "non-spun-torus", "--json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"], serde_json::json!(["1 + 2t^3 + t^4"]));
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["homology", "--fixture", "chekanov", "--json"][..],
        &["twocopy", "flying-saucer-two-copy", "--json"][..],
        &["duality", "--fixture", "super-spun", "--json"][..],
        &["homology", "--seed", "7", "--json"][..],
    ] {
        assert_eq!(lch(args), lch(args));
    }
}

#[test]
fn broken_file_is_located() {
    let out = lch(&["validate", &core_fixture("broken.dga")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 7"), "{}", out.stderr);
    assert!(out.stderr.contains("q2"));
    let v = json(&["validate", &core_fixture("broken.dga"), "--json"]);
    assert_eq!(v["result"]["valid"], false);
}

#[test]
fn file_inputs_by_extension() {
    let out = lch(&["validate", &core_fixture("chekanov.dga")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = lch(&["arnold", &core_fixture("stabilized-spheres.inst")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&["twocopy", &core_fixture("flying-saucer.twocopy"), "--json"]);
    assert_eq!(v["result"]["acyclic"], true);
}

#[test]
fn no_augmentation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stuck.dga");
    std::fs::write(&path, "ring Z2\ngen a 1\ngen b 0\nd a = 1\n").unwrap();
    let out = lch(&["augs", path.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert_eq!(lch(&["homology", path.to_str().unwrap()]).code, 1);
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tiny.dga"), "gen c 2\ndim 2\n").unwrap();
    std::env::set_var(lch_cli::FIXTURES_ENV, dir.path());
    let v = json(&["homology", "--fixture", "tiny", "--json"]);
    std::env::remove_var(lch_cli::FIXTURES_ENV);
    assert_eq!(v["result"]["dims"]["2"], 1);
}

#[test]
fn constraints_filter_solutions() {
    let v = json(&["solve", "--fixture", "non-spun-torus", "--constraint", "0=2", "--json"]);
    assert_eq!(v["result"], serde_json::json!([]));
    assert_eq!(lch(&["solve", "--fixture", "non-spun-torus", "--constraint", "0=2"]).code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lch(&["bogus"]).code, 2);
    assert_eq!(lch(&["homology"]).code, 2);
    assert_eq!(lch(&["homology", "no-such-thing"]).code, 2);
    assert_eq!(lch(&["homology", "--fixture", "chekanov", "--ring", "W"]).code, 2);
    assert_eq!(lch(&["solve", "--constraint", "oops", "--seed", "1"]).code, 2);
    assert_eq!(lch(&["augs", "--fixture", "non-spun-torus"]).code, 2);
}

#[test]
fn ring_override() {
    let v = json(&["homology", "--fixture", "flying-saucer", "--ring", "Z", "--n", "4", "--json"]);
    assert_eq!(v["input"]["ring"], "Z");
    assert_eq!(v["result"]["dims"]["4"], 1);
}

#[test]
fn random_two_copy_by_seed() {
    let out = lch(&["twocopy", "--seed", "11"]);
    assert!(out.code == 0 || out.code == 1, "{}", out.stderr);
    assert!(out.stdout.contains("relation"));
}

#[test]
fn spin_and_pcpoly() {
    let v = json(&["spin", "--fixture", "flying-saucer", "--times", "1", "--json"]);
    assert_eq!(v["result"]["kunneth"], true);
    let v = json(&["pcpoly", "--fixture", "flying-saucer", "--json"]);
    assert_eq!(v["result"]["polynomial"], "t^3");
    assert_eq!(v["result"]["sphere_duality"], true);
}
