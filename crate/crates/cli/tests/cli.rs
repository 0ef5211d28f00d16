use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn cylkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("CYLKIT_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cylkit-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn statuses(r: &Value) -> Vec<String> {
    r["results"].as_array().unwrap().iter().map(|e| e["status"].as_str().unwrap().to_string()).collect()
}

#[test]
fn generated_simplex_validates() {
    let d = scratch("simplex");
    assert_eq!(cylkit(&d, &["gen", "simplex", "2", "-o", "d2.json"]).status.code(), Some(0));
    let out = cylkit(&d, &["validate", "d2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"][0]["data"]["generators"], 7);
    assert_eq!(r["results"][0]["data"]["generators_per_dimension"], serde_json::json!([3, 3, 1]));
    assert_eq!(r["exit_status"], 0);
}

#[test]
fn gen_without_output_prints_the_object() {
    let d = scratch("print");
    let out = cylkit(&d, &["gen", "boundary", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("generators").is_some());
}

#[test]
fn nerves_are_inner_fibrations() {
    let d = scratch("nerve");
    for args in [
        &["gen", "category", "ordinal", "2", "-o", "c.json"][..],
        &["gen", "nerve", "c.json", "-o", "n.json"],
        &["gen", "to-point", "n.json", "-o", "p.json"],
    ] {
        assert_eq!(cylkit(&d, args).status.code(), Some(0), "{args:?}");
    }
    let r = report(&cylkit(&d, &["classify", "--map", "p.json", "--kind", "inner"]));
    assert_eq!(statuses(&r), ["YES_CERTIFIED"]);
    assert_eq!(r["results"][0]["certificate"]["kind"], "nerve_of_functor");
}

#[test]
fn refutations_exit_one() {
    let d = scratch("refute");
    cylkit(&d, &["gen", "boundary-inclusion", "1", "-o", "b.json"]);
    let out = cylkit(&d, &["certify-anodyne", "b.json", "--wce"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(statuses(&r), ["NO"]);
    assert_eq!(r["results"][0]["witness"]["kind"], "refutation");
}

#[test]
fn horn_inclusions_factor_and_certify() {
    let d = scratch("horn");
    cylkit(&d, &["gen", "horn-inclusion", "2", "1", "-o", "h.json"]);
    let r = report(&cylkit(&d, &["certify-anodyne", "h.json"]));
    assert_eq!(statuses(&r), ["YES_CERTIFIED"]);
    assert_eq!(r["results"][0]["certificate"]["replayed"], true);
    let out = cylkit(&d, &["factor", "h.json", "-o", "f.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(statuses(&report(&out)), ["YES_CERTIFIED", "YES_BOUNDED"]);
    let f: Value = serde_json::from_str(&std::fs::read_to_string(d.join("f.json")).unwrap()).unwrap();
    assert!(f.get("left").is_some() && f.get("right").is_some());
}

#[test]
fn cylinder_operations() {
    let d = scratch("cyl");
    cylkit(&d, &["gen", "simplex", "1", "-o", "d1.json"]);
    cylkit(&d, &["gen", "point", "-o", "pt.json"]);
    cylkit(&d, &["gen", "terminal", "d1.json", "pt.json", "-o", "t.json"]);
    assert_eq!(report(&cylkit(&d, &["validate", "t.json"]))["results"][0]["check"], "valid cylinder");
    let tfae = report(&cylkit(&d, &["cyl", "tfae", "t.json"]));
    assert!(statuses(&tfae).iter().all(|s| s.starts_with("YES")));
    let dual = report(&cylkit(&d, &["cyl", "dual", "t.json"]));
    assert_eq!(statuses(&dual), ["YES_CERTIFIED", "YES_CERTIFIED"]);
    let p = report(&cylkit(&d, &["cyl", "presheaf", "t.json", "--bound", "2"]));
    assert_eq!(p["results"][0]["data"]["constant"], 1);
    cylkit(&d, &["gen", "profunctor", "random", "2", "-o", "m.json"]);
    let c = report(&cylkit(&d, &["cyl", "collage", "m.json"]));
    assert!(statuses(&c).iter().all(|s| s.starts_with("YES")));
}

#[test]
fn suite_passes_and_is_reproducible() {
    let d = scratch("suite");
    let a = cylkit(&d, &["suite", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let r = report(&a);
    assert_eq!(r["results"].as_array().unwrap().len(), 14);
    let b = cylkit(&d, &["suite", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let one = report(&cylkit(&d, &["suite", "--only", "duality"]));
    assert_eq!(statuses(&one), ["YES_CERTIFIED"]);
}

#[test]
fn usage_errors_exit_64() {
    let d = scratch("usage");
    assert_eq!(cylkit(&d, &["frobnicate"]).status.code(), Some(64));
    assert_eq!(cylkit(&d, &["gen", "simplex", "two"]).status.code(), Some(64));
    assert_eq!(cylkit(&d, &["--max-dim", "0", "gen", "point"]).status.code(), Some(64));
    assert_eq!(cylkit(&d, &["classify", "--map", "missing.json", "--kind", "inner"]).status.code(), Some(64));
    assert_eq!(cylkit(&d, &["suite", "--only", "nothing"]).status.code(), Some(64));
}

#[test]
fn malformed_files_are_located() {
    let d = scratch("malformed");
    std::fs::write(d.join("bad.json"), "{\n  \"generators\": [[\"a\"]],\n  \"faces\": {\"x\": [}\n}\n").unwrap();
    let out = cylkit(&d, &["validate", "bad.json"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("line 3"), "{err}");
}

#[test]
fn text_format() {
    let d = scratch("text");
    cylkit(&d, &["gen", "spine-inclusion", "3", "-o", "s.json"]);
    let out = cylkit(&d, &["--format", "text", "classify", "--map", "s.json", "--kind", "inner"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.lines().any(|l| l.ends_with("inner fibration")), "{s}");
    assert!(s.contains("exit status"));
}
