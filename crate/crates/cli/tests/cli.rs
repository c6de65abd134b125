use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quatloc"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn validate(schema: &str, doc: &Value) {
    let text = fs::read_to_string(root().join("schemas").join(schema)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema:?} rejects report: {msgs:?}");
    };
}

fn ok(args: &[&str], schema: &str) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    validate(schema, &v);
    v
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn inputs_match_their_schemas() {
    for name in ["real_diag.json", "triangular.json", "stable.json", "weighted.json", "counterexample.json"] {
        validate("matrix.schema.json", &serde_json::from_str(&fs::read_to_string(fixture(name)).unwrap()).unwrap());
    }
    for name in ["sextic_left.json", "sextic_right.json", "cubic_left.json", "cubic_right.json", "opfer_p1.json", "opfer_p2.json", "z_cubed.json"] {
        validate("polynomial.schema.json", &serde_json::from_str(&fs::read_to_string(fixture(name)).unwrap()).unwrap());
    }
}

#[test]
fn real_diag_regions_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("r.svg");
    let csv = dir.path().join("r.csv");
    let v = ok(
        &["regions", "--input", &fixture("real_diag.json"), "--method", "ostrowski-right", "--gamma", "0.25", "--svg", svg.to_str().unwrap(), "--csv", csv.to_str().unwrap()],
        "regions-report.schema.json",
    );
    let radii: Vec<f64> = v["region"]["parts"].as_array().unwrap().iter().map(|p| f(&p["radius"])).collect();
    for (r, e) in radii.iter().zip([9.4533, 6.0894, 8.7389]) {
        assert!((r - e).abs() < 1e-3, "{radii:?}");
    }
    assert!(v["eigenvalues"].as_array().unwrap().iter().all(|e| e["contained"] == true));
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches(r#"class="part""#).count(), 3);
    assert_eq!(s.matches(r#"class="marker""#).count(), 3);
    assert!(s.contains(r#"viewBox="0 0 600 600""#));
    let rows: Vec<String> = fs::read_to_string(&csv).unwrap().lines().map(String::from).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("1,ball,3.0,0.0,0.0,0.0,"));
}

#[test]
fn cassini_svg_counts() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("k.svg");
    let v = ok(&["regions", "--input", &fixture("real_diag.json"), "--method", "brauer-right", "--gamma", "0.25", "--svg", svg.to_str().unwrap()], "regions-report.schema.json");
    let bounds: Vec<f64> = v["region"]["parts"].as_array().unwrap().iter().map(|p| f(&p["bound"])).collect();
    assert_eq!(bounds.len(), 3);
    assert!((bounds[0] - 57.5649).abs() < 1e-3);
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches(r#"<path class="part""#).count(), 3);
    assert_eq!(s.matches(r#"class="marker""#).count(), 3);
}

#[test]
fn triangular_discs_and_containment() {
    let v = ok(&["regions", "--input", &fixture("triangular.json"), "--method", "holder-left", "--gamma", "1", "--p", "2"], "regions-report.schema.json");
    let centers: Vec<Value> = v["shapes"].as_array().unwrap().iter().map(|s| s["center"].clone()).collect();
    assert_eq!(Value::Array(centers), serde_json::json!([[1.0, -2.0], [0.0, -2.0], [3.0, 1.0]]));
    let outside = v["eigenvalues"].as_array().unwrap().iter().filter(|e| e["contained"] == false).count();
    assert!(outside >= 2);
}

#[test]
fn weight_family_gives_intersection() {
    let v = ok(
        &["regions", "--input", &fixture("weighted.json"), "--method", "gersch-row", "--weights", "1,1,1", "--weights", "8,4,1"],
        "regions-report.schema.json",
    );
    assert_eq!(v["region"]["kind"], "intersection");
    assert!(v["eigenvalues"].as_array().unwrap().iter().all(|e| e["class_meets"] == true));
}

#[test]
fn sampled_inclusion_prints_seed() {
    let out = run(&[
        "regions", "--input", &fixture("real_diag.json"), "--method", "brauer-left", "--gamma", "0.5", "--subset-of", "ostrowski-left", "--samples", "3000", "--seed", "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed: 11"));
    let v = stdout_json(&out);
    validate("regions-report.schema.json", &v);
    assert_eq!(v["inclusion"]["included"], true);
    assert_eq!(v["inclusion"]["seed"], 11);
}

#[test]
fn bounds_all_ranks_methods() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let v = ok(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "all", "--csv", csv.to_str().unwrap()], "bounds-report.schema.json");
    let reports = v["reports"].as_array().unwrap();
    // 5 ostrowski + co1 + co2 + kojima + 20 power + 2 pc
    assert_eq!(reports.len(), 30);
    let co1 = reports.iter().find(|r| r["method"] == "co1").unwrap();
    assert!((f(&co1["lower"]) - 0.4142).abs() < 1e-3 && (f(&co1["upper"]) - 19.9737).abs() < 1e-3);
    let ranked = v["ranking"]["by_upper"].as_array().unwrap();
    assert!(ranked.windows(2).all(|w| f(&w[0]["upper"]) <= f(&w[1]["upper"])));
    assert_eq!(v["ranking"]["sharpest_upper"], ranked[0]["label"]);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 31);

    let right = ok(&["bounds", "--poly", &fixture("sextic_right.json"), "--method", "all"], "bounds-report.schema.json");
    let methods: Vec<&str> = right["reports"].as_array().unwrap().iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert!(!methods.contains(&"co1") && methods.contains(&"pc"));
}

#[test]
fn single_bound_methods() {
    let v = ok(&["bounds", "--poly", &fixture("cubic_right.json"), "--method", "pc", "--variant", "2b"], "bounds-report.schema.json");
    let r = &v["reports"][0];
    assert_eq!(r["params"]["variant"], "2b");
    assert!((f(&r["upper"]) - 2.1355).abs() < 1e-3 && (f(&r["lower"]) - 0.6436).abs() < 1e-3);

    let v = ok(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "cs2", "--weights", "1,1,1,1,1,1"], "bounds-report.schema.json");
    assert!((f(&v["reports"][0]["upper"]) - 60.9291).abs() < 1e-3);

    let v = ok(&["bounds", "--poly", &fixture("z_cubed.json"), "--method", "co2"], "bounds-report.schema.json");
    assert_eq!(v["reports"][0]["lower_degenerate"], true);
    assert_eq!(f(&v["reports"][0]["upper"]), 1.0);
}

#[test]
fn roots_table() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("z.svg");
    let v = ok(&["roots", "--poly", &fixture("sextic_left.json"), "--svg", svg.to_str().unwrap()], "roots-report.schema.json");
    let moduli: Vec<f64> = v["moduli"].as_array().unwrap().iter().map(f).collect();
    for (m, e) in moduli.iter().zip([1.0, 1.4142, 1.7321, 2.2361]) {
        assert!((m - e).abs() < 1e-3, "{moduli:?}");
    }
    assert_eq!(v["spherical"].as_array().unwrap().len(), 2);
    for s in v["spherical"].as_array().unwrap() {
        assert!(f(&s["max_residual"]) < 1e-6);
    }
    let iso = v["isolated"].as_array().unwrap();
    assert_eq!(iso.len(), 2);
    assert!(iso.iter().all(|r| f(&r["residual"]) < 1e-6));
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches(r#"class="marker""#).count(), 4);
    assert_eq!(s.matches(r#"class="part""#).count(), 0);
}

#[test]
fn power_check() {
    let v = ok(&["power", "--poly", &fixture("cubic_left.json"), "-t", "2", "--check"], "power-report.schema.json");
    assert_eq!(v["structured_equals_direct"], true);
    assert!(f(&v["max_entry_delta"]) < 1e-12);
    assert_eq!(v["matrix"]["entries"][2][1], serde_json::json!([1.0, -2.0, -1.0, 0.0]));
    let v = ok(&["power", "--poly", &fixture("sextic_right.json"), "-t", "9", "--check"], "power-report.schema.json");
    assert_eq!(v["structured_equals_direct"], true);
}

#[test]
fn stability_and_invertibility() {
    let v = ok(&["stability", "--input", &fixture("stable.json")], "stability-report.schema.json");
    assert_eq!(v["sufficient"], true);
    assert_eq!(v["stable"], true);
    let v = ok(&["invertibility", "--input", &fixture("stable.json"), "--gamma", "0.5"], "invertibility-report.schema.json");
    assert_eq!(v["invertible"], true);
    assert_eq!(v["ostrowski_sufficient"], true);
}

#[test]
fn compare_table_and_random_suite() {
    let out = run(&["compare", "--poly", &fixture("opfer_p1.json"), "--poly", &fixture("opfer_p2.json"), "--random", "500", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed: 3"));
    let v = stdout_json(&out);
    validate("compare-report.schema.json", &v);
    assert_eq!(f(&v["rows"][0]["alpha"]), 4.0);
    assert_eq!(f(&v["rows"][0]["opfer"]), 5.5);
    assert_eq!(v["rows"][1]["alpha_le_opfer"], false);
    assert_eq!(v["random"]["violations"], 0);
}

#[test]
fn json_file_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("out{k}.json"))).collect();
    for p in &paths {
        let out = run(&[
            "regions", "--input", &fixture("real_diag.json"), "--method", "brauer-left", "--gamma", "0.25", "--subset-of", "ostrowski-left", "--samples", "2000", "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&out.stdout).contains("brauer-left-ostrowski"));
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    let a = run(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "all"]).stdout;
    let b = run(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "all"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn exact_floats_round_trip() {
    let v = ok(&["power", "--poly", &fixture("sextic_left.json"), "-t", "1"], "power-report.schema.json");
    let c: Value = serde_json::from_str(&fs::read_to_string(fixture("sextic_left.json")).unwrap()).unwrap();
    assert_eq!(f(&v["matrix"]["entries"][5][0][0]), -f(&c["coeffs"][0][0]));
    let m = ok(&["regions", "--input", &fixture("stable.json"), "--method", "gersch-row"], "regions-report.schema.json");
    let r = f(&m["region"]["parts"][1]["radius"]);
    assert_eq!(r, 2f64.sqrt() + 5f64.sqrt());
}

fn domain_error(args: &[&str], code: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    let v = stdout_json(&out);
    validate("error.schema.json", &v);
    assert_eq!(v["error"]["code"], code);
}

#[test]
fn domain_errors_exit_1() {
    domain_error(&["regions", "--input", &fixture("triangular.json"), "--method", "ostrowski-right"], "non-real-diagonal");
    domain_error(&["bounds", "--poly", &fixture("sextic_right.json"), "--method", "co1"], "side-mismatch");
    domain_error(&["bounds", "--poly", &fixture("cubic_left.json"), "--method", "pc", "--variant", "2a"], "side-mismatch");
    domain_error(&["bounds", "--poly", &fixture("not_monic.json"), "--method", "co2"], "invalid-input");
    domain_error(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "power", "-t", "1"], "invalid-parameter");
    domain_error(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "scaled", "--weights", "1,2"], "dimension-mismatch");
    domain_error(&["regions", "--input", &fixture("real_diag.json"), "--method", "holder-left"], "invalid-parameter");
    domain_error(&["regions", "--input", &fixture("sextic_left.json"), "--method", "gersch-row"], "invalid-input");
    domain_error(&["compare", "--poly", &fixture("sextic_right.json")], "side-mismatch");
}

fn usage_error(args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    usage_error(&[]);
    usage_error(&["frobnicate"]);
    usage_error(&["regions", "--input", &fixture("real_diag.json"), "--method", "gersch-row", "--gamma", "1.5"]);
    usage_error(&["regions", "--input", &fixture("real_diag.json"), "--method", "gersch-row", "--gamma", "abc"]);
    usage_error(&["regions", "--input", &fixture("real_diag.json"), "--method", "nope"]);
    usage_error(&["regions", "--input", &fixture("real_diag.json"), "--method", "gersch-row", "--weights", "1,-2,3"]);
    usage_error(&["regions", "--input", "/definitely/missing.json", "--method", "gersch-row"]);
    usage_error(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "cs1"]);
    usage_error(&["bounds", "--poly", &fixture("sextic_left.json"), "--method", "power", "--variant", "1a"]);
    usage_error(&["power", "--poly", &fixture("sextic_left.json"), "-t", "0"]);
    usage_error(&["compare"]);
}

#[test]
fn help_lists_every_verb() {
    let out = run(&["--help"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for verb in ["regions", "bounds", "roots", "stability", "invertibility", "power", "compare"] {
        assert!(text.contains(verb), "{verb}");
    }
}
