use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn edcrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edcrg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = edcrg(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edcrg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

/// Checks that `value` has exactly the listed keys, each of the given JSON kind.
fn conforms(value: &Value, schema: &[(&str, &str)]) {
    let obj = value.as_object().expect("object");
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let want: Vec<&str> = schema.iter().map(|(k, _)| *k).collect();
    assert_eq!(keys, want);
    for (k, kind) in schema {
        let v = &obj[*k];
        let ok = kind.split('|').any(|kind| match kind {
            "string" => v.is_string(),
            "number" => v.is_number(),
            "integer" => v.is_u64(),
            "bool" => v.is_boolean(),
            "array" => v.is_array(),
            "null" => v.is_null(),
            _ => unreachable!(),
        });
        assert!(ok, "{k} should be {kind}, got {v}");
    }
}

#[test]
fn bounds_at_is_exact_for_t4() {
    let out = stdout(&["bounds", "at", "--t", "4", "--p", "1/4"]);
    assert_eq!(field(&out, "upper"), "11/60");
    assert_eq!(field(&out, "lower"), "11/60");
    assert_eq!(field(&out, "exact"), "true");
    // decimal input gives the same point
    assert_eq!(field(&stdout(&["bounds", "at", "--t", "4", "--p", "0.25"]), "upper"), "11/60");
}

#[test]
fn generated_gq22_evaluates_on_its_line() {
    let path = scratch("gq22.crg");
    let path_s = path.to_str().unwrap();
    stdout(&["gen", "triangular_complement(6)", "--out", path_s]);
    let out = stdout(&["crg", "eval", "--crg", path_s, "--p", "1/5"]);
    // 12/75 in lowest terms
    assert_eq!(field(&out, "f"), "4/25");
    let g: f64 = field(&out, "g").parse().unwrap();
    assert!(g <= 12.0 / 75.0 + 1e-12);

    let petersen = scratch("petersen.crg");
    stdout(&["gen", "petersen_complement", "--out", petersen.to_str().unwrap()]);
    let exact = json(&["crg", "eval", "--crg", petersen.to_str().unwrap(), "--p", "1/5", "--exact"]);
    // (1+2p)/10 at p = 1/5
    assert_eq!(exact["f"], "7/50");
    assert_eq!(exact["pcore"], true);
    let pcore = json(&["crg", "pcore", "--crg", petersen.to_str().unwrap(), "--p", "1/5", "--exact"]);
    assert_eq!(pcore["g"], exact["g"]);
    assert_eq!((pcore["identities_apply"].as_bool(), pcore["degree_identity"].as_bool()), (Some(true), Some(true)));
    let forbid = stdout(&["crg", "forbid", "--crg", path_s, "--t", "4"]);
    assert_eq!(field(&forbid, "forbids"), "true");
    assert_eq!(field(&stdout(&["crg", "forbid", "--crg", path_s, "--t", "3"]), "forbids"), "false");
}

#[test]
fn gen_accepts_named_parameters() {
    let a = stdout(&["gen", "paley(13)"]);
    let b = stdout(&["gen", "--construction", "paley", "--params", "q=13"]);
    assert_eq!(a, b);
    assert!(a.starts_with("crg 13\n"));
    let meta = json(&["gen", "furedi(5,5)"]);
    assert_eq!(meta["order"], 12);
    assert_eq!(meta["line"], "(1+5p)/12");
}

#[test]
fn qlist_examples() {
    let out = stdout(&["bounds", "qlist", "--t", "6"]);
    assert_eq!(field(&out, "q"), "[]");
    assert_eq!(json(&["bounds", "qlist", "--t", "6"])["q"], serde_json::json!([]));
    assert_eq!(json(&["bounds", "qlist", "--t", "8"])["q"], serde_json::json!([8, 29]));
}

#[test]
fn envelope_csv_and_json() {
    let csv = stdout(&["bounds", "envelope", "--t", "4", "--samples", "11", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,upper,lower,exact,active_upper"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    for row in &rows {
        let cells: Vec<&str> = row.splitn(5, ',').collect();
        assert_eq!(cells[3], "1", "t = 4 is exact everywhere: {row}");
        let (u, l): (f64, f64) = (cells[1].parse().unwrap(), cells[2].parse().unwrap());
        assert!((u - l).abs() < 1e-12);
    }
    assert_eq!(rows[5].split(',').next(), Some("0.50000000000000000"));

    let env = json(&["bounds", "envelope", "--t", "4", "--samples", "11"]);
    conforms(
        &env,
        &[("t", "integer"), ("p_star", "array"), ("d_star", "string|number"), ("exact_interval", "array|null"), ("rows", "array")],
    );
    assert_eq!(env["d_star"], "2/9");
    for row in env["rows"].as_array().unwrap() {
        conforms(
            row,
            &[
                ("p", "number"),
                ("upper", "number"),
                ("lower", "number"),
                ("exact", "bool"),
                ("active_upper", "string"),
                ("p_rational", "string"),
                ("upper_rational", "string"),
                ("lower_rational", "string|null"),
            ],
        );
    }
    let sub = json(&["bounds", "envelope", "--t", "5", "--from", "3/10", "--to", "1/3", "--samples", "3"]);
    for row in sub["rows"].as_array().unwrap() {
        assert_eq!(row["upper_rational"], "1/6");
    }
}

#[test]
fn tangency_and_catalog() {
    let t = json(&["bounds", "tangency", "--t", "4", "--d", "6"]);
    assert_eq!((t["p"].as_str(), t["line_value"].as_str(), t["equal"].as_bool()), (Some("13/59"), Some("10/59"), Some(true)));
    let c = json(&["bounds", "catalog", "--t", "6"]);
    assert_eq!(c["drift_mismatches"], 0);
    assert!(c["rows"].as_array().unwrap().iter().any(|r| r["formula"] == "(1-p)/5"));
}

#[test]
fn oracle_commands() {
    let graph = scratch("k24.g");
    std::fs::write(&graph, "graph 6\ne 0 2\ne 0 3\ne 0 4\ne 0 5\ne 1 2\ne 1 3\ne 1 4\ne 1 5\n").unwrap();
    let d = json(&["oracle", "dist", "--graph", graph.to_str().unwrap(), "--t", "4"]);
    assert_eq!(d["distance"], 1);
    assert_eq!(d["induced_copy"], serde_json::json!([0, 1, 2, 3, 4, 5]));

    let scan = json(&["oracle", "scan", "--max-k", "2", "--p", "3/10", "--t", "3"]);
    assert_eq!(scan["min_g"], "21/100");
    assert_eq!(scan["structure_holds"], true);

    let crg = scratch("k03.crg");
    std::fs::write(&crg, "crg 3\nv 0 B\nv 1 B\nv 2 B\n").unwrap();
    let g = json(&["oracle", "g", "--crg", crg.to_str().unwrap(), "--p", "0.4", "--resolution", "60"]);
    assert!((g["grid_g"].as_f64().unwrap() - 0.2).abs() < 1e-12);

    let a = json(&["oracle", "gnp", "--n", "7", "--p", "1/2", "--t", "3", "--trials", "4", "--seed", "7"]);
    let b = json(&["oracle", "gnp", "--n", "7", "--p", "1/2", "--t", "3", "--trials", "4", "--seed", "7", "--threads", "1"]);
    assert_eq!(a, b);
    assert_eq!(a["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_quick_passes() {
    let v = json(&["verify", "--suite", "quick"]);
    assert_eq!(v["passed"], v["total"]);
}

#[test]
fn exit_codes() {
    assert_eq!(edcrg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(edcrg(&["bounds", "at", "--t", "4"]).status.code(), Some(2));
    assert_eq!(edcrg(&["bounds", "at", "--t", "4", "--p", "3/2"]).status.code(), Some(1));
    assert_eq!(edcrg(&["bounds", "at", "--t", "4", "--p", "x"]).status.code(), Some(1));
    assert_eq!(edcrg(&["crg", "eval", "--crg", "/nonexistent.crg", "--p", "1/2"]).status.code(), Some(1));
    let bad = scratch("bad.crg");
    std::fs::write(&bad, "crg 2\nv 0 B\nv 0 W\n").unwrap();
    let out = edcrg(&["crg", "eval", "--crg", bad.to_str().unwrap(), "--p", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(edcrg(&["--help"]).status.code(), Some(0));
}
