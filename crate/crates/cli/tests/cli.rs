use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn detrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detrep"))
        .args(args)
        .env_remove("DETREP_SEED")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn verdict(v: &Value, name: &str) -> bool {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name}"))["observed"]
        .as_bool()
        .unwrap()
}

fn output<'a>(v: &'a Value, name: &str) -> &'a str {
    v["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no output {name}"))["value"]
        .as_str()
        .unwrap()
}

fn dim(v: &Value, name: &str) -> u64 {
    v["dimensions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no dimension {name}"))["value"]
        .as_u64()
        .unwrap()
}

#[test]
fn example1_default_and_json() {
    let out = detrep(&["verify-example1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[PASS] tangent_surjective"));

    let out = detrep(&["verify-example1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["subcommand"], "verify-example1");
    assert_eq!(output(&v, "curve"), "x^2*y - 2*x*z^2 + y^2*z");
    assert_eq!(dim(&v, "augmented_rank"), 10);
    assert_eq!(dim(&v, "hom_dim"), 12);
    assert!(verdict(&v, "smooth"));
}

#[test]
fn example1_rejects_other_bundle() {
    let out = detrep(&["verify-example1", "--bundle", "N(0)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn example2_pass_and_bad_flag() {
    let v = json(&detrep(&["verify-example2", "--json"]));
    assert_eq!(output(&v, "curve"), "x^2 + y^2 - z^2");
    assert_eq!((dim(&v, "hom_dim"), dim(&v, "target_dim")), (6, 5));
    assert_eq!(
        detrep(&["verify-example2", "--frobnicate"]).status.code(),
        Some(2)
    );
}

#[test]
fn tangent_cases() {
    let ok = detrep(&[
        "tangent",
        "--bundle",
        "T",
        "--n",
        "0",
        "--v1",
        "x;2*y;3*z",
        "--v2",
        "y;z;x",
    ]);
    assert_eq!(ok.status.code(), Some(0));

    let prop = detrep(&[
        "tangent",
        "--bundle",
        "T",
        "--n",
        "0",
        "--v1",
        "x;y;z^1",
        "--v2",
        "2*x;2*y;2*z",
        "--json",
    ]);
    assert_eq!(prop.status.code(), Some(1));
    assert!(!verdict(&json(&prop), "gpli"));

    let args = [
        "tangent",
        "--bundle",
        "T",
        "--n",
        "3",
        "--v1",
        "z^4;x^4;0",
        "--v2",
        "0;z^4;y^4",
    ];
    assert_eq!(detrep(&args).status.code(), Some(1));
    let mut expect = args.to_vec();
    expect.extend(["--expect", "not-surjective"]);
    assert_eq!(detrep(&expect).status.code(), Some(0));

    let bad = detrep(&[
        "tangent", "--bundle", "T", "--n", "0", "--v1", "x;2*y", "--v2", "y;z;x",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    let syntax = detrep(&[
        "tangent", "--bundle", "T", "--n", "0", "--v1", "x;2*y;3*", "--v2", "y;z;x",
    ]);
    assert_eq!(syntax.status.code(), Some(2));
}

#[test]
fn mult_seeded_is_deterministic() {
    let run = |extra: &[&str]| {
        let mut args = vec!["mult", "--n", "0", "--trials", "5", "--json"];
        args.extend_from_slice(extra);
        let out = detrep(&args);
        assert_eq!(out.status.code(), Some(0));
        let mut v = json(&out);
        v["elapsed_ms"] = Value::Null;
        v
    };
    let a = run(&["--seed", "11"]);
    assert_eq!(a, run(&["--seed", "11"]));
    assert_eq!(a["seed"], 11);
    assert_eq!(output(&a, "surjective_trials"), "5/5");

    let env = Command::new(env!("CARGO_BIN_EXE_detrep"))
        .args(["mult", "--n", "0", "--json"])
        .env("DETREP_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&env)["seed"], 11);
}

#[test]
fn mult_remark_and_degenerate() {
    let v = json(&detrep(&["mult", "--n", "3", "--remark", "--json"]));
    assert_eq!(output(&v, "x^3*y^3*z^3"), "not in image");
    assert!(!verdict(&v, "mult_surjective"));
    let v = json(&detrep(&["mult", "--n", "6", "--remark", "--json"]));
    assert_eq!(output(&v, "x^5*y^5*z^5"), "not in image");
    assert_eq!(output(&v, "x^6*y^5*z^4"), "not in image");

    let same = detrep(&["mult", "--f", "x*y;y^2;z^2", "--g", "x*y;y^2;z^2"]);
    assert_eq!(same.status.code(), Some(1));
    assert_eq!(detrep(&["mult"]).status.code(), Some(2));
}

#[test]
fn p1p1_cases() {
    let v = json(&detrep(&["p1p1", "--json"]));
    assert_eq!(
        (
            dim(&v, "domain_dim"),
            dim(&v, "target_dim"),
            dim(&v, "rank")
        ),
        (16, 9, 9)
    );
    assert_eq!(
        detrep(&["p1p1", "--a", "2", "--b", "2", "--m", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(detrep(&["p1p1", "--a", "0"]).status.code(), Some(2));
}

#[test]
fn audit_cases() {
    let v = json(&detrep(&[
        "audit",
        "--family",
        "N",
        "--m-range",
        "0..10",
        "--degree",
        "2",
        "--json",
    ]));
    assert!(verdict(&v, "inequality_holds"));
    assert_eq!(output(&v, "selected_bundle"), "N(0)");
    assert_eq!(output(&v, "m=3"), "lhs 44 rhs 62 gap 18");
    assert_eq!(
        detrep(&["audit", "--family", "E", "--params", "3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(detrep(&["audit", "--family", "Q"]).status.code(), Some(2));
    assert_eq!(
        detrep(&["audit", "--family", "T", "--m-range", "-1..=2"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn containment_cases() {
    let sq = json(&detrep(&[
        "containment",
        "--gens-file",
        &data("squares.gens"),
        "--json",
    ]));
    assert_eq!(output(&sq, "degree"), "4");
    let lin = json(&detrep(&[
        "containment",
        "--gens-file",
        &data("linear.gens"),
        "--json",
    ]));
    assert_eq!(output(&lin, "degree"), "1");
    let pair = detrep(&[
        "containment",
        "--gens-file",
        &data("line_pair.gens"),
        "--k-max",
        "5",
        "--json",
    ]);
    assert_eq!(pair.status.code(), Some(1));
    assert_eq!(output(&json(&pair), "degree"), "not reached");
    assert_eq!(
        detrep(&["containment", "--gens-file", "/nonexistent"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn det_cases() {
    let v = json(&detrep(&[
        "det",
        "--matrix-file",
        &data("example1.matrix"),
        "--json",
    ]));
    assert_eq!(output(&v, "det"), "x^2*y - 2*x*z^2 + y^2*z");
    let v = json(&detrep(&[
        "det",
        "--matrix-file",
        &data("normalizable.matrix"),
        "--normalize",
        "--json",
    ]));
    assert!(verdict(&v, "normalization_consistent"));
}

#[test]
fn json_matches_report_schema() {
    let v = json(&detrep(&["verify-example2", "--json"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "subcommand",
        "inputs",
        "verdicts",
        "dimensions",
        "outputs",
        "elapsed_ms",
        "seed",
    ] {
        assert!(keys.contains(&k), "{k}");
    }
    let text = serde_json::to_string(&v).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, v);
}
