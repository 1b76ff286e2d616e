use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn topoqd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topoqd"))
        .args(args)
        .env_remove("TOPOQD_ENUM_CAP")
        .env_remove("TOPOQD_ELEM_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = topoqd(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/topoqd.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn every_document_validates() {
    let v = schema();
    let trivial = data("trivial.grp");
    let runs: Vec<Vec<&str>> = vec![
        vec!["group", "info", "--group", "S3"],
        vec!["sectors", "--group", "S3", "--genus", "2", "--enumerate", "--oracle"],
        vec!["sectors", "--group", "A5", "--genus", "40"],
        vec!["fuse", "points", "--group", "Z4", "chi1", "chi1", "--oracle"],
        vec!["fuse", "points", "--group", "S3", "chi2", "chi2", "chi2"],
        vec!["fuse", "loops", "--group", "S3", "--mu", "C_r", "--nu", "C_s"],
        vec![
            "fuse",
            "loops",
            "--group",
            "Q8",
            "--mu",
            "i",
            "--nu",
            "j",
            "--borromean",
        ],
        vec!["pairing", "--group", "S3", "--manifold", "s2xs1"],
        vec!["pairing", "--group", "D4", "--manifold", "t2"],
        vec!["verify", "--group", "S3", "--max-genus", "2"],
        vec!["verify", "--group", &trivial],
        vec!["dump-chartable", "--group", "A5"],
        vec!["report", "--group", "S3"],
    ];
    for args in runs {
        let doc = json(&args);
        assert_eq!(doc["schema_version"], "1.0.0");
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed() {
    let v = schema();
    let doc = json(&["fuse", "loops", "--group", "S3", "--mu", "C_s", "--nu", "C_s"]);
    let mut bad = doc.clone();
    bad["channels"][0]["p"] = "0.5".into();
    assert!(!v.is_valid(&bad));
    let mut bad = doc;
    bad["schema_version"] = "0.9".into();
    assert!(!v.is_valid(&bad));
}

#[test]
fn verify_s3_exits_zero_with_paper_values() {
    let out = topoqd(&["verify", "--group", "S3", "--max-genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rel = |id: &str| {
        doc["relations"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["id"] == id)
            .unwrap()
            .clone()
    };
    assert_eq!(rel("R1")["lhs"], serde_json::json!([3, 11]));
    assert_eq!(rel("R2")["lhs"], serde_json::json!([11, 11]));
    assert_eq!(rel("R3")["lhs"], 36);
    assert!(doc["relations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
}

#[test]
fn trivial_file_all_ones() {
    let doc = json(&["verify", "--group", &data("trivial.grp")]);
    assert_eq!(doc["all_pass"], true);
    for r in doc["relations"].as_array().unwrap() {
        if r["id"] == "R9" {
            continue;
        }
        let flat = |v: &Value| -> Vec<Value> {
            match v {
                Value::Array(a) => a.clone(),
                other => vec![other.clone()],
            }
        };
        if r["id"] == "R5" {
            assert_eq!(r["lhs"], r["rhs"]);
            continue;
        }
        for x in flat(&r["lhs"]).into_iter().chain(flat(&r["rhs"])) {
            assert_eq!(x, 1, "{}", r["id"]);
        }
    }
}

#[test]
fn non_associative_file_is_an_input_error() {
    let out = topoqd(&["sectors", "--group", &data("bad.grp"), "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("witness (1, 1, 2)"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        topoqd(&["group", "info", "--group", "not-a-group"]).status.code(),
        Some(2)
    );
    assert_eq!(topoqd(&["sectors", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(topoqd(&["verify", "--group", "S3", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        topoqd(&["fuse", "points", "--group", "S3", "chi9", "chi0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        topoqd(&["sectors", "--group", "A5", "--genus", "5", "--enumerate"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        topoqd(&[
            "sectors",
            "--group",
            "S3",
            "--genus",
            "2",
            "--enumerate",
            "--enum-cap",
            "10"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        topoqd(&["group", "info", "--group", "S4", "--elem-cap", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn env_caps_apply() {
    let out = Command::new(env!("CARGO_BIN_EXE_topoqd"))
        .args(["sectors", "--group", "S3", "--genus", "3", "--enumerate"])
        .env("TOPOQD_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_topoqd"))
        .args(["group", "info", "--group", &data("s3_perm.grp")])
        .env("TOPOQD_ELEM_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_thread_count_independent() {
    for args in [
        vec!["sectors", "--group", "S4", "--genus", "2", "--enumerate"],
        vec!["report", "--group", "D4", "--max-genus", "3"],
    ] {
        let one = topoqd(&[args.as_slice(), &["--threads", "1"]].concat()).stdout;
        let four = topoqd(&[args.as_slice(), &["--threads", "4"]].concat()).stdout;
        let again = topoqd(&[args.as_slice(), &["--threads", "4"]].concat()).stdout;
        assert_eq!(one, four);
        assert_eq!(four, again);
    }
}

#[test]
fn seed_does_not_change_output() {
    let a = topoqd(&["dump-chartable", "--group", "S4", "--format", "md"]).stdout;
    let b = topoqd(&["dump-chartable", "--group", "S4", "--format", "md", "--seed", "7"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn md_loop_fusion_table() {
    let out = topoqd(&[
        "fuse", "loops", "--group", "S3", "--mu", "C_r", "--nu", "C_r", "--format", "md",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "### loop fusion (C_r, C_r)\n\n\
         | (mu, nu) | C_(g,h) | lambda = C_gh | rho = C_[g,h] | d^2_(g,h) | p |\n\
         |---|---|---|---|---|---|\n\
         | (C_r, C_r) | C_(r,r^2) | C_1 | C_1 | 2 | 1/2 |\n\
         | (C_r, C_r) | C_(r,r) | C_r | C_1 | 2 | 1/2 |\n"
    );
}

#[test]
fn rationals_carry_string_and_decimal() {
    let doc = json(&["fuse", "loops", "--group", "S3", "--mu", "C_s", "--nu", "C_s"]);
    let by_lambda = doc["by_lambda"].as_array().unwrap();
    assert_eq!(by_lambda[1]["lambda"], "C_r");
    assert_eq!(by_lambda[1]["p"], "2/3");
    assert!((by_lambda[1]["decimal"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn tsv_verify_has_one_row_per_relation() {
    let out = topoqd(&["verify", "--group", "Q8", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('R')).count(), 10);
}
