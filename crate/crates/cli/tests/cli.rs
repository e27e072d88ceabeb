use std::collections::BTreeMap;
use std::path::Path;

use assert_cmd::cargo::cargo_bin_cmd;
use padic_cubic::{CubicInstance, Prime};
use padic_cubic_cli::parse_rational;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

fn run_env(args: &[&str], scan_bound: Option<&str>) -> Run {
    let mut cmd = cargo_bin_cmd!("padic-cubic");
    cmd.env_remove("PADIC_SCAN_BOUND");
    if let Some(b) = scan_bound {
        cmd.env("PADIC_SCAN_BOUND", b);
    }
    let out = cmd.args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let r = run(&full);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

/// `key: value` lines of text output.
fn text_fields(args: &[&str]) -> BTreeMap<String, String> {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.stdout
        .lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn schema(verb: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schema/{verb}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(verb: &str, doc: &Value) {
    let v = schema(verb);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{verb}: {errors:?}\n{doc:#}");
}

const CUBICS: [(&str, &str, &str); 8] = [
    ("11", "4", "5"),
    ("5", "5", "25"),
    ("7", "-3", "-2"),
    ("5", "1", "1"),
    ("5", "5", "-5"),
    ("7", "-3*p^2", "-2*p^3"),
    ("13", "1/13", "2/169"),
    ("5", "-1/25", "1/25"),
];

#[test]
fn classify_example() {
    let doc = json(&["classify", "--p", "5", "--a", "5", "--b", "25"]);
    assert_eq!(doc["region"], "Delta3");
    assert_eq!(doc["signature"], serde_json::json!({"small_ball": 1}));
    assert_eq!(doc["total"], 1);
}

#[test]
fn fp_count_example() {
    let doc = json(&["fp-count", "--p", "11", "--a", "4", "--b", "5"]);
    assert_eq!(
        (
            doc["D0"].clone(),
            doc["u_p_minus_2"].clone(),
            doc["count"].clone()
        ),
        (4.into(), 0.into(), 3.into())
    );
}

#[test]
fn solve_example() {
    let doc = json(&[
        "solve", "--p", "11", "--a", "4", "--b", "5", "--digits", "2",
    ]);
    let roots: Vec<&str> = doc["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["expansion"].as_str().unwrap())
        .collect();
    assert_eq!(
        roots,
        [
            "1 + 0·11 + O(11^2)",
            "2 + 2·11 + O(11^2)",
            "8 + 8·11 + O(11^2)"
        ]
    );
    let text = run(&[
        "solve", "--p", "11", "--a", "4", "--b", "5", "--digits", "2",
    ])
    .stdout;
    for r in roots {
        assert!(text.contains(r));
    }
}

#[test]
fn every_document_matches_its_schema() {
    for (p, a, b) in CUBICS {
        for verb in ["classify", "count", "solve"] {
            assert_valid(verb, &json(&[verb, "--p", p, "--a", a, "--b", b]));
        }
    }
    assert_valid(
        "fp-count",
        &json(&["fp-count", "--p", "5", "--a", "1", "--b", "1"]),
    );
    assert_valid("residue", &json(&["residue", "--p", "7", "--a", "2"]));
    assert_valid(
        "residue",
        &json(&["residue", "--p", "5", "--a", "32", "--q", "5"]),
    );
    assert_valid(
        "verify",
        &json(&["verify", "--p", "11", "--r1", "1", "--r2", "2"]),
    );
    assert_valid(
        "verify",
        &json(&["verify", "--p", "7", "--r1", "1", "--r2", "-1"]),
    );
    assert_valid(
        "sweep",
        &json(&["sweep", "--p", "7", "--count", "20", "--seed", "3"]),
    );
}

#[test]
fn text_and_json_agree() {
    for (p, a, b) in CUBICS {
        let args = ["classify", "--p", p, "--a", a, "--b", b];
        let doc = json(&args);
        let text = text_fields(&args);
        assert_eq!(text["region"], doc["region"].as_str().unwrap());
        assert_eq!(text["total"], doc["total"].to_string());
        for (d, n) in doc["counts"].as_object().unwrap() {
            assert_eq!(text[&format!("count {d}")], n.to_string());
        }
        for (d, s) in doc["solvable"].as_object().unwrap() {
            assert_eq!(text[&format!("solvable {d}")], s.to_string());
        }

        let args = ["count", "--p", p, "--a", a, "--b", b];
        let doc = json(&args);
        for (k, v) in text_fields(&args).iter().filter(|(k, _)| *k != "equation") {
            assert_eq!(*v, doc[k].to_string());
        }
    }
    let args = ["fp-count", "--p", "11", "--a", "4", "--b", "5"];
    let doc = json(&args);
    for k in ["D0", "u_p_minus_2", "count"] {
        assert_eq!(text_fields(&args)[k], doc[k].to_string());
    }
}

#[test]
fn solved_roots_satisfy_the_printed_residual() {
    for (p, a, b) in CUBICS {
        let doc = json(&["solve", "--p", p, "--a", a, "--b", b, "--digits", "12"]);
        let prime = Prime::new(p.parse().unwrap()).unwrap();
        let inst = CubicInstance::new(
            parse_rational(a, prime).unwrap(),
            parse_rational(b, prime).unwrap(),
        )
        .unwrap();
        let bound = doc["residual_exponent"].as_i64();
        for r in doc["roots"].as_array().unwrap() {
            let x = parse_rational(r["value"].as_str().unwrap(), prime).unwrap();
            let residual = inst.evaluate(&x).valuation();
            assert_eq!(residual.finite(), r["residual_exponent"].as_i64());
            if let Some(bound) = bound {
                assert!(residual.at_least(bound));
            }
            if let Some(unit) = r["unit_residual_exponent"].as_i64() {
                assert!(unit >= 12);
            }
        }
        let total: u64 = doc["roots"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["multiplicity"].as_u64().unwrap())
            .sum();
        assert_eq!(total, doc["total"].as_u64().unwrap());
    }
}

#[test]
fn exit_codes_and_streams() {
    let bad_prime = run(&["classify", "--p", "4", "--a", "1", "--b", "1"]);
    assert_eq!(bad_prime.code, 1);
    assert!(bad_prime.stdout.is_empty());
    assert!(bad_prime.stderr.contains("prime"));

    let small_prime = run(&["classify", "--p", "3", "--a", "1", "--b", "1"]);
    assert_eq!(small_prime.code, 1);

    let zero = run(&["solve", "--p", "7", "--a", "0", "--b", "1"]);
    assert_eq!(zero.code, 1);
    assert!(zero.stderr.contains("--a"));

    let missing = run(&["classify", "--p", "7", "--a", "1"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stdout.is_empty());

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.code, 1);

    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("classify"));
}

#[test]
fn scan_bound_from_environment() {
    let args = ["solve", "--p", "11", "--a", "4", "--b", "5"];
    let limited = run_env(&args, Some("5"));
    assert_eq!(limited.code, 1);
    assert!(
        limited.stderr.contains("PADIC_SCAN_BOUND"),
        "{}",
        limited.stderr
    );
    assert_eq!(run_env(&args, Some("11")).code, 0);
}

#[test]
fn verify_reports() {
    let worked = text_fields(&["verify", "--p", "11", "--r1", "1", "--r2", "2"]);
    assert_eq!(worked["status"], "PASS");
    assert_eq!(worked["roots matched"], "3/3");

    let double = text_fields(&["verify", "--p", "7", "--r1", "1", "--r2", "1"]);
    assert_eq!(double["status"], "PASS");
    assert_eq!(double["repeated root"], "yes");

    let skipped = json(&["verify", "--p", "7", "--r1", "1", "--r2", "-1"]);
    assert_eq!(skipped["status"], "SKIPPED");
}

#[test]
fn sweep_reports_counts() {
    let doc = json(&["sweep", "--p", "5", "--count", "40", "--seed", "9"]);
    assert_eq!(doc["status"], "PASS");
    assert_eq!(doc["instances"], 40);
    assert_eq!(doc["passed"], 40);
}

#[test]
fn residue_verb() {
    let doc = json(&["residue", "--p", "7", "--a", "2"]);
    assert_eq!(
        (doc["sqrt"].clone(), doc["cbrt"].clone()),
        (true.into(), false.into())
    );
    let doc = json(&["residue", "--p", "5", "--a", "6", "--q", "5"]);
    assert_eq!(doc["qth_root"], false);
}
