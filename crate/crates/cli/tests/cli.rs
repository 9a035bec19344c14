use std::process::{Command, Output};

use heisweil::forms::QuadraticForm;
use heisweil::heis::{HeisType, HeisenbergGroup};
use heisweil::reps::{heisenberg_rep, CycRep};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisweil")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn quaternion_model() {
    let doc = json(&["heis", "build", "--p", "2", "--n", "1", "--type", "negative"]);
    assert_eq!(doc["order"], 8);
    assert_eq!(doc["type"], "negative");
    let h: HeisenbergGroup = serde_json::from_value(doc["group"].clone()).unwrap();
    assert_eq!(h, HeisenbergGroup::standard_model(2, 1, HeisType::Negative).unwrap());
}

#[test]
fn central_product_and_classify() {
    let doc = json(&["heis", "central-product", "--p", "2", "--n1", "1", "--type1", "negative", "--n2", "1", "--type2", "negative"]);
    assert_eq!((doc["order"].as_u64(), doc["type"].as_str()), (Some(32), Some("positive")));
    let doc = json(&["heis", "classify", "--p", "2", "--gram", "[[1,1],[0,1]]"]);
    assert_eq!(doc["type"], "negative");
    assert_eq!(doc["squaring_form"]["kind"], "nonsplit");
}

#[test]
fn spin8_example() {
    let doc = json(&["rootdata", "appendix-d"]);
    assert_eq!(doc["weyl_order"], 192);
    assert_eq!(doc["stabilizer_order"], 32);
}

#[test]
fn norm_trace_zeros() {
    let doc = json(&["forms", "count-zeros", "--model", "norm-trace", "--q", "4"]);
    assert_eq!(doc["zeros"], 6);
    let doc = json(&["forms", "classify", "--model", "nonsplit", "--p", "2", "--n", "2"]);
    let q: QuadraticForm = serde_json::from_value(doc["form"].clone()).unwrap();
    assert_eq!(q, QuadraticForm::nonsplit_model(2, 2).unwrap());
    assert_eq!(doc["kind"], "nonsplit");
}

#[test]
fn representation_round_trip() {
    let doc = json(&["rep", "heisenberg", "--p", "3", "--n", "1", "--psi", "2", "--matrices"]);
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["irreducible"], true);
    let rep: CycRep = serde_json::from_value(doc["rep"].clone()).unwrap();
    let h = HeisenbergGroup::standard_model(3, 1, HeisType::Odd).unwrap();
    assert_eq!(rep, heisenberg_rep(&h, 2).unwrap().rep);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    assert_eq!(run(&["heis", "bogus"]).status.code(), Some(64));
    let out = run(&["heis", "build", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
    assert_eq!(run(&["rootdata", "commutator-check", "--group", "SL2", "--q", "9"]).status.code(), Some(2));
    let out = run(&["rootdata", "commutator-check", "--group", "SL3", "--q", "7", "--abelianization"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["verify", "all", "--criterion", "8"]).status.code(), Some(0));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("heisweil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torsion.json");
    let out = run(&["rootdata", "torsion", "--type", "A3", "--pi1", "4", "--output", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["primes"], serde_json::json!([2]));
    std::fs::remove_dir_all(&dir).unwrap();
}

/// One small invocation per subcommand.
const SAMPLES: &[&[&str]] = &[
    &["heis", "build", "--p", "3"],
    &["heis", "classify", "--p", "2", "--n", "2", "--type", "negative"],
    &["heis", "central-product", "--p", "3", "--n1", "1", "--n2", "1"],
    &["rep", "heisenberg", "--p", "2", "--n", "2"],
    &["rep", "fs", "--p", "2", "--type", "negative"],
    &["rep", "svn", "--p", "5"],
    &["autz", "report", "--p", "2", "--type", "negative"],
    &["autz", "splits", "--p", "2"],
    &["weil", "linearize", "--p", "2", "--n", "2", "--matrices"],
    &["weil", "r-linearize", "--p", "2", "--n", "2"],
    &["weil", "gerardin", "--p", "3"],
    &["weil", "count", "--p", "3"],
    &["forms", "classify", "--model", "split", "--p", "3", "--n", "2"],
    &["forms", "count-zeros", "--model", "norm", "--p", "5"],
    &["rootdata", "torsion", "--type", "E8,G2"],
    &["rootdata", "centralizer", "--type", "D4", "--p", "2", "--weights", "[[1,1,0,0],[0,1,1,0]]"],
    &["rootdata", "appendix-d"],
    &["rootdata", "commutator-check", "--group", "SL3", "--q", "4", "--abelianization"],
    &["verify", "all", "--criterion", "10"],
];

#[test]
fn outputs_match_schemas() {
    for args in SAMPLES {
        let doc = json(args);
        let mut schema_args = args[..2].to_vec();
        schema_args.push("--schema");
        let schema = json(&schema_args);
        let required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = required.clone();
        keys.sort_unstable();
        expected.sort_unstable();
        assert_eq!(keys, expected, "{args:?}");
        for (name, spec) in schema["properties"].as_object().unwrap() {
            let value = &doc[name];
            let ok = match spec["type"].as_str() {
                Some("integer") => value.is_i64() || value.is_u64(),
                Some("boolean") => value.is_boolean(),
                Some("string") => value.is_string(),
                Some("object") => value.is_object(),
                Some("array") => value.is_array(),
                _ => true,
            };
            assert!(ok, "{args:?}: {name} = {value}");
        }
    }
    let all = json(&["--schema"]);
    assert_eq!(all.as_object().unwrap().len(), SAMPLES.len());
}

#[test]
fn deterministic_bytes() {
    for args in [
        &["rootdata", "centralizer", "--type", "A2", "--p", "3", "--weights", "[[1,0,-1]]"][..],
        &["weil", "linearize", "--p", "2", "--n", "2", "--subgroup", "stabilizer-sylow2", "--matrices"],
        &["autz", "report", "--p", "2", "--n", "2"],
        &["verify", "all", "--criterion", "11", "--seed", "7"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
