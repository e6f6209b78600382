use legtors::cli::{precision_bits, run};
use serde_json::Value;

fn legtors(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("legtors").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = legtors(&full);
    assert!(code == 0 || code == 1, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn tset_rational_members() {
    let v = json(&["tset", "--alpha", "3", "--beta", "-3", "--max-order", "8"]);
    let members: Vec<&str> = v["members"].as_array().unwrap().iter().map(|m| m["lambda"].as_str().unwrap()).collect();
    assert_eq!(members, ["-3", "9"]);
    assert_eq!(v["complete"], true);
}

#[test]
fn tset_in_a_number_field() {
    let v = json(&["tset", "--field", "m(t)=t^2+1;i=t;mi=-t", "--alpha", "i", "--beta", "mi", "--max-order", "6"]);
    let members: Vec<&str> = v["members"].as_array().unwrap().iter().map(|m| m["lambda"].as_str().unwrap()).collect();
    assert_eq!(members, ["-1"]);
}

#[test]
fn census_table_rows() {
    let (code, out, _) = legtors(&["census", "--max-bidegree", "2", "--format", "table"]);
    assert_eq!(code, 0);
    for row in ["(1,1):3", "(1,2):3", "(2,1):3", "(2,2):18"] {
        assert!(out.lines().any(|l| l == row), "{row} missing from\n{out}");
    }
}

#[test]
fn census_json_shape() {
    let v = json(&["census", "--max-bidegree", "2"]);
    let first = &v["entries"][0];
    assert_eq!(first["bidegree"], serde_json::json!([1, 1]));
    assert_eq!(first["count"], 3);
    assert_eq!(first["sources"][0].as_array().unwrap().len(), 5);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(legtors(&["nonsense"]).0, 2);
    assert_eq!(legtors(&["verify", "--suite", "unknown"]).0, 2);
    assert_eq!(legtors(&["order", "--lambda", "1", "--x", "2"]).0, 2);
    assert_eq!(legtors(&["order", "--lambda", "x/", "--x", "2"]).0, 2);
    assert_eq!(legtors(&["tset", "--alpha", "2", "--beta", "3", "--max-order", "4", "--bogus"]).0, 2);
    assert_eq!(legtors(&["verify-table1", "--corpus", "/nonexistent/table1.txt"]).0, 2);
    assert_eq!(legtors(&["--help"]).0, 0);
}

#[test]
fn precision_variable() {
    assert_eq!(precision_bits(None).unwrap(), 200);
    assert_eq!(precision_bits(Some("256")).unwrap(), 256);
    assert!(precision_bits(Some("lots")).is_err());
    assert!(precision_bits(Some("8")).is_err());
}

#[test]
fn screen_clause_tag() {
    let v = json(&["screen", "--alpha", "2", "--beta", "3"]);
    assert_eq!(v["verdict"], "empty");
    assert_eq!(v["clause"], "Cor-rat-1");
    let v = json(&["screen", "--alpha", "3", "--beta", "-3", "--decide"]);
    let members: Vec<&str> = v["decision"]["members"].as_array().unwrap().iter().map(|m| m["lambda"].as_str().unwrap()).collect();
    assert_eq!(members, ["-3", "9"]);
}

#[test]
fn order_and_certificate() {
    let v = json(&["order", "--lambda", "4", "--x", "2"]);
    assert_eq!(v["result"], serde_json::json!({"tag": "order", "n": 4}));
    let v = json(&["order", "--field", "zeta8", "--lambda", "-1", "--x", "i"]);
    assert_eq!(v["result"]["n"], 4);
    let (code, out, _) = legtors(&["certify-nontorsion", "--lambda", "5", "--x", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certified"], code == 0);
}

#[test]
fn psi_commands() {
    let v = json(&["psi", "--n", "3"]);
    assert!(v["poly"].as_str().unwrap().contains('λ'));
    let v = json(&["psi", "--family", "weierstrass", "--n", "3", "--eval", "a=-7,b=6,x=1"]);
    assert_eq!(v["eval"]["value"], "-16");
    let (code, _, _) = legtors(&["psi", "--n", "5", "--check", "congruence"]);
    assert_eq!(code, 0);
    let (code, out, _) = legtors(&["psi", "--n", "4", "--check", "special", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check"]["detail"]["at_lambda_flipped"], true);
}

#[test]
fn weierstrass_and_unity() {
    let v = json(&["weierstrass-screen", "--x1", "1", "--x2", "2", "--x3", "3"]);
    let pairs: Vec<(String, String)> =
        v["candidates"].as_array().unwrap().iter().map(|c| (c["a"].as_str().unwrap().to_string(), c["b"].as_str().unwrap().to_string())).collect();
    assert_eq!(pairs, [("-7".into(), "6".into()), ("-13".into(), "12".into()), ("-19".into(), "30".into())]);
    let v = json(&["roots-of-unity", "--order", "6", "--verify"]);
    assert_eq!(v["members"].as_array().unwrap().len(), 3);
    assert_eq!(v["ok"], true);
}

#[test]
fn resultant_and_corpus() {
    let v = json(&["resultant", "--m", "3", "--check-squarefree"]);
    assert_eq!(v["bidegree"], serde_json::json!([6, 6]));
    assert_eq!(v["squarefree"], true);
    let v = json(&["resultant", "--pair", "3,3"]);
    assert_eq!(v["bidegree"], serde_json::json!([6, 6]));
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/table1.txt");
    let v = json(&["verify-table1", "--corpus", corpus]);
    assert_eq!(v["passed"], 35);
    assert_eq!(v["ok"], true);
}

#[test]
fn json_is_deterministic_and_matches_text() {
    let args = ["tset", "--alpha", "3/8", "--beta", "-9/16", "--max-order", "12", "--format", "json"];
    let a = legtors(&args).1;
    let b = legtors(&args).1;
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let text = legtors(&args[..args.len() - 2]).1;
    for m in v["members"].as_array().unwrap() {
        let shown = format!("{} ({},{})", m["lambda"].as_str().unwrap(), m["order_alpha"], m["order_beta"]);
        assert!(text.contains(&shown), "{shown} not in {text}");
    }
}

#[test]
fn fast_suite_reports_only_the_recorded_deviation() {
    let (code, out, _) = legtors(&["verify", "--suite", "fast", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 12);
    for c in checks {
        assert!(c["pass"] == true || (c["id"] == 3 && c["deviation"].is_string()), "{c}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_legtors");
    let status = std::process::Command::new(bin).arg("nonsense").output().unwrap().status;
    assert_eq!(status.code(), Some(2));
    let out = std::process::Command::new(bin).args(["census", "--max-bidegree", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = std::process::Command::new(bin).args(["tset", "--alpha", "3", "--beta", "-3", "--max-order", "4"]).env("LEGTORS_PRECISION_BITS", "abc").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
