use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvezeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn hermitian_zeta() {
    let v = json(&["zeta", "--curve", "hermitian q=3"]);
    assert_eq!(v["q"], 3);
    assert_eq!(v["g"], 3);
    assert_eq!(v["L"], serde_json::json!(["1", "0", "9", "0", "27", "0", "27"]));
    let text = stdout(&run(&["zeta", "--curve", "hermitian q=3"]));
    assert!(text.contains("1 + 9*T^2 + 27*T^4 + 27*T^6"), "{text}");
}

#[test]
fn classify_blache() {
    let v = json(&["classify", "--curve", "as p=2 q=2 f=x^23+x^21+x^17+x^7+x^5"]);
    assert_eq!(v["p_rank"], 0);
    assert_eq!(v["supersingular"], false);
    let slopes: Vec<&str> = v["slopes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(slopes.len(), 22);
    assert_eq!(slopes.iter().filter(|&&s| s == "5/11").count(), 11);
    assert_eq!(slopes.iter().filter(|&&s| s == "6/11").count(), 11);
}

#[test]
fn strata_example() {
    let v = json(&["strata", "--example", "ecidim"]);
    let rows: Vec<(u64, u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["sdim"].as_u64().unwrap(), r["c"].as_u64().unwrap(), r["i"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(6, 5, 1), (7, 3, 4)]);
}

#[test]
fn count_and_np() {
    let v = json(&["count", "--curve", "hermitian q=2", "--s", "2"]);
    assert_eq!(v["N"], serde_json::json!([3, 9]));
    let v = json(&["np", "--coeffs", "1,2,2", "--q", "2"]);
    assert_eq!(v["g"], 1);
    let out = run(&["np", "--polygon", "(1/4)^4, (3/4)^4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains('o'), "ASCII hull expected");
}

#[test]
fn eo_and_construct() {
    let v = json(&["eo", "--g", "3"]);
    assert_eq!(v.as_array().unwrap().len(), 8);
    let v = json(&["construct", "--p", "3", "--delta", "10"]);
    assert_eq!(v["genus"], "60");
    let v = json(&["construct", "--p", "2", "--delta", "3", "--instantiate", "--verify"]);
    assert!(v.to_string().contains("supersingular"));
}

#[test]
fn catalog_and_selftest() {
    let v = json(&["catalog"]);
    assert_eq!(v["version"], 1);
    let out = run(&["selftest"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn exit_codes() {
    let parse_errors: &[&[&str]] = &[
        &["zeta", "--curve", "nonsense q=3"],
        &["np", "--polygon", "((("],
        &["zeta", "--curve", "hermitian q=6"],
        &["count"],
    ];
    for args in parse_errors {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let domain_errors: &[(&[&str], &str)] = &[
        (&["zeta", "--curve", "hyp q=3 f=x^3"], "error[NotSquarefree]"),
        (&["zeta", "--curve", "legendre p=5 lambda=1"], "error[DegenerateLambda]"),
        (&["zeta", "--curve", "as p=3 q=3 f=1/x^3"], "error[WildPoleOrder]"),
        (&["construct", "--p", "4", "--delta", "1"], "error[NotPrime]"),
        (&["--cap", "1024", "zeta", "--curve", "hermitian q=4"], "error[CapExceeded]"),
        (&["np", "--polygon", "(1/3)^2"], "error[NonIntegralBreakPoint]"),
    ];
    for (args, code) in domain_errors {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with(code), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn output_is_byte_stable() {
    let cases: &[&[&str]] = &[
        &["--format", "json", "zeta", "--curve", "hermitian q=4"],
        &["--format", "json", "construct", "--p", "2", "--delta", "3", "--instantiate", "--verify"],
        &["eo", "--g", "4"],
        &["strata", "--g", "5", "--all"],
        &["--threads", "1", "--format", "json", "count", "--curve", "hyp q=7 f=x^5+3*x+1", "--s", "3"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    // thread count does not change the answer
    let one = run(&["--threads", "1", "zeta", "--curve", "hermitian q=4"]);
    let many = run(&["--threads", "4", "zeta", "--curve", "hermitian q=4"]);
    assert_eq!(one.stdout, many.stdout);
}
