//! End-to-end checks of the command-line binary: exit codes, error
//! wording, and frozen output rows.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubeperm"))
        .args(args)
        .output()
        .expect("failed to spawn cubeperm");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout not utf-8"),
        String::from_utf8(out.stderr).expect("stderr not utf-8"),
    )
}

#[test]
fn report_rejects_composite() {
    let (code, _, err) = run(&["report", "8"]);
    assert_eq!(code, 1);
    assert!(err.contains("8 is not prime"), "stderr was: {err}");
}

#[test]
fn report_default_root_shows_actual_sign() {
    let (code, out, _) = run(&["report", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("actual sign: -1"), "stdout was: {out}");
    assert!(out.contains("g = 3"));
}

#[test]
fn report_json_fields() {
    let (code, out, _) = run(&["report", "19", "--g", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p"], 19);
    assert_eq!(v["g"], 2);
    assert_eq!(v["n"], 6);
    assert_eq!(v["case"], "I");
    assert_eq!(v["mod12"], 7);
    assert_eq!(v["pi"]["a"], 2);
    assert_eq!(v["pi"]["b"], -3);
    assert_eq!(v["w"], 7);
    assert_eq!(v["r"], 7);
    assert_eq!(v["s"], -3);
    assert_eq!(v["delta"], 1);
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["beta"], 1);
    assert_eq!(v["gamma"], 3);
    assert_eq!(v["h"], 1);
    assert_eq!(v["actual_sign"], 1);
    assert!(v["balance"].is_null());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["class_rep"], 2);
    assert_eq!(rows[0]["sign"], -1);
    assert_eq!(rows[0]["agrees"], false);
    assert_eq!(rows[1]["class_rep"], 10);
    assert_eq!(rows[1]["sign"], 1);
    assert_eq!(rows[1]["agrees"], true);
}

#[test]
fn sign_command_prints_signed_unit() {
    let (code, out, _) = run(&["sign", "7", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-1\n");

    let (code, out, _) = run(&["sign", "13", "7"]);
    assert_eq!(code, 0);
    assert_eq!(out, "+1\n");
}

#[test]
fn sign_rejects_non_generator() {
    let (code, _, err) = run(&["sign", "13", "5"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("5 is not a primitive root modulo 13"),
        "stderr was: {err}"
    );
}

#[test]
fn classnum_command() {
    let (code, out, _) = run(&["classnum", "23"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3\n");

    let (code, _, err) = run(&["classnum", "13"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("not congruent to 3 mod 4"),
        "stderr was: {err}"
    );
}

#[test]
fn verify_window_without_primes_is_ok() {
    let (code, out, _) = run(&["verify", "--max-p", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("primes audited: 0"), "stdout was: {out}");
    assert!(out.trim_end().ends_with("result: ok"));
}

#[test]
fn verify_lemma_suites_pass_to_300() {
    let (code, out, _) = run(&["verify", "--scope", "lemmas", "--max-p", "300"]);
    assert_eq!(code, 0, "stdout was: {out}");
    assert!(out.trim_end().ends_with("result: ok"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_theorem_csv_is_frozen() {
    let (code, out, _) = run(&[
        "verify", "--scope", "theorem", "--max-p", "20", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let want = "\
p,case,mod12,n,g,class_gn,pi_a,pi_b,w,r,s,delta,alpha,beta,gamma,h,actual_sign,exponent,formula_sign,agrees,plus,minus
7,I,7,2,3,2,-1,-3,2,1,-3,1,1,0,1,1,-1,-1,-1,1,,
7,I,7,2,5,4,2,3,4,1,3,1,1,1,0,1,-1,8,1,0,,
13,I,1,4,2,,-4,-3,3,-5,-3,1,1,1,1,,-1,,,,2,2
19,I,7,6,2,7,2,-3,7,7,-3,1,2,1,3,1,1,21,-1,0,,
19,I,7,6,10,11,5,3,11,7,3,1,2,3,1,1,1,30,1,1,,
";
    assert_eq!(out, want);
}

#[test]
fn verify_output_is_jobs_invariant() {
    let (c1, serial, _) = run(&["verify", "--max-p", "200", "--format", "json"]);
    let (c2, parallel, _) = run(&[
        "verify", "--max-p", "200", "--format", "json", "--jobs", "3",
    ]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(serial, parallel);
}

#[test]
fn verify_writes_out_file() {
    let path = std::env::temp_dir().join(format!("cubeperm-cli-test-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, out, _) = run(&[
        "verify", "--scope", "theorem", "--max-p", "20", "--format", "csv", "--out", path_str,
    ]);
    assert_eq!(code, 0);
    assert!(
        out.is_empty(),
        "stdout should be quiet with --out, was: {out}"
    );
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("p,case,mod12,"));
    assert_eq!(written.lines().count(), 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_rejects_zero_jobs() {
    let (code, _, err) = run(&["verify", "--jobs", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("--jobs"), "stderr was: {err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    assert!(out.contains("report"));

    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains("cubeperm"));
}
