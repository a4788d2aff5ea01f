use std::io::Write;
use std::process::{Command, Output, Stdio};

const GENUS_14_CURVE: &str = "13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4";

fn canforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canforge"))
        .args(args)
        .env_remove("CANFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn toric_ideal_of_the_triangle() {
    let out = canforge(&["toric-ideal", "--poly", "(0,1) (7,0) (2,4)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("quadrics: 55\n"));
    assert!(text.contains("cubics: 1\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("X[")).count(), 56);
    assert!(stderr(&out).starts_with("Time: "));
    assert!(!text.contains("Time"));
}

#[test]
fn canonical_ideal_of_the_genus_14_curve() {
    let out = canforge(&["canonical-ideal", "--field", "q", GENUS_14_CURVE]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("genus: 14\ncase: clifford_ge2\nquadrics: 66\ncubics: 0\n"));
    assert!(text.contains("chi identity: confirmed for 4 forms"));
}

#[test]
fn genus_zero_is_refused() {
    let out = canforge(&["genus", "x + y + 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[genus_below_3]"));
    let json = canforge(&["--output", "json", "genus", "x + y + 1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(v["status"], "refused");
    assert_eq!(v["reason"], "genus_below_3");
}

#[test]
fn genus_reports_case() {
    let out = canforge(&["genus", GENUS_14_CURVE]);
    assert_eq!(stdout(&out), "genus: 14\ncase: clifford_ge2\n");
    let hyp = canforge(&["genus", "y^2 - x^7 - 1"]);
    assert_eq!(hyp.status.code(), Some(0));
    assert_eq!(stdout(&hyp), "genus: 3\ncase: none (hyperelliptic)\n");
}

#[test]
fn hyperelliptic_and_degenerate_refusals() {
    let hyp = canforge(&["canonical-ideal", "y^2 - x^7 - 1"]);
    assert_eq!(hyp.status.code(), Some(2));
    assert!(stderr(&hyp).contains("[hyperelliptic]"));

    let deg = canforge(&["check-nondegenerate", "x^2 + 2*x*y + y^2 + x + y"]);
    assert_eq!(deg.status.code(), Some(2));
    assert!(stdout(&deg).starts_with("degenerate on edge"));

    let ok = canforge(&["--output", "json", "check-nondegenerate", "x + y + 1"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["status"], "nondegenerate");
}

#[test]
fn parse_errors_carry_positions() {
    let out = canforge(&["canonical-ideal", "x^2 + * y"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[parse_error]"));
    assert!(stderr(&out).contains("line 1"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("polys.txt");
    std::fs::write(&path, "# triangle\n(0,0) (1,0) (0,1)\n(0,0) (2,x)\n").unwrap();
    let out = canforge(&["polygon-info", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = canforge(&["toric-ideal", "--frobnicate", "(0,0) (1,0) (0,1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_canforge"))
        .args(["polygon-info", "--output", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"poly: (0,0) (2,0) (0,2)\n(0,0) (3,0) (0,3)\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["lattice_points"], 6);
    assert_eq!(v[1]["interior_points"], 1);
    assert_eq!(v[1]["class"], "many_boundary");
}

#[test]
fn emitted_generators_verify() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = canforge(&["--output", "json", "canonical-ideal", GENUS_14_CURVE]);
    assert_eq!(emitted.status.code(), Some(0));
    let path = dir.path().join("gens.json");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let out = canforge(&["--seed", "7", "verify", "--generators", path.to_str().unwrap(), GENUS_14_CURVE]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("PASS").count(), 5);

    let toric = canforge(&["--output", "json", "toric-ideal", "(0,1) (7,0) (2,4)"]);
    std::fs::write(&path, &toric.stdout).unwrap();
    let out = canforge(&["--output", "json", "verify", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for r in reports.as_array().unwrap() {
        assert_eq!(r["pass"], true);
        assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn corrupted_generator_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = canforge(&["--output", "json", "canonical-ideal", GENUS_14_CURVE]);
    let mut file: serde_json::Value = serde_json::from_slice(&emitted.stdout).unwrap();
    let gens = file["generators"].as_array_mut().unwrap();
    let last = gens.len() - 1;
    gens[last]["terms"][0]["coeff"] = serde_json::json!("17");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = canforge(&["verify", "--generators", path.to_str().unwrap(), GENUS_14_CURVE]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL vanishing"));
    assert!(stdout(&out).contains("FAIL chi_identity"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "11", "sample-points", "--count", "20", GENUS_14_CURVE];
    let a = canforge(&args);
    let b = canforge(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);

    let c = canforge(&["--output", "json", "canonical-ideal", GENUS_14_CURVE]);
    let d = canforge(&["--output", "json", "canonical-ideal", GENUS_14_CURVE]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_canforge"));
        cmd.args(["sample-points", "--count", "5", "x + y + 1"]);
        match seed {
            Some(s) => cmd.env("CANFORGE_SEED", s),
            None => cmd.env_remove("CANFORGE_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let flag = canforge(&["--seed", "99", "sample-points", "--count", "5", "x + y + 1"]).stdout;
    assert_eq!(run(Some("99")), flag);
    assert_ne!(run(None), flag);
}

#[test]
fn cas_output() {
    let out = canforge(&["--output", "cas", "toric-ideal", "(-1,1) (0,-1) (2,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let script = stdout(&out);
    assert!(script.contains("X_m1_1"));
    assert!(script.contains("X_0_m1"));
    assert!(script.trim_end().ends_with(">;"));
    let refused = canforge(&["--output", "cas", "genus", GENUS_14_CURVE]);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn prime_fields() {
    let out = canforge(&["--field", "fp(10007)", "canonical-ideal", GENUS_14_CURVE]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("quadrics: 66"));
    let bad = canforge(&["--field", "fp(10)", "genus", "x + y + 1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("[invalid_modulus]"));
}
