use std::process::{Command, Output};

use brauerkt_cli::Report;

fn brauerkt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauerkt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Report {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = brauerkt(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report json")
}

#[test]
fn ram_of_constant_times_t() {
    let r = json(&["ram", "(5,t)"]);
    let rows = r.outcome["divisor"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["point"], "(t)");
    assert_eq!(rows[0]["residue"], "5");
    assert_eq!(rows[1]["point"], "∞");
    assert_eq!(rows[1]["residue"], "5");
    assert_eq!(r.outcome["reciprocity"], "OK");
}

#[test]
fn distinguish_by_residue_field() {
    let r = json(&["distinguish", "(-1,t)", "(-2,t)"]);
    assert_eq!(r.outcome["verdict"], "DistinguishedByRamificationField");
    assert_eq!(r.outcome["left"]["field"], "Q(i)");
    assert_eq!(r.outcome["right"]["field"], "Q(√-2)");
}

#[test]
fn doubled_symbol_equals_zero() {
    let r = json(&["equal", "(t,-1)+(t,-1)", "0"]);
    assert_eq!(r.outcome["verdict"], "Equal");
    let r = json(&["equal", "(t,-1)", "0"]);
    assert_eq!(r.outcome["verdict"], "NotEqual");
    assert_eq!(r.outcome["certificate"]["kind"], "ResidueMismatch");
}

#[test]
fn enumerate_over_f7() {
    let r = json(&["--base", "fq:7", "--p", "3", "enumerate", "(3,t)"]);
    assert_eq!(r.outcome["bound"], 4);
    let twists: Vec<_> = r.outcome["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["twist"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(twists, ["(1, 2)", "(2, 1)"]);
}

#[test]
fn witness_files_verify_in_both_formats() {
    let dir = std::env::temp_dir().join(format!("brauerkt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for format in ["text", "json"] {
        let out = brauerkt(&["--format", format, "witness", "(5,t)", "--at", "0"]);
        assert!(out.status.success());
        let path = dir.join(format!("w.{format}"));
        std::fs::write(&path, &out.stdout).unwrap();
        let r = json(&["verify-witness", "(5,t)", path.to_str().unwrap()]);
        assert_eq!(r.outcome["verified"], true, "{format}");
        assert_eq!(r.outcome["scope"], "Full");
        assert_eq!(r.outcome["pulled_back"], "(5, -5*s^2)");
    }
    let forged = dir.join("forged.txt");
    std::fs::write(&forged, "symbol: (5, t)\nat: 0\ntorsion: 2\ndefining: 5*t\nsubstitution: none\n").unwrap();
    let r = json(&["verify-witness", "(5,t)", forged.to_str().unwrap()]);
    assert_eq!(r.outcome["verified"], false);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn negative_witness_point() {
    let r = json(&["witness", "(-1, t+1)", "--at", "-1"]);
    assert_eq!(r.outcome["at"], "-1");
    assert_eq!(r.outcome["substitution"], "s^2 - 1");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["--format", "json", "distinguish", "(5,t)", "(5,2*t)"],
        vec!["--format", "text", "ram", "(t^2-2, 3*t) + (5, t-1)"],
        vec!["--base", "fq:9", "--format", "json", "ram", "(z, t^2 + 1)"],
    ] {
        let a = brauerkt(&args);
        let b = brauerkt(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_does_not_change_results() {
    let a = brauerkt(&["--base", "fq:13", "--p", "3", "--seed", "1", "--format", "json", "enumerate", "(2, t^3 - 5)"]);
    let b = brauerkt(&["--base", "fq:13", "--p", "3", "--seed", "99", "--format", "json", "enumerate", "(2, t^3 - 5)"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| brauerkt(args).status.code().unwrap();
    assert_eq!(code(&["ram", "(t,"]), 2);
    assert_eq!(code(&["ram", "(0, t)"]), 2);
    assert_eq!(code(&["--p", "3", "ram", "(t, 2)"]), 3);
    assert_eq!(code(&["--base", "fq:6", "ram", "(t, 2)"]), 3);
    assert_eq!(code(&["enumerate", "(t, 2)"]), 3);
    assert_eq!(code(&["--base", "fq:7", "--p", "7", "ram", "(t, 2)"]), 3);
    assert_eq!(code(&["nonsense"]), 1);
    assert_eq!(code(&["--base", "r", "ram", "(t, 2)"]), 1);
    assert_eq!(code(&["witness", "(5,t)", "--at", "3"]), 1);
    assert_eq!(code(&["verify-witness", "(5,t)", "/nonexistent/w.txt"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn syntax_errors_name_the_offset() {
    let out = brauerkt(&["ram", "(t,"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 3"), "{err}");
}
