use std::process::{Command, Output};

use delannoy::families::{self, Family, Route};
use delannoy::MultiPoly;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delannoy")).args(args).output().expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

#[test]
fn gen_pretty_examples() {
    let out = bin(&["gen", "d", "--n", "2", "--route", "def", "--output", "pretty"]);
    assert_eq!(text(&out.stdout), "2x^2+2x+r+1\n");
    let out = bin(&["gen", "D", "--n", "3", "--route", "rec", "--output", "pretty"]);
    assert_eq!(text(&out.stdout), "x^3-(6r+5)x\n");
    let out = bin(&["gen", "d", "--n", "0", "--output", "pretty"]);
    assert_eq!(text(&out.stdout), "1\n");
}

#[test]
fn gen_json_round_trips() {
    for (fam, family, route) in [("d", Family::Delannoy, Route::Gf), ("D", Family::Orthogonal, Route::FromD)] {
        let out = bin(&["gen", fam, "--n", "5", "--route", route.name()]);
        assert!(out.status.success());
        let parsed: MultiPoly = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(parsed, families::construct(family, Route::Rec, 5).unwrap());
    }
}

#[test]
fn gen_upto_lists_every_index() {
    let out = bin(&["gen", "D", "--n", "3", "--upto", "--output", "pretty"]);
    assert_eq!(text(&out.stdout), "0: 1\n1: x\n2: x^2-2r-1\n3: x^3-(6r+5)x\n");
    let out = bin(&["gen", "d", "--n", "4", "--upto"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn gen_csv_terms() {
    let out = bin(&["gen", "d", "--n", "1", "--output", "csv"]);
    assert_eq!(text(&out.stdout), "n,exp_x,exp_y,exp_r,exp_t,re,im\n1,1,0,0,0,2,0\n1,0,0,0,0,1,0\n");
}

#[test]
fn invalid_route_is_usage_error() {
    let out = bin(&["gen", "d", "--n", "2", "--route", "egf"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = bin(&["gen", "D", "--n", "2", "--route", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn delannoy_table_csv() {
    let out = bin(&["gen", "delannoy", "--n", "3", "--output", "csv"]);
    let body = text(&out.stdout);
    assert!(body.starts_with("m,n,value\n0,0,1\n"));
    assert!(body.contains("\n1,1,3\n"));
    assert!(body.ends_with("\n3,3,63\n"));
    assert_eq!(bin(&["gen", "delannoy", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn verify_single_check_passes() {
    let out = bin(&["verify", "--check", "thm2.7", "--max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = text(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 49 + 1);
    assert!(lines[..49].iter().all(|l| l["status"] == "pass" && l["check"] == "thm2.7"));
    assert_eq!(lines[49]["summary"]["per_check"]["thm2.7"]["pass"], 49);
}

#[test]
fn verify_all_reports_per_check_counts() {
    let out = bin(&["verify", "--all", "--max", "3", "--summary-only"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let per_check = v["summary"]["per_check"].as_object().unwrap();
    assert_eq!(per_check.len(), delannoy::verify::check_names().len());
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn verify_unknown_check_lists_catalog() {
    let out = bin(&["verify", "--check", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("nosuch"));
    assert!(err.contains("thm2.7.certificate"));
    assert_eq!(bin(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_max_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_delannoy"))
        .args(["verify", "--check", "thm3.7", "--summary-only"])
        .env("DELANNOY_MAX_N", "2")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["max_n"], 2);
    assert_eq!(v["summary"]["instances"], 9);
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "--check", "thm2.4.iv", "--check", "cor3.2", "--max", "5"];
    let a = bin(&args);
    let b = bin(&args);
    let c = bin(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn congruence_examples() {
    let out = bin(&["congruence", "--check", "sun1.4", "--n-max", "10", "--x-range", "-5..5"]);
    assert_eq!(out.status.code(), Some(0));
    let body = text(&out.stdout);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows.len(), 10 * 11);
    assert!(rows.iter().all(|r| r.ends_with(",true")));

    let out = bin(&["congruence", "--check", "thm2.5", "--n-max", "5", "--r-max", "2", "--x-range", "0..5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout).lines().count(), 1 + 5 * 3 * 6);

    let out = bin(&["congruence", "--check", "sun1.5", "--n-max", "1", "--x-range", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    let body = text(&out.stdout);
    assert!(body.lines().skip(1).all(|r| r.ends_with(",1,true")));
}

#[test]
fn congruence_usage_errors() {
    for bad in ["5..", "a..b", "3..1", "7"] {
        let out = bin(&["congruence", "--check", "sun1.4", "--x-range", bad]);
        assert_eq!(out.status.code(), Some(2), "range {bad}");
    }
    assert_eq!(bin(&["congruence", "--check", "sun9"]).status.code(), Some(2));
    assert_eq!(bin(&["congruence", "--check", "sun1.4", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn failures_only_keeps_header() {
    let out = bin(&["congruence", "--check", "sun1.4", "--n-max", "4", "--x-range", "0..3", "--failures-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), format!("{}\n", delannoy::congruence::CSV_HEADER));
}

#[test]
fn moments_pretty_and_json() {
    let out = bin(&["moments", "--max", "4"]);
    assert_eq!(text(&out.stdout), "mu_0 = 1\nmu_1 = 0\nmu_2 = 2r+1\nmu_3 = 0\nmu_4 = 12r^2+16r+5\n");
    let out = bin(&["moments", "--max", "2", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn list_checks_names_everything() {
    let out = bin(&["list-checks"]);
    let body = text(&out.stdout);
    for name in delannoy::verify::check_names() {
        assert!(body.lines().any(|l| l.starts_with(name)), "{name}");
    }
    assert!(body.contains("thm2.5, sun1.4, sun1.5"));
    let out = bin(&["list-checks", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identities"].as_array().unwrap().len(), delannoy::verify::check_names().len());
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = delannoy_cli::run(["delannoy", "gen", "D", "--n", "2", "--output", "pretty"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(text(&out), "x^2-2r-1\n");
    let code = delannoy_cli::run(["delannoy", "frobnicate"], &mut out, &mut err);
    assert_eq!(code, 2);
}
