use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn plabica(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_plabica"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn plabica");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn build(family: &str, k: &str, n: &str) -> String {
    let out = plabica(&["build", "--family", family, "--k", k, "--n", n], None, &[]);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn build_then_labels() {
    let g = build("ch", "3", "6");
    let v = stdout_json(&plabica(&["labels"], Some(&g), &[]));
    assert_eq!(v["labels"].as_array().unwrap().len(), 10);
    assert_eq!(v["right_labels"].as_array().unwrap().len(), 10);
    assert!(v["right_labels"].as_array().unwrap().contains(&serde_json::json!([2, 3, 5])));
}

#[test]
fn build_with_dihedral_action() {
    let g = build("rec", "2", "5");
    let shifted = plabica(
        &[
            "build",
            "--family",
            "rec",
            "--k",
            "2",
            "--n",
            "5",
            "--shift",
            "-1",
            "--reflected",
        ],
        None,
        &[],
    );
    assert!(shifted.status.success());
    let orbit = stdout_json(&plabica(&["orbit"], Some(&g), &[]));
    assert_eq!(orbit["size"], 5);
    let stab = stdout_json(&plabica(&["stabilizer"], Some(&g), &[]));
    assert_eq!(stab["order"], 2);
}

#[test]
fn mutate_twice_restores_labels() {
    let g = build("ch", "3", "6");
    let labels = stdout_json(&plabica(&["labels"], Some(&g), &[]));
    let once = plabica(&["mutate", "--label", "1,4,6"], Some(&g), &[]);
    assert!(once.status.success(), "{}", String::from_utf8_lossy(&once.stderr));
    let stderr = String::from_utf8_lossy(&once.stderr);
    let new = stderr
        .trim()
        .rsplit(" -> ")
        .next()
        .unwrap()
        .trim_matches(|c| c == '{' || c == '}')
        .to_string();
    let twice = plabica(
        &["mutate", "--label", &new],
        Some(&String::from_utf8(once.stdout).unwrap()),
        &[],
    );
    let back = stdout_json(&plabica(&["labels"], Some(&String::from_utf8(twice.stdout).unwrap()), &[]));
    assert_eq!(back["labels"], labels["labels"]);
}

#[test]
fn frozen_label_exits_with_code_2() {
    let g = build("ch", "3", "6");
    let out = plabica(&["mutate", "--label", "4,5,6"], Some(&g), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("frozen"));
    let out = plabica(&["mutate", "--label", "1,2"], Some(&g), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_graph_exits_with_code_2() {
    let out = plabica(&["labels"], Some("{\"n\": 3"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_with_code_3() {
    let g = build("ch", "3", "6");
    let out = plabica(&["superpotential"], Some(&g), &[("PLABICA_BUDGET", "0")]);
    assert_eq!(out.status.code(), Some(3));
    let ok = stdout_json(&plabica(&["superpotential"], Some(&g), &[]));
    assert_eq!(ok["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn closed_form_superpotential_matches() {
    let v = stdout_json(&plabica(
        &[
            "superpotential",
            "--closed-form",
            "dual-ch-rot",
            "--k",
            "3",
            "--n",
            "6",
            "--m",
            "2",
        ],
        None,
        &[],
    ));
    assert_eq!(v["equals_derived"], true);
    let out = plabica(&["superpotential", "--closed-form", "ch-rot"], None, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quiver_and_polytope() {
    let g = build("ch", "2", "4");
    let dot = plabica(&["quiver", "--dot"], Some(&g), &[]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
    let p = stdout_json(&plabica(&["polytope"], Some(&g), &[]));
    assert_eq!(p["lattice_points"], 6);
    let p2 = stdout_json(&plabica(&["polytope", "--r", "2"], Some(&g), &[]));
    assert_eq!(p2["lattice_points"], 20);
    assert_eq!(plabica(&["polytope", "--r", "x"], Some(&g), &[]).status.code(), Some(2));
}

#[test]
fn check_gt_reports_every_member() {
    let out = plabica(&["check-gt", "--k", "2", "--n", "5"], None, &[]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("5/5 equivalent"));
}

#[test]
fn conjecture_scan_output() {
    let g = build("rec", "2", "5");
    let v = stdout_json(&plabica(&["conjecture-scan"], Some(&g), &[]));
    assert_eq!(v["rotations_agree"], true);
    assert_eq!(v["rotations"].as_array().unwrap().len(), 5);
}
