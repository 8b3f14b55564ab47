use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use plabica_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    plabica_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = plabica_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn build(family: &str, k: usize, n: usize) -> *mut PlabicaGraph {
    let mut g = ptr::null_mut();
    assert_eq!(plabica_graph_build(c(family).as_ptr(), k, n, &mut g), PlabicaStatus::Ok);
    g
}

#[test]
fn build_count_and_labels() {
    unsafe {
        let g = build("ch", 3, 6);
        let mut faces = 0;
        assert_eq!(plabica_graph_face_count(g, &mut faces), PlabicaStatus::Ok);
        assert_eq!(faces, 10);
        let mut out = ptr::null_mut();
        assert_eq!(plabica_graph_labels_json(g, &mut out), PlabicaStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["labels"].as_array().unwrap().len(), 10);
        assert!(v["right_labels"].as_array().unwrap().contains(&serde_json::json!([2, 3, 5])));
        assert!(plabica_last_error_message().is_null());
        plabica_graph_free(g);
    }
}

#[test]
fn mutation_roundtrip() {
    unsafe {
        let g = build("ch", 3, 6);
        let (mut h, mut back) = (ptr::null_mut(), ptr::null_mut());
        let mut new = ptr::null_mut();
        assert_eq!(
            plabica_graph_mutate(g, c("1,4,6").as_ptr(), &mut h, &mut new),
            PlabicaStatus::Ok
        );
        let new = take(new);
        assert_ne!(new, "1,4,6");
        assert_eq!(
            plabica_graph_mutate(h, c(&new).as_ptr(), &mut back, ptr::null_mut()),
            PlabicaStatus::Ok
        );
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        plabica_graph_labels_json(g, &mut a);
        plabica_graph_labels_json(back, &mut b);
        assert_eq!(take(a), take(b));
        for x in [g, h, back] {
            plabica_graph_free(x);
        }
    }
}

#[test]
fn json_roundtrip_and_dihedral_action() {
    unsafe {
        let g = build("rec", 2, 5);
        let mut text = ptr::null_mut();
        assert_eq!(plabica_graph_to_json(g, &mut text), PlabicaStatus::Ok);
        let text = take(text);
        let mut copy = ptr::null_mut();
        assert_eq!(plabica_graph_from_json(c(&text).as_ptr(), &mut copy), PlabicaStatus::Ok);
        let mut rotated = ptr::null_mut();
        assert_eq!(plabica_graph_dihedral_act(copy, 5, false, &mut rotated), PlabicaStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        plabica_graph_labels_json(g, &mut a);
        plabica_graph_labels_json(rotated, &mut b);
        assert_eq!(take(a), take(b));
        let mut bad = ptr::null_mut();
        assert_eq!(plabica_graph_from_json(c("{\"n\":").as_ptr(), &mut bad), PlabicaStatus::Parse);
        assert!(bad.is_null());
        for x in [g, copy, rotated] {
            plabica_graph_free(x);
        }
    }
}

#[test]
fn superpotential_and_budget() {
    unsafe {
        let g = build("ch", 2, 4);
        let mut w = ptr::null_mut();
        assert_eq!(plabica_graph_superpotential(g, 24, &mut w), PlabicaStatus::Ok);
        assert!(take(w).contains('q'));
        let g36 = build("ch", 3, 6);
        let mut w = ptr::null_mut();
        assert_eq!(plabica_graph_superpotential(g36, 0, &mut w), PlabicaStatus::Budget);
        assert!(w.is_null());
        assert!(last_error().contains("budget"));
        plabica_graph_free(g);
        plabica_graph_free(g36);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(plabica_graph_build(c("hex").as_ptr(), 3, 6, &mut g), PlabicaStatus::Invalid);
        assert!(last_error().contains("hex"));
        assert_eq!(plabica_graph_build(c("ch").as_ptr(), 0, 6, &mut g), PlabicaStatus::OutOfRange);
        assert_eq!(plabica_graph_build(ptr::null(), 3, 6, &mut g), PlabicaStatus::NullPointer);
        assert_eq!(
            plabica_graph_build(c("ch").as_ptr(), 3, 6, ptr::null_mut()),
            PlabicaStatus::NullPointer
        );
        let invalid = [0xffu8, 0];
        assert_eq!(
            plabica_graph_build(invalid.as_ptr().cast(), 3, 6, &mut g),
            PlabicaStatus::InvalidUtf8
        );
        assert!(g.is_null());

        let g = build("ch", 3, 6);
        let mut h = ptr::null_mut();
        assert_eq!(
            plabica_graph_mutate(g, c("4,5,6").as_ptr(), &mut h, ptr::null_mut()),
            PlabicaStatus::Frozen
        );
        assert_eq!(
            plabica_graph_mutate(g, c("1,2").as_ptr(), &mut h, ptr::null_mut()),
            PlabicaStatus::Invalid
        );
        assert_eq!(
            plabica_graph_mutate(g, c("1,3,5").as_ptr(), &mut h, ptr::null_mut()),
            PlabicaStatus::LabelAbsent
        );
        assert_eq!(
            plabica_graph_mutate(g, c("x").as_ptr(), &mut h, ptr::null_mut()),
            PlabicaStatus::Parse
        );
        assert!(h.is_null());
        let mut faces = 0;
        assert_eq!(plabica_graph_face_count(ptr::null(), &mut faces), PlabicaStatus::NullPointer);
        plabica_graph_free(g);
        plabica_graph_free(ptr::null_mut());
        plabica_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/plabica.h")).unwrap();
    for f in [
        "plabica_graph_build",
        "plabica_graph_free",
        "plabica_graph_face_count",
        "plabica_graph_labels_json",
        "plabica_graph_mutate",
        "plabica_graph_to_json",
        "plabica_graph_from_json",
        "plabica_string_free",
        "plabica_last_error_message",
        "typedef struct PlabicaGraph PlabicaGraph",
        "PLABICA_STATUS_FROZEN = 9",
    ] {
        assert!(header.contains(f), "{f}");
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libplabica_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("plabica_smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("run the C compiler");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(!String::from_utf8_lossy(&run.stdout).trim().is_empty());
}
