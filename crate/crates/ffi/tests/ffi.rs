use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use padelab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    padelab_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(padelab_last_error()).to_str().unwrap().to_owned()
}

unsafe fn series(spec: &str, order: usize) -> *mut PadelabSeries {
    let mut s = ptr::null_mut();
    assert_eq!(padelab_series_new(cstr(spec).as_ptr(), order, &mut s), PadelabStatus::Ok);
    s
}

#[test]
fn pade_round_trip() {
    unsafe {
        let s = series("exp", 7);
        let mut order = 0;
        assert_eq!(padelab_series_order(s, &mut order), PadelabStatus::Ok);
        assert_eq!(order, 7);

        let mut c = ptr::null_mut();
        assert_eq!(padelab_series_coeff(s, 3, &mut c), PadelabStatus::Ok);
        assert_eq!(take_string(c), "1/6");
        assert_eq!(padelab_series_coeff(s, 8, &mut c), PadelabStatus::InvalidInput);

        let mut rf = ptr::null_mut();
        assert_eq!(padelab_pade(s, 3, 4, &mut rf), PadelabStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(padelab_ratfunc_to_json(rf, &mut json), PadelabStatus::Ok);
        assert_eq!(
            take_string(json),
            r#"{"den":["1","-4/7","1/7","-2/105","1/840"],"num":["1","3/7","1/14","1/210"]}"#
        );

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(padelab_ratfunc_eval(rf, 1.0, 0.0, 53, &mut re, &mut im), PadelabStatus::Ok);
        assert!((re - 1264.0 / 465.0).abs() < 1e-15 && im == 0.0);
        assert_eq!(padelab_ratfunc_eval(rf, 1.0, 0.0, 7, &mut re, &mut im), PadelabStatus::InvalidInput);
        assert!(last_error().contains("precision"));

        padelab_ratfunc_free(rf);
        padelab_series_free(s);
    }
}

#[test]
fn blocked_entry_is_domain_error() {
    unsafe {
        let s = series(r#"{"kind":"rational","num":["1"],"den":["1","0","-1"]}"#, 4);
        let mut rf = ptr::null_mut();
        assert_eq!(padelab_pade(s, 1, 1, &mut rf), PadelabStatus::Domain);
        assert!(rf.is_null());
        assert!(last_error().contains("block"));
        padelab_series_free(s);
    }
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(padelab_series_new(ptr::null(), 3, &mut s), PadelabStatus::NullArgument);
        assert_eq!(padelab_series_new(cstr("exp").as_ptr(), 3, ptr::null_mut()), PadelabStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(padelab_series_new(bad.as_ptr().cast(), 3, &mut s), PadelabStatus::InvalidUtf8);
        assert_eq!(padelab_series_new(cstr("{\"kind\":1}").as_ptr(), 3, &mut s), PadelabStatus::InvalidInput);
        assert!(s.is_null());
        let mut order = 0;
        assert_eq!(padelab_series_order(ptr::null(), &mut order), PadelabStatus::NullArgument);
        padelab_series_free(ptr::null_mut());
        padelab_ratfunc_free(ptr::null_mut());
        padelab_string_free(ptr::null_mut());
    }
}

#[test]
fn json_entry_points() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(padelab_cf_euclid_json(cstr("105/24").as_ptr(), &mut out), PadelabStatus::Ok);
        assert_eq!(take_string(out), r#"{"q0":"4","terms":["2","1","2"]}"#);
        assert_eq!(padelab_cf_euclid_json(cstr("1/0").as_ptr(), &mut out), PadelabStatus::InvalidInput);

        let s = series("exp", 6);
        assert_eq!(padelab_table_json(s, 1, 1, &mut out), PadelabStatus::Ok);
        let table: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(table["entries"].as_object().unwrap().len(), 4);
        assert_eq!(padelab_hankel_csv(s, 1, 2, &mut out), PadelabStatus::Ok);
        assert!(take_string(out).starts_with("m,p=1,p=2\n0,1,-1/2\n"));
        padelab_series_free(s);

        let cfg = r#"{"spec":{"kind":"rational","num":["1"],"den":["1","0","-1"]},"p":1,"n_min":1,"n_max":4,"grid":{"radius":0.5}}"#;
        assert_eq!(padelab_montessus_json(cstr(cfg).as_ptr(), &mut out), PadelabStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["hypothesis_violation"], serde_json::json!(true));
    }
}

#[test]
fn errors_are_thread_local() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(padelab_series_new(cstr("nope").as_ptr(), 2, &mut s), PadelabStatus::InvalidInput);
    }
    let other = std::thread::spawn(|| padelab_last_error().is_null()).join().unwrap();
    assert!(other);
    assert!(unsafe { last_error() }.contains("nope"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(padelab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("padelab.h")
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).expect("header generated by build.rs");
    for name in [
        "padelab_last_error",
        "padelab_string_free",
        "padelab_series_new",
        "padelab_series_free",
        "padelab_series_coeff",
        "padelab_pade",
        "padelab_ratfunc_eval",
        "padelab_ratfunc_free",
        "padelab_table_json",
        "padelab_hankel_csv",
        "padelab_cf_euclid_json",
        "padelab_montessus_json",
        "PADELAB_STATUS_DOMAIN",
        "typedef struct PadelabSeries PadelabSeries",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

fn static_lib() -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    [deps.join("libpadelab_ffi.a"), deps.parent()?.join("libpadelab_ffi.a")].into_iter().find(|p| p.exists())
}

/// Compiles a small C program against the header and static library. Skipped
/// when no C compiler is available.
#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("cc not found; skipping");
        return;
    }
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let exe = dir.join("padelab_smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("smoke.c");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], r#"{"den":["1","-4/7","1/7","-2/105","1/840"],"num":["1","3/7","1/14","1/210"]}"#);
    assert!((lines[1].parse::<f64>().unwrap() - 1264.0 / 465.0).abs() < 1e-15);
    assert!(lines[2].contains("gamma"));
}
