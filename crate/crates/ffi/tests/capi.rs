use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use luka_ffi::*;

fn model(k: u32, ell: u32) -> *mut LukaModel {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { luka_model_new(k, ell, &mut m) }, LukaStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = luka_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn critical_points() {
    let m = model(0, 1);
    let mut cp = LukaCriticalPoint::default();
    assert_eq!(unsafe { luka_critical_point(m, 1e-12, &mut cp) }, LukaStatus::Ok);
    assert!(cp.exact);
    assert!((cp.a_c - 1.5).abs() < 1e-12);
    assert!((cp.z_c - 1.0 / 3.0).abs() < 1e-12);
    unsafe { luka_model_free(m) };

    let m = model(1, LUKA_ELL_INF);
    assert_eq!(unsafe { luka_critical_point(m, 1e-12, &mut cp) }, LukaStatus::Ok);
    assert!((cp.a_c - 3.0).abs() < 1e-10);
    unsafe { luka_model_free(m) };
}

#[test]
fn radius_and_free_energy() {
    let m = model(1, 1);
    let (mut z, mut kappa) = (0.0, 0.0);
    assert_eq!(unsafe { luka_zc(m, 1.5, 1e-12, &mut z) }, LukaStatus::Ok);
    assert!((z - 0.5).abs() < 1e-12);
    assert_eq!(unsafe { luka_free_energy(m, 4.0, 1e-12, &mut kappa) }, LukaStatus::Ok);
    assert_eq!(unsafe { luka_zc(m, 4.0, 1e-12, &mut z) }, LukaStatus::Ok);
    assert!(z < 0.5);
    assert!((kappa + z.ln()).abs() < 1e-12);
    assert_eq!(unsafe { luka_zc(m, 0.5, 1e-12, &mut z) }, LukaStatus::InvalidArgument);
    assert_eq!(unsafe { luka_zc(m, 2.0, -1.0, &mut z) }, LukaStatus::InvalidArgument);
    unsafe { luka_model_free(m) };
}

#[test]
fn counts_and_partition_json() {
    let m = model(1, 1);
    let mut n = 0u64;
    assert_eq!(unsafe { luka_count(m, 8, &mut n) }, LukaStatus::Ok);
    assert_eq!(n, 14);
    unsafe { luka_model_free(m) };

    let m = model(0, LUKA_ELL_INF);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { luka_partition_json(m, 2, true, &mut s) }, LukaStatus::Ok);
    let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { luka_string_free(s) };
    assert_eq!(json, r#"{"1,1":1,"2,0":1}"#);
    unsafe { luka_model_free(m) };
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { luka_model_new(2, 1, &mut m) }, LukaStatus::InvalidArgument);
    assert!(m.is_null());
    assert!(last_error().contains("exceeds"));
    assert_eq!(unsafe { luka_model_new(0, 0, ptr::null_mut()) }, LukaStatus::NullPointer);

    let m = model(0, 0);
    let mut cp = LukaCriticalPoint::default();
    assert_eq!(unsafe { luka_critical_point(m, 1e-12, &mut cp) }, LukaStatus::Unsupported);
    assert!(last_error().contains("degenerate"));
    unsafe { luka_model_free(m) };

    let mut n = 0u64;
    assert_eq!(unsafe { luka_count(ptr::null(), 3, &mut n) }, LukaStatus::NullPointer);
    unsafe {
        luka_model_free(ptr::null_mut());
        luka_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(luka_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/luka.h")).unwrap();
    for name in [
        "luka_model_new",
        "luka_model_free",
        "luka_critical_point",
        "luka_zc",
        "luka_free_energy",
        "luka_count",
        "luka_partition_json",
        "luka_string_free",
        "luka_last_error",
        "luka_version",
        "typedef struct LukaModel LukaModel",
        "LUKA_STATUS_OK = 0",
        "LUKA_ELL_INF",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "luka.h"

int main(void) {
    LukaModel *m = NULL;
    if (luka_model_new(1, 1, &m) != LUKA_STATUS_OK) return 1;
    LukaCriticalPoint cp;
    if (luka_critical_point(m, 1e-12, &cp) != LUKA_STATUS_OK) return 2;
    uint64_t n = 0;
    if (luka_count(m, 6, &n) != LUKA_STATUS_OK) return 3;
    if (luka_model_new(5, 1, NULL) != LUKA_STATUS_INVALID_ARGUMENT) return 4;
    printf("%.6f %.6f %llu\n", cp.a_c, cp.z_c, (unsigned long long)n);
    luka_model_free(m);
    return 0;
}
"#;

/// Directory holding the cdylib next to this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header_and_library() {
    let dir = artifact_dir();
    if !dir.join("libluka_ffi.so").exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or shared library in {}", dir.display());
        return;
    }
    let tmp = std::env::temp_dir().join(format!("luka_capi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    let bin = tmp.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&dir)
        .arg("-lluka_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).env("LD_LIBRARY_PATH", &dir).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2.000000 0.500000 5");
    let _ = std::fs::remove_dir_all(&tmp);
}
