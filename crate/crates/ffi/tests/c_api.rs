use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use skyrme_ffi::*;

#[test]
fn profile_round_trip_through_handles() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { skyrme_profile_solve(1e-8, &mut p) }, SkyrmeStatus::Ok);
    let (mut b, mut c) = (0.0, 0.0);
    assert_eq!(unsafe { skyrme_profile_coefficients(p, &mut b, &mut c) }, SkyrmeStatus::Ok);
    assert!((b - 2.0075).abs() < 2e-3 && (c - 2.1596).abs() < 5e-3, "b={b} c={c}");
    let mut s = 0.0;
    assert_eq!(unsafe { skyrme_profile_value(p, 0.0, &mut s) }, SkyrmeStatus::Ok);
    assert_eq!(s, 0.0);
    assert_eq!(unsafe { skyrme_profile_value(p, -1.0, &mut s) }, SkyrmeStatus::InvalidInput);
    let msg = unsafe { CStr::from_ptr(skyrme_last_error_message()) }.to_str().unwrap().to_owned();
    assert!(msg.contains("radius"), "{msg}");
    unsafe { skyrme_profile_free(p) };
}

#[test]
fn ringdown_fit_of_a_model_signal() {
    let t: Vec<f64> = (0..1000).map(|i| i as f64 * 0.1).collect();
    let v: Vec<f64> = t.iter().map(|&t| 3.0 * (-0.26 * t).exp() * (0.61 * t + 0.4).sin()).collect();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { skyrme_series_new(t.as_ptr(), v.as_ptr(), t.len(), &mut s) }, SkyrmeStatus::Ok);
    let mut out = SkyrmeRingdown::default();
    assert_eq!(unsafe { skyrme_fit_ringdown(s, 20.0, 60.0, &mut out) }, SkyrmeStatus::Ok);
    assert!((out.omega - 0.61).abs() < 1e-8 && (out.gamma - 0.26).abs() < 1e-8, "{out:?}");
    let mut pl = SkyrmePowerLaw::default();
    assert_eq!(unsafe { skyrme_fit_power_law(s, 20.0, 60.0, &mut pl) }, SkyrmeStatus::FitRejected);
    unsafe { skyrme_series_free(s) };
}

#[test]
fn tail_coefficient_scales_cubically() {
    let (mut c1, mut c2) = (0.0, 0.0);
    assert_eq!(unsafe { skyrme_tail_coefficient_gaussian_cubed(1.0, &mut c1) }, SkyrmeStatus::Ok);
    assert_eq!(unsafe { skyrme_tail_coefficient_gaussian_cubed(2.0, &mut c2) }, SkyrmeStatus::Ok);
    let exact = 35.0 * (3.0 * std::f64::consts::PI).sqrt() / 1458.0;
    assert!((c1 - exact).abs() < 1e-10, "{c1}");
    assert!((c2 / c1 - 8.0).abs() < 1e-10);
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include").join("skyrme_ffi.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["skyrme_profile_solve", "skyrme_qnm_find", "skyrme_fit_power_law", "SKYRME_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link check: no C compiler");
        return;
    }
    // test builds only produce the rlib; ask cargo for the static library
    let mut build = Command::new(option_env!("CARGO").unwrap_or("cargo"));
    build.args(["build", "-p", "skyrme-ffi", "--lib", "--manifest-path"]).arg(manifest.join("Cargo.toml"));
    if !cfg!(debug_assertions) {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success(), "building the static library failed");
    let lib = target_dir().join("libskyrme_ffi.a");
    assert!(lib.exists(), "no static library at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <math.h>
#include <stdio.h>
#include "skyrme_ffi.h"
int main(void) {
    double c = 0.0;
    if (skyrme_tail_coefficient_gaussian_cubed(1.0, &c) != SKYRME_STATUS_OK) return 1;
    if (fabs(c - 0.0736963678562) > 1e-9) return 2;
    if (skyrme_tail_coefficient_gaussian_cubed(1.0, NULL) != SKYRME_STATUS_NULL_POINTER) return 3;
    if (skyrme_last_error_message() == NULL) return 4;
    printf("%.10f\n", c);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("0.0736963679"));
}
