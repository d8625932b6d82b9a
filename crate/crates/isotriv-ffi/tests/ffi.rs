use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use isotriv_ffi::*;

#[test]
fn singularity_data() {
    let mut s = IsotrivSingularity::default();
    assert_eq!(unsafe { isotriv_singularity(3, 1, &mut s) }, IsotrivStatus::Ok);
    assert_eq!((s.q_prime, s.length, s.h_num, s.h_den, s.is_rdp), (1, 1, -1, 3, false));
    assert_eq!(unsafe { isotriv_singularity(4, 2, &mut s) }, IsotrivStatus::InvalidArgument);
    assert!(!isotriv_last_error_message().is_null());
    assert_eq!(unsafe { isotriv_singularity(3, 1, ptr::null_mut()) }, IsotrivStatus::NullPointer);
}

#[test]
fn classification_tables() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { isotriv_classify(3, 2, false, false, &mut t) }, IsotrivStatus::Ok);
    assert_eq!(unsafe { isotriv_table_len(t) }, 2);
    let mut row = IsotrivRow::default();
    assert_eq!(unsafe { isotriv_table_row(t, 1, &mut row) }, IsotrivStatus::Ok);
    assert_eq!((row.k2, row.g_alb, row.g_c, row.group_order, row.minimal), (3, 2, 21, 48, true));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { isotriv_table_json(t, &mut json) }, IsotrivStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { isotriv_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v[0]["group_id"], "G(24,8)");
    unsafe { isotriv_table_free(t) };

    assert_eq!(unsafe { isotriv_classify(9, 1, false, false, &mut t) }, IsotrivStatus::InvalidArgument);
    assert_eq!(unsafe { isotriv_table_len(ptr::null()) }, 0);
}

#[test]
fn case_reports() {
    let label = CString::new("k1-example").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { isotriv_verify_case(label.as_ptr(), false, &mut r) }, IsotrivStatus::Ok);
    assert!(unsafe { isotriv_case_report_all_ok(r) });
    assert_eq!(unsafe { isotriv_case_report_k2_min(r) }, 3);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { isotriv_case_report_render(r, false, &mut text) }, IsotrivStatus::Ok);
    assert!(unsafe { CStr::from_ptr(text) }.to_str().unwrap().contains("F = 7Y + 4A1 + A2 + 2B1 + B2 + C"));
    unsafe { isotriv_string_free(text) };
    unsafe { isotriv_case_report_free(r) };

    let bad = CString::new("0x").unwrap();
    assert_eq!(unsafe { isotriv_verify_case(bad.as_ptr(), false, &mut r) }, IsotrivStatus::UnknownCase);
    let msg = unsafe { CStr::from_ptr(isotriv_status_message(IsotrivStatus::UnknownCase)) };
    assert_eq!(msg.to_str().unwrap(), "unknown case label");
}

/// Compiles the C smoke test against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Test binaries live in `<profile>/deps`, next to the static library.
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = [deps.join("libisotriv_ffi.a"), deps.parent().unwrap().join("libisotriv_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("libisotriv_ffi.a next to the test binary");
    let exe = deps.join("isotriv_ffi_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
