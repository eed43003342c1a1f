use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use cobarlab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn owned(p: *const std::ffi::c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn fixture(name: &str) -> *mut CobarWorkspace {
    let mut ws = ptr::null_mut();
    let status = unsafe { cobarlab_workspace_from_fixture(c(name).as_ptr(), &mut ws) };
    assert_eq!(status, CobarStatus::Ok);
    ws
}

#[test]
fn weq_verdicts_through_the_c_interface() {
    let ws = fixture("example1");
    let levels = [3u32, 4, 5, 6];
    for (twisting, expected) in [("beta", 1), ("epsilon", 0)] {
        let mut r = ptr::null_mut();
        let status = unsafe {
            cobarlab_weq(
                ws,
                c("X_to_0").as_ptr(),
                c(twisting).as_ptr(),
                levels.as_ptr(),
                levels.len(),
                3,
                &mut r,
            )
        };
        assert_eq!(status, CobarStatus::Ok);
        assert_eq!(
            unsafe { cobarlab_report_exit_code(r) },
            expected,
            "{twisting}"
        );
        let json: serde_json::Value =
            serde_json::from_str(&owned(unsafe { cobarlab_report_json(r) })).unwrap();
        assert_eq!(json["levels"].as_array().unwrap().len(), 4);
        assert!(owned(unsafe { cobarlab_report_text(r) }).contains("summary"));
        unsafe { cobarlab_report_free(r) };
    }
    unsafe { cobarlab_workspace_free(ws) };
}

#[test]
fn survives_and_cobar() {
    let ws = fixture("example2");
    let levels = [3u32, 4, 5, 6, 7, 8];
    let mut r = ptr::null_mut();
    let status = unsafe {
        cobarlab_survives(
            ws,
            c("C2").as_ptr(),
            c("kappa_ass").as_ptr(),
            c("~y").as_ptr(),
            levels.as_ptr(),
            levels.len(),
            3,
            &mut r,
        )
    };
    assert_eq!(status, CobarStatus::Ok);
    assert_eq!(unsafe { cobarlab_report_exit_code(r) }, 0);
    unsafe { cobarlab_report_free(r) };
    let mut r = ptr::null_mut();
    let status =
        unsafe { cobarlab_cobar(ws, c("C1").as_ptr(), c("kappa_ass").as_ptr(), 4, &mut r) };
    assert_eq!(status, CobarStatus::Ok);
    assert!(owned(unsafe { cobarlab_report_text(r) }).contains("d² = 0: yes"));
    unsafe {
        cobarlab_report_free(r);
        cobarlab_workspace_free(ws);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut ws = ptr::null_mut();
    let status = unsafe { cobarlab_workspace_from_fixture(c("missing").as_ptr(), &mut ws) };
    assert_eq!(status, CobarStatus::UnknownName);
    assert!(ws.is_null());
    assert!(owned(cobarlab_last_error_message()).contains("missing"));

    let status = unsafe { cobarlab_workspace_from_json(c("{").as_ptr(), &mut ws) };
    assert_eq!(status, CobarStatus::Parse);

    let status = unsafe { cobarlab_workspace_from_json(ptr::null(), &mut ws) };
    assert_eq!(status, CobarStatus::NullArgument);

    let status =
        unsafe { cobarlab_workspace_from_fixture(c("example1").as_ptr(), ptr::null_mut()) };
    assert_eq!(status, CobarStatus::NullArgument);

    let json = include_str!("../../core/fixtures/bad_span.json");
    let status = unsafe { cobarlab_workspace_from_json(c(json).as_ptr(), &mut ws) };
    assert_eq!(status, CobarStatus::NotClosed);

    let mut r = ptr::null_mut();
    let status = unsafe { cobarlab_validate(c(json).as_ptr(), &mut r) };
    assert_eq!(status, CobarStatus::Ok);
    assert_eq!(unsafe { cobarlab_report_exit_code(r) }, 1);
    unsafe { cobarlab_report_free(r) };

    let ws = fixture("example1");
    let mut r = ptr::null_mut();
    let status = unsafe {
        cobarlab_weq(
            ws,
            c("X_to_0").as_ptr(),
            c("beta").as_ptr(),
            ptr::null(),
            0,
            3,
            &mut r,
        )
    };
    assert_eq!(status, CobarStatus::Validation);
    unsafe { cobarlab_workspace_free(ws) };
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let src = std::env::temp_dir().join("cobarlab_header_check.c");
    std::fs::write(
        &src,
        "#include \"cobarlab.h\"\nint main(void) { CobarWorkspace *ws = 0; return (int)cobarlab_workspace_from_fixture(\"example1\", &ws); }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(&src)
        .output()
        .expect("a C compiler is available");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
