use std::ffi::{CStr, CString};
use std::ptr;

use wallcross_ffi::*;

fn parse(text: &str) -> *mut WcPartition {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { wc_partition_parse(c.as_ptr(), &mut out) },
        WcStatus::Ok
    );
    out
}

fn format(p: *const WcPartition) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wc_partition_format(p, &mut s) }, WcStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wc_string_free(s) };
    out
}

fn last_error() -> String {
    let msg = wc_last_error();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn partition_round_trip() {
    let p = parse("3,3,3,3,3,3,3,3,1,1,1,1,1");
    assert_eq!(format(p), "3^8,1^5");
    assert_eq!(unsafe { wc_partition_size(p) }, 29);
    assert_eq!(unsafe { wc_partition_len(p) }, 13);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { wc_partition_transpose(p, &mut t) }, WcStatus::Ok);
    assert_eq!(format(t), "13,8^2");
    unsafe {
        wc_partition_free(p);
        wc_partition_free(t);
    }
}

#[test]
fn from_parts_and_copy_out() {
    let rows = [1usize, 4, 0, 2];
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { wc_partition_from_parts(rows.as_ptr(), rows.len(), &mut p) },
        WcStatus::Ok
    );
    let mut buf = [0usize; 2];
    let mut len = 0;
    assert_eq!(
        unsafe { wc_partition_parts(p, buf.as_mut_ptr(), buf.len(), &mut len) },
        WcStatus::OutOfBounds
    );
    assert_eq!(len, 3);
    let mut buf = [0usize; 3];
    assert_eq!(
        unsafe { wc_partition_parts(p, buf.as_mut_ptr(), 3, &mut len) },
        WcStatus::Ok
    );
    assert_eq!(buf, [4, 2, 1]);
    unsafe { wc_partition_free(p) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("1,2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { wc_partition_parse(bad.as_ptr(), &mut out) },
        WcStatus::Parse
    );
    assert!(out.is_null());
    assert!(last_error().contains("1,2"));

    assert_eq!(
        unsafe { wc_partition_parse(ptr::null(), &mut out) },
        WcStatus::NullPointer
    );

    let engine = wc_engine_new();
    let p = parse("1^3");
    assert_eq!(
        unsafe { wc_mullineux_regular(engine, p, 3, &mut out) },
        WcStatus::Domain
    );
    assert!(last_error().contains("regular"));
    assert_eq!(
        unsafe { wc_mtilde(engine, p, 3, 2, 4, &mut out) },
        WcStatus::Domain
    );
    unsafe {
        wc_partition_free(p);
        wc_engine_free(engine);
    }
}

#[test]
fn maps() {
    let engine = wc_engine_new();
    let mut out = ptr::null_mut();
    let three = parse("3");
    assert_eq!(
        unsafe { wc_mullineux(engine, three, 3, &mut out) },
        WcStatus::Ok
    );
    assert_eq!(format(out), "2,1");
    unsafe { wc_partition_free(out) };
    assert!(unsafe { wc_engine_cache_len(engine) } > 0);

    let col = parse("1^29");
    assert_eq!(unsafe { wc_cross(engine, col, 29, &mut out) }, WcStatus::Ok);
    assert_eq!(format(out), "29");
    unsafe { wc_partition_free(out) };
    assert_eq!(
        unsafe { wc_mtilde(engine, col, 29, 1, 9, &mut out) },
        WcStatus::Ok
    );
    assert_eq!(format(out), "18,11");
    unsafe { wc_partition_free(out) };

    let six_two = parse("6,2");
    assert_eq!(unsafe { wc_mprime(six_two, 2, &mut out) }, WcStatus::Ok);
    assert_eq!(format(out), "4,2^2");
    unsafe { wc_partition_free(out) };
    let row = parse("29");
    assert_eq!(
        unsafe { wc_mtilde_prime(row, 29, 28, 29, &mut out) },
        WcStatus::Ok
    );
    assert!(unsafe { wc_partition_equal(out, row) });
    unsafe {
        wc_partition_free(out);
        wc_partition_free(three);
        wc_partition_free(col);
        wc_partition_free(six_two);
        wc_partition_free(row);
        wc_engine_free(engine);
    }
}

#[test]
fn trajectory_access() {
    let engine = wc_engine_new();
    let col = parse("1^5");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { wc_trajectory_new(engine, col, 5, &mut t) },
        WcStatus::Ok
    );
    assert_eq!(unsafe { wc_trajectory_len(t) }, 9);
    let (mut num, mut den, mut state) = (0u64, 0u64, ptr::null_mut());
    assert_eq!(
        unsafe { wc_trajectory_step(t, 6, &mut num, &mut den, &mut state) },
        WcStatus::Ok
    );
    assert_eq!((num, den), (2, 3));
    assert_eq!(format(state), "2^2,1");
    unsafe { wc_partition_free(state) };
    assert_eq!(
        unsafe { wc_trajectory_step(t, 9, &mut num, &mut den, &mut state) },
        WcStatus::OutOfBounds
    );
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wc_trajectory_json(t, &mut json) }, WcStatus::Ok);
    let value: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(value["change_points"].as_array().unwrap().len(), 9);
    assert_eq!(value["steps"][1]["after"], "3,2");
    unsafe {
        wc_string_free(json);
        wc_trajectory_free(t);
        wc_partition_free(col);
        wc_engine_free(engine);
    }
}

#[test]
fn predict_and_verify() {
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wc_predict_json(29, 3, &mut json) }, WcStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { wc_string_free(json) };
    assert!(text.contains("\"p\":29"));
    assert_eq!(
        unsafe { wc_predict_json(4, 1, &mut json) },
        WcStatus::Domain
    );

    let engine = wc_engine_new();
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { wc_verify_sign(engine, 7, 31, 2, &mut passed, &mut report) },
        WcStatus::Ok
    );
    assert!(passed);
    assert!(unsafe { CStr::from_ptr(report) }
        .to_str()
        .unwrap()
        .contains("PASS"));
    unsafe { wc_string_free(report) };

    assert_eq!(
        unsafe {
            wc_verify_bez(
                engine,
                3,
                WcSide::Columns,
                WcWallSet::Strict,
                8,
                2,
                &mut passed,
                ptr::null_mut(),
            )
        },
        WcStatus::Ok
    );
    assert!(!passed);
    assert_eq!(
        unsafe {
            wc_verify_bez(
                engine,
                9,
                WcSide::Columns,
                WcWallSet::Strict,
                8,
                1,
                &mut passed,
                ptr::null_mut(),
            )
        },
        WcStatus::Capacity
    );
    unsafe { wc_engine_free(engine) };
}

#[test]
fn cache_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.cache");
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let engine = wc_engine_new();
    let p = parse("5,3,1");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { wc_mullineux_regular(engine, p, 3, &mut out) },
        WcStatus::Ok
    );
    assert_eq!(
        unsafe { wc_engine_persist_cache(engine, cpath.as_ptr()) },
        WcStatus::Ok
    );
    let fresh = wc_engine_new();
    assert_eq!(
        unsafe { wc_engine_load_cache(fresh, cpath.as_ptr()) },
        WcStatus::Ok
    );
    assert_eq!(unsafe { wc_engine_cache_len(fresh) }, unsafe {
        wc_engine_cache_len(engine)
    });
    std::fs::write(&path, "3;3;1^3\n").unwrap();
    assert_eq!(
        unsafe { wc_engine_load_cache(fresh, cpath.as_ptr()) },
        WcStatus::Cache
    );
    unsafe {
        wc_partition_free(out);
        wc_partition_free(p);
        wc_engine_free(engine);
        wc_engine_free(fresh);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        wc_partition_free(ptr::null_mut());
        wc_engine_free(ptr::null_mut());
        wc_trajectory_free(ptr::null_mut());
        wc_string_free(ptr::null_mut());
        assert_eq!(wc_partition_size(ptr::null()), 0);
        assert_eq!(wc_trajectory_len(ptr::null()), 0);
        assert!(!wc_partition_equal(ptr::null(), ptr::null()));
    }
}
