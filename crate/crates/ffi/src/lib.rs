//! C ABI over the `wallcross` crate.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`WcStatus`]; on failure `wc_last_error` describes the problem for the
//! calling thread. Strings returned through out-pointers are owned by the
//! caller and released with `wc_string_free`. Panics never unwind into C.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use wallcross::sign::predict_interval;
use wallcross::verifier::{verify_bez_upto, verify_sign_bounded, Convention, Side, WallSet};
use wallcross::wallcross::{cross, full_trajectory};
use wallcross::{mprime, mtilde, mtilde_prime, Error, Fraction, Mullineux, Partition, Trajectory};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Range = 5,
    Capacity = 6,
    Convention = 7,
    Oracle = 8,
    Prediction = 9,
    Cache = 10,
    Io = 11,
    OutOfBounds = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcSide {
    Rows = 0,
    Columns = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcWallSet {
    Strict = 0,
    Inclusive = 1,
}

pub struct WcPartition(Partition);
pub struct WcEngine(Mullineux);
pub struct WcTrajectory(Trajectory);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> WcStatus {
    match err {
        Error::Parse { .. } => WcStatus::Parse,
        Error::Capacity { .. } => WcStatus::Capacity,
        Error::Domain(_) | Error::Absent { .. } | Error::Ambiguous { .. } => WcStatus::Domain,
        Error::Range(_) => WcStatus::Range,
        Error::Convention(_) => WcStatus::Convention,
        Error::Oracle(_) => WcStatus::Oracle,
        Error::Prediction(_) => WcStatus::Prediction,
        Error::Cache { .. } => WcStatus::Cache,
        Error::Io(_) => WcStatus::Io,
    }
}

struct Failure(WcStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WcStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            set_error(format!("internal panic: {message}"));
            WcStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure(WcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(value).expect("no interior nul").into_raw();
    Ok(())
}

fn fraction(numerator: u64, denominator: u64) -> Result<Fraction, Failure> {
    Ok(Fraction::new(numerator, denominator)?)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn wc_partition_parse(
    input: *const c_char,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let p: Partition = text(input, "input")?.parse()?;
        put(out, WcPartition(p))
    })
}

/// Builds a partition from `len` parts in any order; zeros are dropped.
#[no_mangle]
pub unsafe extern "C" fn wc_partition_from_parts(
    parts: *const usize,
    len: usize,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let slice = if len == 0 {
            &[][..]
        } else {
            if parts.is_null() {
                return Err(null("parts"));
            }
            std::slice::from_raw_parts(parts, len)
        };
        put(
            out,
            WcPartition(Partition::from_rows(slice.iter().copied())),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_partition_free(p: *mut WcPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text form, e.g. `3^8,1^5`.
#[no_mangle]
pub unsafe extern "C" fn wc_partition_format(
    p: *const WcPartition,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| put_string(out, borrow(p, "partition")?.0.to_string()))
}

/// Number of boxes; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wc_partition_size(p: *const WcPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// Number of nonzero parts; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wc_partition_len(p: *const WcPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Copies up to `cap` parts into `buf` (non-increasing) and stores the full
/// length in `out_len`. `OutOfBounds` if `cap` is too small.
#[no_mangle]
pub unsafe extern "C" fn wc_partition_parts(
    p: *const WcPartition,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> WcStatus {
    guard(|| {
        let parts = borrow(p, "partition")?.0.parts();
        if out_len.is_null() {
            return Err(null("out_len"));
        }
        *out_len = parts.len();
        if parts.len() > cap {
            return Err(Failure(
                WcStatus::OutOfBounds,
                format!("buffer holds {cap} parts, need {}", parts.len()),
            ));
        }
        if !parts.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(parts.as_ptr(), buf, parts.len());
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_partition_equal(a: *const WcPartition, b: *const WcPartition) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

#[no_mangle]
pub unsafe extern "C" fn wc_partition_transpose(
    p: *const WcPartition,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| put(out, WcPartition(borrow(p, "partition")?.0.transpose())))
}

#[no_mangle]
pub unsafe extern "C" fn wc_partition_is_regular(p: *const WcPartition, e: usize) -> bool {
    p.as_ref().is_some_and(|p| p.0.is_regular(e))
}

/// A Mullineux engine with its own memo cache.
#[no_mangle]
pub extern "C" fn wc_engine_new() -> *mut WcEngine {
    Box::into_raw(Box::new(WcEngine(Mullineux::new())))
}

#[no_mangle]
pub unsafe extern "C" fn wc_engine_free(engine: *mut WcEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

#[no_mangle]
pub unsafe extern "C" fn wc_engine_cache_len(engine: *const WcEngine) -> usize {
    engine.as_ref().map_or(0, |e| e.0.cache().len())
}

#[no_mangle]
pub unsafe extern "C" fn wc_engine_load_cache(
    engine: *const WcEngine,
    path: *const c_char,
) -> WcStatus {
    guard(|| {
        let engine = borrow(engine, "engine")?;
        engine.0.cache().load(Path::new(text(path, "path")?))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_engine_persist_cache(
    engine: *const WcEngine,
    path: *const c_char,
) -> WcStatus {
    guard(|| {
        let engine = borrow(engine, "engine")?;
        engine.0.cache().persist(Path::new(text(path, "path")?))?;
        Ok(())
    })
}

/// `M_e` on an `e`-regular partition.
#[no_mangle]
pub unsafe extern "C" fn wc_mullineux_regular(
    engine: *const WcEngine,
    p: *const WcPartition,
    e: usize,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let image = borrow(engine, "engine")?
            .0
            .regular(&borrow(p, "partition")?.0, e)?;
        put(out, WcPartition(image))
    })
}

/// Generalized `M_e` on any partition.
#[no_mangle]
pub unsafe extern "C" fn wc_mullineux(
    engine: *const WcEngine,
    p: *const WcPartition,
    e: usize,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let image = borrow(engine, "engine")?
            .0
            .general(&borrow(p, "partition")?.0, e)?;
        put(out, WcPartition(image))
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_mprime(
    p: *const WcPartition,
    e: usize,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| put(out, WcPartition(mprime(&borrow(p, "partition")?.0, e)?)))
}

/// `transpose(M_e(λ))`.
#[no_mangle]
pub unsafe extern "C" fn wc_cross(
    engine: *const WcEngine,
    p: *const WcPartition,
    e: usize,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let image = cross(&borrow(engine, "engine")?.0, &borrow(p, "partition")?.0, e)?;
        put(out, WcPartition(image))
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_mtilde(
    engine: *const WcEngine,
    p: *const WcPartition,
    n: usize,
    numerator: u64,
    denominator: u64,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let f = fraction(numerator, denominator)?;
        let image = mtilde(
            &borrow(engine, "engine")?.0,
            &borrow(p, "partition")?.0,
            n,
            f,
        )?;
        put(out, WcPartition(image))
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_mtilde_prime(
    p: *const WcPartition,
    n: usize,
    numerator: u64,
    denominator: u64,
    out: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let f = fraction(numerator, denominator)?;
        put(
            out,
            WcPartition(mtilde_prime(&borrow(p, "partition")?.0, n, f)?),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_trajectory_new(
    engine: *const WcEngine,
    start: *const WcPartition,
    n: usize,
    out: *mut *mut WcTrajectory,
) -> WcStatus {
    guard(|| {
        let t = full_trajectory(&borrow(engine, "engine")?.0, &borrow(start, "start")?.0, n)?;
        put(out, WcTrajectory(t))
    })
}

#[no_mangle]
pub unsafe extern "C" fn wc_trajectory_free(t: *mut WcTrajectory) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of walls crossed; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn wc_trajectory_len(t: *const WcTrajectory) -> usize {
    t.as_ref().map_or(0, |t| t.0.steps.len())
}

/// Wall and state of step `index`.
#[no_mangle]
pub unsafe extern "C" fn wc_trajectory_step(
    t: *const WcTrajectory,
    index: usize,
    out_numerator: *mut u64,
    out_denominator: *mut u64,
    out_state: *mut *mut WcPartition,
) -> WcStatus {
    guard(|| {
        let t = borrow(t, "trajectory")?;
        let step = t.0.steps.get(index).ok_or_else(|| {
            Failure(
                WcStatus::OutOfBounds,
                format!("step {index} of {}", t.0.steps.len()),
            )
        })?;
        if out_numerator.is_null() || out_denominator.is_null() {
            return Err(null("out"));
        }
        *out_numerator = step.wall.numerator();
        *out_denominator = step.wall.denominator();
        put(out_state, WcPartition(step.after.clone()))
    })
}

/// `{n, start, steps, change_points}` as JSON.
#[no_mangle]
pub unsafe extern "C" fn wc_trajectory_json(
    t: *const WcTrajectory,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let t = &borrow(t, "trajectory")?.0;
        let doc = serde_json::json!({
            "n": t.n,
            "start": t.start,
            "steps": t.steps,
            "change_points": t.change_points(),
        });
        put_string(out, doc.to_string())
    })
}

/// Predicted change points of `(1^p)` in `[m/p, (m+1)/p)` as JSON.
#[no_mangle]
pub unsafe extern "C" fn wc_predict_json(p: usize, m: usize, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let pred = predict_interval(p, m)?;
        put_string(out, serde_json::to_string(&pred).expect("serializable"))
    })
}

/// Predictor against engine for prime `p`. `out_report` may be null.
#[no_mangle]
pub unsafe extern "C" fn wc_verify_sign(
    engine: *const WcEngine,
    p: usize,
    bound: usize,
    jobs: usize,
    out_passed: *mut bool,
    out_report: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let report = verify_sign_bounded(&borrow(engine, "engine")?.0, p, bound, jobs)?;
        if out_passed.is_null() {
            return Err(null("out_passed"));
        }
        *out_passed = report.passed();
        if !out_report.is_null() {
            put_string(out_report, report.to_string())?;
        }
        Ok(())
    })
}

/// Row statistic sweep over all `n' <= n`. `out_report` may be null.
#[no_mangle]
pub unsafe extern "C" fn wc_verify_bez(
    engine: *const WcEngine,
    n: usize,
    side: WcSide,
    wallset: WcWallSet,
    bound: usize,
    jobs: usize,
    out_passed: *mut bool,
    out_report: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let conv = Convention::new(
            match side {
                WcSide::Rows => Side::Rows,
                WcSide::Columns => Side::Columns,
            },
            match wallset {
                WcWallSet::Strict => WallSet::Strict,
                WcWallSet::Inclusive => WallSet::Inclusive,
            },
        );
        let report = verify_bez_upto(&borrow(engine, "engine")?.0, n, conv, bound, jobs)?;
        if out_passed.is_null() {
            return Err(null("out_passed"));
        }
        *out_passed = report.passed();
        if !out_report.is_null() {
            put_string(out_report, report.to_string())?;
        }
        Ok(())
    })
}
