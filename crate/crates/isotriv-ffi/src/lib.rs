//! C ABI over the classification engine.
//!
//! Every function returns an [`IsotrivStatus`]. Results come back through out
//! pointers; handles and strings handed out here must be released with the
//! matching `*_free` function. After a failure,
//! [`isotriv_last_error_message`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isotriv::cases::{verify_case_with, CaseReport};
use isotriv::pipeline::{classify, reproduce_main_theorem, ClassificationRow, ClassifyOptions};
use isotriv::quotsing::SingularityType;
use isotriv::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotrivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Inconsistent = 3,
    UnknownCase = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// Resolution data of `1/n(1,q)`; rationals are `num/den` in lowest terms.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsotrivSingularity {
    pub n: u32,
    pub q: u32,
    pub q_prime: u32,
    /// Length of the Hirzebruch–Jung string.
    pub length: u32,
    pub h_num: i64,
    pub h_den: i64,
    pub e_num: i64,
    pub e_den: i64,
    pub b_num: i64,
    pub b_den: i64,
    pub is_rdp: bool,
}

/// Numeric columns of one classification row.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsotrivRow {
    pub k2: i64,
    pub g_alb: u32,
    pub g_c: u32,
    pub group_order: u32,
    pub minimal: bool,
    pub k2_min: i64,
}

/// Opaque list of classification rows.
pub struct IsotrivTable {
    rows: Vec<ClassificationRow>,
}

/// Opaque worked-case report.
pub struct IsotrivCaseReport {
    report: CaseReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: IsotrivStatus, msg: impl Into<String>) -> IsotrivStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> IsotrivStatus {
    let status = match e {
        Error::UnknownCase(_) => IsotrivStatus::UnknownCase,
        Error::Precondition(_) | Error::Parse(_) | Error::UnknownLabel(_) => IsotrivStatus::InvalidArgument,
        Error::OrderBound(_) | Error::Construction(_) | Error::Inconsistent(_) => IsotrivStatus::Inconsistent,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> IsotrivStatus) -> IsotrivStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IsotrivStatus::Panic, "internal panic"))
}

fn to_c_string(s: String, out: *mut *mut c_char) -> IsotrivStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = c.into_raw() };
            IsotrivStatus::Ok
        }
        Err(_) => fail(IsotrivStatus::Inconsistent, "string contains a NUL byte"),
    }
}

fn rational_parts(r: isotriv::exact::Rational) -> (i64, i64) {
    (r.numer() as i64, r.denom() as i64)
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn isotriv_status_message(status: IsotrivStatus) -> *const c_char {
    let s: &'static CStr = match status {
        IsotrivStatus::Ok => c"ok",
        IsotrivStatus::NullPointer => c"null pointer argument",
        IsotrivStatus::InvalidArgument => c"invalid argument",
        IsotrivStatus::Inconsistent => c"internal consistency failure",
        IsotrivStatus::UnknownCase => c"unknown case label",
        IsotrivStatus::OutOfRange => c"index out of range",
        IsotrivStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn isotriv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `out` must be null or point to writable memory for one `IsotrivSingularity`.
#[no_mangle]
pub unsafe extern "C" fn isotriv_singularity(n: u32, q: u32, out: *mut IsotrivSingularity) -> IsotrivStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        let t = match SingularityType::new(n, q) {
            Ok(t) => t,
            Err(e) => return from_error(e),
        };
        let res = t.resolution();
        let inv = t.invariants();
        let (h_num, h_den) = rational_parts(inv.h);
        let (e_num, e_den) = rational_parts(inv.e);
        let (b_num, b_den) = rational_parts(inv.b);
        // SAFETY: checked non-null above; the caller guarantees validity.
        unsafe {
            *out = IsotrivSingularity {
                n,
                q,
                q_prime: res.q_prime,
                length: res.b.len() as u32,
                h_num,
                h_den,
                e_num,
                e_den,
                b_num,
                b_den,
                is_rdp: t.is_rdp(),
            }
        };
        IsotrivStatus::Ok
    })
}

fn options(jobs: u32, include_rdp_only: bool, orientation_swap: bool) -> ClassifyOptions {
    ClassifyOptions { include_rdp_only, jobs: jobs.max(1) as usize, orientation_swap }
}

fn hand_out_table(rows: isotriv::Result<Vec<ClassificationRow>>, out: *mut *mut IsotrivTable) -> IsotrivStatus {
    match rows {
        Ok(rows) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = Box::into_raw(Box::new(IsotrivTable { rows })) };
            IsotrivStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Classifies all surfaces with the given `k2` (2 to 6). `jobs = 0` means one worker.
///
/// # Safety
/// `out` must be null or point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn isotriv_classify(
    k2: i64,
    jobs: u32,
    include_rdp_only: bool,
    orientation_swap: bool,
    out: *mut *mut IsotrivTable,
) -> IsotrivStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        if !(2..=6).contains(&k2) {
            return fail(IsotrivStatus::InvalidArgument, format!("K² = {k2} is outside 2..=6"));
        }
        hand_out_table(classify(k2, options(jobs, include_rdp_only, orientation_swap)), out)
    })
}

/// The minimal surfaces with K² = 5, 3, 2.
///
/// # Safety
/// `out` must be null or point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn isotriv_main_theorem(jobs: u32, out: *mut *mut IsotrivTable) -> IsotrivStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        hand_out_table(reproduce_main_theorem(options(jobs, false, false)), out)
    })
}

/// Number of rows, or 0 for a null table.
///
/// # Safety
/// `table` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn isotriv_table_len(table: *const IsotrivTable) -> usize {
    // SAFETY: null or live per the contract.
    unsafe { table.as_ref() }.map_or(0, |t| t.rows.len())
}

/// # Safety
/// `table` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn isotriv_table_row(
    table: *const IsotrivTable,
    index: usize,
    out: *mut IsotrivRow,
) -> IsotrivStatus {
    guard(|| {
        // SAFETY: null or live per the contract.
        let Some(t) = (unsafe { table.as_ref() }) else {
            return fail(IsotrivStatus::NullPointer, "table is null");
        };
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        let Some(r) = t.rows.get(index) else {
            return fail(IsotrivStatus::OutOfRange, format!("row {index} of {}", t.rows.len()));
        };
        // SAFETY: checked non-null above.
        unsafe {
            *out = IsotrivRow {
                k2: r.k2,
                g_alb: r.g_alb,
                g_c: r.g_c,
                group_order: r.order as u32,
                minimal: r.minimal,
                k2_min: r.k2_min,
            }
        };
        IsotrivStatus::Ok
    })
}

/// The whole table as JSON, in the CLI's row format. Free with [`isotriv_string_free`].
///
/// # Safety
/// `table` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn isotriv_table_json(table: *const IsotrivTable, out: *mut *mut c_char) -> IsotrivStatus {
    guard(|| {
        // SAFETY: null or live per the contract.
        let Some(t) = (unsafe { table.as_ref() }) else {
            return fail(IsotrivStatus::NullPointer, "table is null");
        };
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        match serde_json::to_string(&t.rows) {
            Ok(s) => to_c_string(s, out),
            Err(e) => fail(IsotrivStatus::Inconsistent, e.to_string()),
        }
    })
}

/// # Safety
/// `table` must be null or a live handle, and is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn isotriv_table_free(table: *mut IsotrivTable) {
    if !table.is_null() {
        // SAFETY: produced by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Recomputes a worked case such as `"3a"` or `"k1-example"`.
///
/// # Safety
/// `label` must be null or a NUL-terminated string; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn isotriv_verify_case(
    label: *const c_char,
    orientation_swap: bool,
    out: *mut *mut IsotrivCaseReport,
) -> IsotrivStatus {
    guard(|| {
        if label.is_null() || out.is_null() {
            return fail(IsotrivStatus::NullPointer, "label or out is null");
        }
        // SAFETY: NUL-terminated per the contract.
        let Ok(label) = unsafe { CStr::from_ptr(label) }.to_str() else {
            return fail(IsotrivStatus::InvalidArgument, "label is not UTF-8");
        };
        match verify_case_with(label, orientation_swap) {
            Ok(report) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(IsotrivCaseReport { report })) };
                IsotrivStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// True iff every recomputed value matches; false for a null report.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isotriv_case_report_all_ok(report: *const IsotrivCaseReport) -> bool {
    // SAFETY: null or live per the contract.
    unsafe { report.as_ref() }.is_some_and(|r| r.report.all_ok())
}

/// K² of the minimal model, or 0 for a null report.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isotriv_case_report_k2_min(report: *const IsotrivCaseReport) -> i64 {
    // SAFETY: null or live per the contract.
    unsafe { report.as_ref() }.map_or(0, |r| r.report.k2_min)
}

/// The report as text (`as_json = false`) or JSON. Free with [`isotriv_string_free`].
///
/// # Safety
/// `report` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn isotriv_case_report_render(
    report: *const IsotrivCaseReport,
    as_json: bool,
    out: *mut *mut c_char,
) -> IsotrivStatus {
    guard(|| {
        // SAFETY: null or live per the contract.
        let Some(r) = (unsafe { report.as_ref() }) else {
            return fail(IsotrivStatus::NullPointer, "report is null");
        };
        if out.is_null() {
            return fail(IsotrivStatus::NullPointer, "out is null");
        }
        if as_json {
            match serde_json::to_string(&r.report) {
                Ok(s) => to_c_string(s, out),
                Err(e) => fail(IsotrivStatus::Inconsistent, e.to_string()),
            }
        } else {
            to_c_string(r.report.to_string(), out)
        }
    })
}

/// # Safety
/// `report` must be null or a live handle, and is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn isotriv_case_report_free(report: *mut IsotrivCaseReport) {
    if !report.is_null() {
        // SAFETY: produced by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(report) });
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, and is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn isotriv_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
