//! C ABI over `downcat`: opaque category and `Down(C)` handles, status codes
//! matching the CLI exit codes, and heap strings released with
//! [`dc_string_free`].
//!
//! The last error message of each thread is kept and read with
//! [`dc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use downcat::config::{Bounds, Profile};
use downcat::down::{build_down, build_down_star, check_direct, DownCategory};
use downcat::io::{self, Loaded};
use downcat::reedy::ReedyCategory;
use downcat::{corpus, suites, Error};

/// Result of every call. The first four agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    ResourceBound = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A finite category, with its Reedy structure when one was given.
pub struct DcCategory {
    loaded: Loaded,
}

/// `Down(C)` or a bounded `Down⁎(C)` together with the category it was built from.
pub struct DcDown {
    rc: ReedyCategory,
    down: DownCategory,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> DcStatus {
    let code = e.exit_code();
    set_error(e.to_string());
    match code {
        2 => DcStatus::InputError,
        3 => DcStatus::ResourceBound,
        _ => DcStatus::CheckFailed,
    }
}

fn guard(f: impl FnOnce() -> DcStatus) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside downcat".into());
            DcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DcStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(DcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        DcStatus::InputError
    })
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> DcStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return DcStatus::NullPointer;
    }
    *out = CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw();
    DcStatus::Ok
}

unsafe fn give<T>(out: *mut *mut T, v: T) -> DcStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return DcStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(v));
    DcStatus::Ok
}

fn bounds() -> Bounds {
    Bounds::default()
}

/// The last error message recorded on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a category in the JSON format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_category_from_json(json: *const c_char, out: *mut *mut DcCategory) -> DcStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse_category(text) {
            Ok(loaded) => give(out, DcCategory { loaded }),
            Err(e) => fail(e),
        }
    })
}

/// Builds a builtin: `W3`, `C'`, `TS0`..`TS3` or `discrete1`..`discrete3`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_category_builtin(name: *const c_char, out: *mut *mut DcCategory) -> DcStatus {
    guard(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match corpus::builtin(name, &bounds()) {
            Ok(e) => give(out, DcCategory { loaded: Loaded { cat: e.data.cat.clone(), reedy: Some(e.data) } }),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_category_free(c: *mut DcCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_category_num_objects(c: *const DcCategory) -> usize {
    c.as_ref().map_or(0, |c| c.loaded.cat.num_objects())
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_category_num_morphisms(c: *const DcCategory) -> usize {
    c.as_ref().map_or(0, |c| c.loaded.cat.num_morphisms())
}

/// Checks the category laws and the Reedy axioms when present. Returns
/// `CHECK_FAILED` with the violations in `report` when any fail; `report`
/// may be null.
///
/// # Safety
/// `c` must be a live handle; `report` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_category_validate(c: *const DcCategory, report: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return DcStatus::NullPointer;
        };
        let r = match &c.loaded.reedy {
            Some(rc) => rc.validate(),
            None => c.loaded.cat.validate(),
        };
        let text = r.to_string();
        if !report.is_null() {
            give_string(report, text);
        }
        if r.is_empty() {
            DcStatus::Ok
        } else {
            DcStatus::CheckFailed
        }
    })
}

/// The category in the JSON format.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_category_to_json(c: *const DcCategory, out: *mut *mut c_char) -> DcStatus {
    guard(|| match c.as_ref() {
        Some(c) => give_string(out, io::to_json(&c.loaded.cat, c.loaded.reedy.as_ref())),
        None => DcStatus::NullPointer,
    })
}

/// The category as DOT.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_category_to_dot(c: *const DcCategory, out: *mut *mut c_char) -> DcStatus {
    guard(|| match c.as_ref() {
        Some(c) => give_string(out, io::to_dot(&c.loaded.cat, "C")),
        None => DcStatus::NullPointer,
    })
}

unsafe fn down_with(
    c: *const DcCategory,
    out: *mut *mut DcDown,
    build: impl FnOnce(&ReedyCategory, &Bounds) -> downcat::Result<DownCategory>,
) -> DcStatus {
    guard(|| {
        let Some(c) = c.as_ref() else {
            return DcStatus::NullPointer;
        };
        let Some(rc) = c.loaded.reedy.as_ref() else {
            set_error("category has no Reedy structure".into());
            return DcStatus::InputError;
        };
        let r = rc.validate();
        if !r.is_empty() {
            set_error(r.to_string());
            return DcStatus::CheckFailed;
        }
        match build(rc, &bounds()) {
            Ok(down) => give(out, DcDown { rc: rc.clone(), down }),
            Err(e) => fail(e),
        }
    })
}

/// Builds `Down(C)`; the category must carry a valid Reedy structure.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_down_build(c: *const DcCategory, out: *mut *mut DcDown) -> DcStatus {
    down_with(c, out, |rc, b| build_down(rc, b.max_morphisms))
}

/// Builds `Down⁎(C)` on chains of length at most `max_len`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_down_build_star(c: *const DcCategory, max_len: usize, out: *mut *mut DcDown) -> DcStatus {
    down_with(c, out, |rc, b| build_down_star(rc, max_len, b.max_morphisms))
}

/// # Safety
/// `d` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dc_down_free(d: *mut DcDown) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_down_num_objects(d: *const DcDown) -> usize {
    d.as_ref().map_or(0, |d| d.down.cat.num_objects())
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_down_num_morphisms(d: *const DcDown) -> usize {
    d.as_ref().map_or(0, |d| d.down.cat.num_morphisms())
}

/// 1 when the category is direct, 0 when not or when `d` is null.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dc_down_is_direct(d: *const DcDown) -> i32 {
    d.as_ref().map_or(0, |d| check_direct(&d.down.cat).direct as i32)
}

/// `Down(C)` as JSON with its decode tables.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_down_to_json(d: *const DcDown, out: *mut *mut c_char) -> DcStatus {
    guard(|| match d.as_ref() {
        Some(d) => give_string(out, io::down_to_json(&d.rc, &d.down)),
        None => DcStatus::NullPointer,
    })
}

/// Runs every suite under profile 0 (quick), 1 (default) or 2 (full) and
/// writes the reports as a JSON array to `out`, which may be null.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_selftest(profile: i32, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let profile = match profile {
            0 => Profile::Quick,
            1 => Profile::Default,
            2 => Profile::Full,
            p => {
                set_error(format!("unknown profile {p}"));
                return DcStatus::InputError;
            }
        };
        let reports = suites::all_suites(&Bounds::for_profile(profile));
        if !out.is_null() {
            give_string(out, json_array(&reports));
        }
        if reports.iter().all(|r| r.passed()) {
            DcStatus::Ok
        } else {
            DcStatus::CheckFailed
        }
    })
}

fn json_array(reports: &[downcat::report::SuiteReport]) -> String {
    let parts: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
    format!("[{}]", parts.join(",\n"))
}
