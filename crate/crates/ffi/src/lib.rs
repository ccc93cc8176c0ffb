//! C ABI over the coefficient engine. Handles are opaque; every function
//! returns a `PhiStatus`, and on failure `phi_last_error` describes it.
//! Strings handed out must be released with `phi_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use phicoeff::affine::{format_element, parse_coords, parse_element, ExtAffineElement};
use phicoeff::cli::{parse_group, parse_assumption};
use phicoeff::coeffengine::Engine;
use phicoeff::report::{build_report, render_table, to_json};
use phicoeff::weylgroup::parse_word;
use phicoeff::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Unsupported = 4,
    GuardExceeded = 5,
    OutOfRange = 6,
    Internal = 7,
    Panic = 8,
}

/// Output formats for `phi_table`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiFormat {
    Text = 0,
    Json = 1,
}

/// One group, one `μ` and one reflection ordering, with its admissible set.
pub struct PhiEngine {
    engine: Engine,
    adm: Vec<ExtAffineElement>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PhiStatus {
    match e {
        Error::Config(_) | Error::Invalid(_) => PhiStatus::InvalidInput,
        Error::Unsupported(_) => PhiStatus::Unsupported,
        Error::Guard(_) => PhiStatus::GuardExceeded,
        Error::Invariant(_) => PhiStatus::Internal,
    }
}

struct Fail(PhiStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PhiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PhiStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            PhiStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PhiStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PhiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn engine_ref<'a>(h: *const PhiEngine) -> Result<&'a PhiEngine, Fail> {
    h.as_ref().ok_or_else(|| Fail(PhiStatus::NullPointer, "engine handle is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PhiStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(PhiStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn phi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds an engine. `group` is e.g. "gl4" or "gsp6", `mu` e.g. "1,1,0,0",
/// `ordering` a reduced word of the longest element or null for the preset.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn phi_engine_new(
    group: *const c_char,
    mu: *const c_char,
    ordering: *const c_char,
    out: *mut *mut PhiEngine,
) -> PhiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(PhiStatus::NullPointer, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let (family, n) = parse_group(read_str(group, "group")?)?;
        let mu = parse_coords(read_str(mu, "mu")?)?;
        let word = if ordering.is_null() { None } else { Some(parse_word(read_str(ordering, "ordering")?)?) };
        let engine = Engine::build(family, n, &mu, word.as_deref())?;
        let adm = engine.admissible_set();
        *out = Box::into_raw(Box::new(PhiEngine { engine, adm }));
        Ok(())
    })
}

/// Releases an engine; null is ignored.
///
/// # Safety
/// `h` must come from `phi_engine_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn phi_engine_free(h: *mut PhiEngine) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of admissible elements.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn phi_admissible_count(h: *const PhiEngine, out: *mut usize) -> PhiStatus {
    guard(|| {
        let e = engine_ref(h)?;
        if out.is_null() {
            return Err(Fail(PhiStatus::NullPointer, "output pointer is null".into()));
        }
        *out = e.adm.len();
        Ok(())
    })
}

/// Dimension `d` of the torus, i.e. the length of residue vectors.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn phi_rank(h: *const PhiEngine, out: *mut usize) -> PhiStatus {
    guard(|| {
        let e = engine_ref(h)?;
        if out.is_null() {
            return Err(Fail(PhiStatus::NullPointer, "output pointer is null".into()));
        }
        *out = e.engine.d();
        Ok(())
    })
}

/// Label of the `index`-th admissible element, e.g. "t_(1,1,0,0) s_{2312}".
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn phi_element_label(h: *const PhiEngine, index: usize, out: *mut *mut c_char) -> PhiStatus {
    guard(|| {
        let e = engine_ref(h)?;
        let w = e.adm.get(index).ok_or_else(|| {
            Fail(PhiStatus::OutOfRange, format!("index {index} out of range for {} elements", e.adm.len()))
        })?;
        write_string(out, format_element(&e.engine.g, w))
    })
}

unsafe fn value_common(
    h: *const PhiEngine,
    w: *const c_char,
    s: *const i64,
    s_len: usize,
    q: u64,
    r: u32,
    out: *mut *mut c_char,
    oracle: bool,
) -> PhiStatus {
    guard(|| {
        let e = engine_ref(h)?;
        let x = parse_element(&e.engine.g, read_str(w, "w")?)?;
        if s.is_null() && s_len > 0 {
            return Err(Fail(PhiStatus::NullPointer, "s is null".into()));
        }
        let s = if s_len == 0 { &[][..] } else { std::slice::from_raw_parts(s, s_len) };
        if r == 0 {
            return Err(Fail(PhiStatus::InvalidInput, "r must be at least 1".into()));
        }
        let v = if oracle {
            e.engine.bruteforce_value(&x, s, q, r)?
        } else {
            e.engine.coefficient_value(&x, s, q, r)?
        };
        write_string(out, v.to_string())
    })
}

/// Exact coefficient at `(s, w)` as a reduced fraction "n/d" or integer.
///
/// # Safety
/// `w` must be NUL-terminated, `s` must point to `s_len` values, `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn phi_coefficient_value(
    h: *const PhiEngine,
    w: *const c_char,
    s: *const i64,
    s_len: usize,
    q: u64,
    r: u32,
    out: *mut *mut c_char,
) -> PhiStatus {
    value_common(h, w, s, s_len, q, r, out, false)
}

/// The same coefficient from the character-sum oracle.
///
/// # Safety
/// As for `phi_coefficient_value`.
#[no_mangle]
pub unsafe extern "C" fn phi_oracle_value(
    h: *const PhiEngine,
    w: *const c_char,
    s: *const i64,
    s_len: usize,
    q: u64,
    r: u32,
    out: *mut *mut c_char,
) -> PhiStatus {
    value_common(h, w, s, s_len, q, r, out, true)
}

/// Coefficient table of the admissible set. `assume` is "q=1 mod m" or null
/// to infer `m`.
///
/// # Safety
/// `h` must be a live handle, `assume` null or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn phi_table(
    h: *const PhiEngine,
    assume: *const c_char,
    format: PhiFormat,
    out: *mut *mut c_char,
) -> PhiStatus {
    guard(|| {
        let e = engine_ref(h)?;
        let m = if assume.is_null() { None } else { Some(parse_assumption(read_str(assume, "assume")?)?) };
        let report = build_report(&e.engine, &e.adm, m, None)?;
        let text = match format {
            PhiFormat::Text => render_table(&report),
            PhiFormat::Json => to_json(&report)?,
        };
        write_string(out, text)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn phi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn phi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
