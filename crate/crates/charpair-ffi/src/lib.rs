//! C ABI over the charpair library. Handles are opaque pointers, every
//! fallible call returns a status code, structured results come back as
//! JSON strings the caller frees with `charpair_string_free`, and the
//! most recent error detail is available per thread through
//! `charpair_last_error`.

use charpair::algebra::{FqField, Ring};
use charpair::artinschreier::line_cover;
use charpair::blowup::resolution_report;
use charpair::bundle::{format_point, ConicBundle};
use charpair::error::Error;
use charpair::fixtures;
use charpair::groebner::GroebnerOptions;
use charpair::poly::Polynomial;
use charpair::verify::{run_pipeline, PipelineConfig};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code of every fallible call. `Ok` is zero; everything else
/// leaves a detail message readable through `charpair_last_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharpairStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Data = 4,
    Arithmetic = 5,
    TraceObstruction = 6,
    TowerBound = 7,
    Resource = 8,
    Precision = 9,
    Hypothesis = 10,
    Config = 11,
    Panic = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let cleaned: Vec<u8> = msg.bytes().filter(|&b| b != 0).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(cleaned).expect("no interior NUL"));
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn status_of(err: &Error) -> CharpairStatus {
    match err {
        Error::Parse { .. } => CharpairStatus::Parse,
        Error::Data(_) => CharpairStatus::Data,
        Error::Arithmetic(_) => CharpairStatus::Arithmetic,
        Error::TraceObstruction(_) => CharpairStatus::TraceObstruction,
        Error::TowerBound(_) => CharpairStatus::TowerBound,
        Error::Resource(_) => CharpairStatus::Resource,
        Error::Precision(_) => CharpairStatus::Precision,
        Error::Hypothesis(_) => CharpairStatus::Hypothesis,
        Error::Config(_) => CharpairStatus::Config,
    }
}

/// An opaque conic bundle handle.
pub struct CharpairBundle {
    inner: ConicBundle,
}

fn guarded<F>(body: F) -> CharpairStatus
where
    F: FnOnce() -> CharpairStatus,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic across the boundary".to_string());
            set_error(&msg);
            CharpairStatus::Panic
        }
    }
}

struct Failure {
    status: CharpairStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: status_of(&e),
            message: e.to_string(),
        }
    }
}

fn fallible<F>(body: F) -> CharpairStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    guarded(|| match body() {
        Ok(()) => {
            clear_error();
            CharpairStatus::Ok
        }
        Err(f) => {
            set_error(&f.message);
            f.status
        }
    })
}

/// Writes a heap string through an out-pointer, NUL-terminated.
fn put_string(out: *mut *mut c_char, text: String) {
    let cleaned: Vec<u8> = text.into_bytes().into_iter().filter(|&b| b != 0).collect();
    let c = CString::new(cleaned).expect("no interior NUL");
    unsafe { *out = c.into_raw() };
}

/// The caller must have rejected a null `b` already.
unsafe fn bundle_ref<'a>(b: *const CharpairBundle) -> &'a ConicBundle {
    &(*b).inner
}

unsafe fn read_utf8<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    CStr::from_ptr(s).to_str().map_err(|_| Failure {
        status: CharpairStatus::InvalidUtf8,
        message: "argument is not valid UTF-8".to_string(),
    })
}

fn null_argument() -> CharpairStatus {
    set_error("null argument");
    CharpairStatus::NullArgument
}

/// The most recent error message on this thread, or NULL when the last
/// call succeeded. Free the result with `charpair_string_free`.
#[no_mangle]
pub extern "C" fn charpair_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// A static name for a status code. Never freed by the caller.
#[no_mangle]
pub extern "C" fn charpair_status_name(status: CharpairStatus) -> *const c_char {
    let name: &'static CStr = match status {
        CharpairStatus::Ok => c"ok",
        CharpairStatus::NullArgument => c"null-argument",
        CharpairStatus::InvalidUtf8 => c"invalid-utf8",
        CharpairStatus::Parse => c"parse",
        CharpairStatus::Data => c"data",
        CharpairStatus::Arithmetic => c"arithmetic",
        CharpairStatus::TraceObstruction => c"trace-obstruction",
        CharpairStatus::TowerBound => c"tower-bound",
        CharpairStatus::Resource => c"resource",
        CharpairStatus::Precision => c"precision",
        CharpairStatus::Hypothesis => c"hypothesis",
        CharpairStatus::Config => c"config",
        CharpairStatus::Panic => c"panic",
    };
    name.as_ptr()
}

/// Frees a string returned by any call in this library.
#[no_mangle]
pub extern "C" fn charpair_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// The built-in integral example bundle. Free with `charpair_bundle_free`.
#[no_mangle]
pub extern "C" fn charpair_bundle_example() -> *mut CharpairBundle {
    Box::into_raw(Box::new(CharpairBundle {
        inner: fixtures::primary_bundle(),
    }))
}

/// The built-in companion bundle over F_2. Free with `charpair_bundle_free`.
#[no_mangle]
pub extern "C" fn charpair_bundle_companion() -> *mut CharpairBundle {
    Box::into_raw(Box::new(CharpairBundle {
        inner: fixtures::companion_bundle(),
    }))
}

/// Parses a bundle from its JSON description.
#[no_mangle]
pub extern "C" fn charpair_bundle_from_json(
    json: *const c_char,
    out: *mut *mut CharpairBundle,
) -> CharpairStatus {
    if json.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let text = unsafe { read_utf8(json)? };
        let bundle = fixtures::bundle_from_json_str(text)?;
        unsafe { *out = Box::into_raw(Box::new(CharpairBundle { inner: bundle })) };
        Ok(())
    })
}

/// Serializes a bundle as JSON.
#[no_mangle]
pub extern "C" fn charpair_bundle_to_json(
    bundle: *const CharpairBundle,
    out: *mut *mut c_char,
) -> CharpairStatus {
    if bundle.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        put_string(out, fixtures::bundle_to_json(b).to_string());
        Ok(())
    })
}

/// Reduces the coefficients modulo a prime, producing a new handle.
#[no_mangle]
pub extern "C" fn charpair_bundle_reduce_mod(
    bundle: *const CharpairBundle,
    p: u64,
    out: *mut *mut CharpairBundle,
) -> CharpairStatus {
    if bundle.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        let field = FqField::new(p, 1)?;
        let reduced = b.reduce_mod_p(&field)?;
        unsafe { *out = Box::into_raw(Box::new(CharpairBundle { inner: reduced })) };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn charpair_bundle_free(bundle: *mut CharpairBundle) {
    if !bundle.is_null() {
        unsafe { drop(Box::from_raw(bundle)) };
    }
}

/// The discriminant of the bundle, printed as a polynomial.
#[no_mangle]
pub extern "C" fn charpair_discriminant(
    bundle: *const CharpairBundle,
    out: *mut *mut c_char,
) -> CharpairStatus {
    if bundle.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        put_string(out, b.discriminant().to_string());
        Ok(())
    })
}

/// The degenerate fibers over the prime field, as a JSON array of
/// `{ "point": ..., "fiber": ... }` rows in table order. The bundle must
/// live over a finite field.
#[no_mangle]
pub extern "C" fn charpair_fiber_table_json(
    bundle: *const CharpairBundle,
    out: *mut *mut c_char,
) -> CharpairStatus {
    if bundle.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        let rows: Vec<serde_json::Value> = b
            .degenerate_fiber_table()?
            .iter()
            .map(|row| {
                serde_json::json!({
                    "point": format_point(&row.point),
                    "fiber": row.class.label(),
                })
            })
            .collect();
        put_string(out, serde_json::Value::Array(rows).to_string());
        Ok(())
    })
}

/// The double cover of a discriminant line and its residue class, as
/// JSON. `line` is a linear form in the base variables, e.g. `"u+w"`.
/// The bundle must live over a field of characteristic 2.
#[no_mangle]
pub extern "C" fn charpair_line_residue_json(
    bundle: *const CharpairBundle,
    line: *const c_char,
    kmax: usize,
    out: *mut *mut c_char,
) -> CharpairStatus {
    if bundle.is_null() || line.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        let text = unsafe { read_utf8(line)? };
        let form = Polynomial::parse(text, b.base_vars(), b.ring())?;
        let cover = line_cover(b, &form, kmax)?;
        put_string(
            out,
            serde_json::json!({
                "line": cover.line.to_string(),
                "ramification": format_point(&cover.ramification),
                "raw_class": cover.raw_class.to_string(),
                "reduced": cover.reduced.to_string(),
                "class": cover.class.to_string(),
            })
            .to_string(),
        );
        Ok(())
    })
}

/// Resolves the singular points of a characteristic-2 bundle by blowing
/// up, reporting the chains as JSON. `factors` is a comma-separated list
/// of the discriminant's irreducible factors; NULL selects the built-in
/// example's list.
#[no_mangle]
pub extern "C" fn charpair_resolution_report_json(
    bundle: *const CharpairBundle,
    factors: *const c_char,
    series_order: u32,
    out: *mut *mut c_char,
) -> CharpairStatus {
    if bundle.is_null() || out.is_null() {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        let list: Vec<String> = if factors.is_null() {
            ["u", "w", "u+w", "(v^2+u*v+v*w+w^2)*u+v^3"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            unsafe { read_utf8(factors)? }
                .split(',')
                .map(|s| s.trim().to_string())
                .collect()
        };
        let parsed: Vec<Polynomial> = list
            .iter()
            .map(|t| Polynomial::parse(t, b.base_vars(), b.ring()))
            .collect::<Result<_, _>>()?;
        let opts = GroebnerOptions::default();
        let report = resolution_report(b, &parsed, series_order, &opts)?;
        let chains: Vec<serde_json::Value> = report
            .chains
            .iter()
            .map(|c| {
                serde_json::json!({
                    "base": format_point(&c.base_point),
                    "field_degree": c.field_degree,
                    "fiber": c.fiber_class.label(),
                    "contact": c.contact_order,
                    "local_length": c.local_length,
                    "steps": c.steps.iter().map(|s| serde_json::json!({
                        "kind": s.kind.to_string(),
                        "rank": s.rank,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        put_string(
            out,
            serde_json::json!({
                "total_singular_length": report.total_singular_length,
                "chains": chains,
                "note": report.triviality_note,
            })
            .to_string(),
        );
        Ok(())
    })
}

/// Runs the full verification pipeline on an integral bundle. `primes`
/// may be NULL with `n_primes` zero to use the default list. On success
/// `out_passed` receives the overall verdict and `out_json` the report.
#[no_mangle]
pub extern "C" fn charpair_verify_json(
    bundle: *const CharpairBundle,
    primes: *const u64,
    n_primes: usize,
    kmax: usize,
    series_order: u32,
    allow_skips: bool,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> CharpairStatus {
    if bundle.is_null() || out_json.is_null() || out_passed.is_null() {
        return null_argument();
    }
    if primes.is_null() && n_primes != 0 {
        return null_argument();
    }
    fallible(|| {
        let b = unsafe { bundle_ref(bundle) };
        if !matches!(b.ring(), Ring::Int) {
            return Err(Error::Config(
                "the pipeline starts from a bundle with integer coefficients".to_string(),
            )
            .into());
        }
        let mut config = PipelineConfig {
            kmax,
            series_order,
            allow_skips,
            ..PipelineConfig::default()
        };
        if !primes.is_null() {
            config.primes = unsafe { std::slice::from_raw_parts(primes, n_primes) }.to_vec();
        }
        let report = run_pipeline(b, &config)?;
        unsafe { *out_passed = report.passed };
        put_string(out_json, report.to_json().to_string());
        Ok(())
    })
}
