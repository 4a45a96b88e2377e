//! C ABI over `polyval`.
//!
//! Every function returns a [`PvStatus`]. On failure a message is stored per
//! thread and can be read with [`pv_last_error`]. Objects are handed out as
//! opaque pointers and must be released with the matching `*_free`
//! function; strings returned through `char **` must be released with
//! [`pv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyval::cyclo::CycloNumber;
use polyval::polygon::{generate_pg2, generate_w2, ordinary_polygon, verify_gp_axioms, FiniteGeometry, GeometryFile};
use polyval::proof::{reduce_to_standard, slope, ResidualSequence};
use polyval::valuation::{
    euclidean_weights, load_valued_geometry, run_finite_suite, TableValuation, WeightSequence,
};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Panic = 5,
}

/// A finite geometry with its valuation (all zero unless the source
/// provided one) and optional weights.
pub struct PvGeometry {
    geometry: FiniteGeometry,
    valuation: TableValuation,
    weights: Option<WeightSequence>,
}

/// An exact element of a cyclotomic field.
pub struct PvCyclo(CycloNumber);

/// A validated residual-distance sequence.
pub struct PvSequence(ResidualSequence);

type Failure = (PvStatus, String);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PvStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PvStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            PvStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (PvStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    (PvStatus::InvalidArgument, msg.into())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (PvStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output string pointer"));
    }
    *out = CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw();
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn pv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a geometry file (JSON text). Parse errors carry the JSON path,
/// line and column.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_from_json(json: *const c_char, out: *mut *mut PvGeometry) -> PvStatus {
    guard(|| {
        let src = text(json, "json")?;
        let file = GeometryFile::parse(src).map_err(|e| (PvStatus::ParseError, e.to_string()))?;
        let (geometry, valuation, weights) = load_valued_geometry(&file).map_err(invalid)?;
        put(out, PvGeometry { geometry, valuation, weights }, "out")
    })
}

fn bare(geometry: FiniteGeometry, n: usize) -> PvGeometry {
    PvGeometry { geometry, valuation: TableValuation::trivial(), weights: Some(euclidean_weights(n)) }
}

/// `PG(2, q)` for a prime power `q`, with zero valuation and weights for n = 3.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_pg2(q: u32, out: *mut *mut PvGeometry) -> PvStatus {
    guard(|| {
        let g = generate_pg2(q).map_err(|e| invalid(e.to_string()))?;
        put(out, bare(g, 3), "out")
    })
}

/// The symplectic quadrangle `W(2)`, with zero valuation and weights for n = 4.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_w2(out: *mut *mut PvGeometry) -> PvStatus {
    guard(|| put(out, bare(generate_w2(), 4), "out"))
}

/// The ordinary `k`-gon, `k >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_ordinary(k: usize, out: *mut *mut PvGeometry) -> PvStatus {
    guard(|| {
        if !(2..=10_000).contains(&k) {
            return Err(invalid(format!("k = {k} is out of range 2..=10000")));
        }
        put(out, bare(ordinary_polygon(k), k), "out")
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_free(g: *mut PvGeometry) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `points` and `lines` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_counts(g: *const PvGeometry, points: *mut usize, lines: *mut usize) -> PvStatus {
    guard(|| {
        let g = borrow(g, "geometry")?;
        write(points, g.geometry.points().count(), "points")?;
        write(lines, g.geometry.lines().count(), "lines")
    })
}

/// Checks the generalized `n`-gon axioms. A failing geometry is not an
/// error: the call succeeds and `*pass` is false.
///
/// # Safety
/// `g` must be a live handle; `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_check_gp(g: *const PvGeometry, n: usize, pass: *mut bool) -> PvStatus {
    guard(|| {
        let g = borrow(g, "geometry")?;
        if n < 2 {
            return Err(invalid("n must be at least 2"));
        }
        write(pass, verify_gp_axioms(&g.geometry, n).pass, "pass")
    })
}

/// Runs the exhaustive (U1)-(U4) suite. `n = 0` uses the handle's own
/// weights. When `report` is non-NULL it receives the JSON report.
///
/// # Safety
/// `g` must be a live handle; `pass` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn pv_geometry_check_valuation(
    g: *const PvGeometry,
    n: usize,
    chain_limit: usize,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> PvStatus {
    guard(|| {
        let g = borrow(g, "geometry")?;
        let ws = match (n, &g.weights) {
            (0, Some(ws)) => ws.clone(),
            (0, None) => return Err(invalid("no weights on this geometry; pass n")),
            (1, _) => return Err(invalid("n must be at least 2")),
            (n, _) => euclidean_weights(n),
        };
        if chain_limit == 0 {
            return Err(invalid("chain_limit must be positive"));
        }
        let r = run_finite_suite(&g.geometry, &g.valuation, &ws, chain_limit);
        write(pass, r.pass, "pass")?;
        if !report.is_null() {
            put_string(report, serde_json::to_string(&r).expect("reports serialize"))?;
        }
        Ok(())
    })
}

/// Exact `sin(kπ/n)` in `Q(ζ_{4n})`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_sin_pi_frac(k: i64, n: u32, out: *mut *mut PvCyclo) -> PvStatus {
    guard(|| {
        if n == 0 || n > 10_000 {
            return Err(invalid(format!("n = {n} is out of range 1..=10000")));
        }
        put(out, PvCyclo(CycloNumber::sin_pi_frac(k, n)), "out")
    })
}

unsafe fn binary(
    a: *const PvCyclo,
    b: *const PvCyclo,
    out: *mut *mut PvCyclo,
    op: fn(&CycloNumber, &CycloNumber) -> Result<CycloNumber, polyval::cyclo::CycloError>,
) -> PvStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        let c = op(&a.0, &b.0).map_err(|e| invalid(e.to_string()))?;
        put(out, PvCyclo(c), "out")
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_add(a: *const PvCyclo, b: *const PvCyclo, out: *mut *mut PvCyclo) -> PvStatus {
    binary(a, b, out, CycloNumber::try_add)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_sub(a: *const PvCyclo, b: *const PvCyclo, out: *mut *mut PvCyclo) -> PvStatus {
    binary(a, b, out, CycloNumber::try_sub)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_mul(a: *const PvCyclo, b: *const PvCyclo, out: *mut *mut PvCyclo) -> PvStatus {
    binary(a, b, out, CycloNumber::try_mul)
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_div(a: *const PvCyclo, b: *const PvCyclo, out: *mut *mut PvCyclo) -> PvStatus {
    binary(a, b, out, CycloNumber::try_div)
}

/// Exact equality. Values from different fields compare unequal.
///
/// # Safety
/// `a`, `b` must be live handles; `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_equal(a: *const PvCyclo, b: *const PvCyclo, equal: *mut bool) -> PvStatus {
    guard(|| {
        let (a, b) = (borrow(a, "a")?, borrow(b, "b")?);
        write(equal, a.0 == b.0, "equal")
    })
}

/// Real part in double precision.
///
/// # Safety
/// `a` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_to_f64(a: *const PvCyclo, value: *mut f64) -> PvStatus {
    guard(|| write(value, borrow(a, "a")?.0.to_f64(), "value"))
}

/// Radical form such as `-√3/2` when available, polynomial form otherwise.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_to_string(a: *const PvCyclo, out: *mut *mut c_char) -> PvStatus {
    guard(|| put_string(out, borrow(a, "a")?.0.exact_string()))
}

/// # Safety
/// `a` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pv_cyclo_free(a: *mut PvCyclo) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Validates `y[0..len]` as a residual sequence with `n = len - 1`.
///
/// # Safety
/// `y` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_sequence_new(y: *const i64, len: usize, out: *mut *mut PvSequence) -> PvStatus {
    guard(|| {
        if y.is_null() {
            return Err(null("y"));
        }
        let values = std::slice::from_raw_parts(y, len).to_vec();
        let s = ResidualSequence::new(len.saturating_sub(1), values).map_err(|e| invalid(e.to_string()))?;
        put(out, PvSequence(s), "out")
    })
}

/// Copies up to `capacity` entries into `buf`; `*len` receives the full length.
///
/// # Safety
/// `s` must be a live handle; `buf` must hold `capacity` values (may be NULL
/// when `capacity` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_sequence_values(
    s: *const PvSequence,
    buf: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> PvStatus {
    guard(|| {
        let v = borrow(s, "sequence")?.0.values();
        if capacity > 0 {
            if buf.is_null() {
                return Err(null("buf"));
            }
            let k = capacity.min(v.len());
            ptr::copy_nonoverlapping(v.as_ptr(), buf, k);
        }
        write(len, v.len(), "len")
    })
}

/// The exact slope of the sequence.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_sequence_slope(s: *const PvSequence, out: *mut *mut PvCyclo) -> PvStatus {
    guard(|| put(out, PvCyclo(slope(&borrow(s, "sequence")?.0)), "out"))
}

/// Raises leftmost valleys until the sequence is standard.
///
/// # Safety
/// `s` must be a live handle; `out` and `steps` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_sequence_reduce(
    s: *const PvSequence,
    out: *mut *mut PvSequence,
    steps: *mut usize,
) -> PvStatus {
    guard(|| {
        let r = reduce_to_standard(&borrow(s, "sequence")?.0);
        write(steps, r.steps.len(), "steps")?;
        put(out, PvSequence(r.result), "out")
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn pv_sequence_free(s: *mut PvSequence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs the command line in-process. `argv[0]` is the program name.
/// `*exit_code` follows the command line: 0 pass, 1 fail, 2 usage or input
/// error; `*output` receives what would be printed.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `exit_code` and `output`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pv_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    output: *mut *mut c_char,
) -> PvStatus {
    guard(|| {
        if argv.is_null() {
            return Err(null("argv"));
        }
        let argc = usize::try_from(argc).map_err(|_| invalid("argc is negative"))?;
        let args = (0..argc)
            .map(|i| text(*argv.add(i), "argument").map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        let (code, out) = polyval::cli::run(args);
        write(exit_code, code, "exit_code")?;
        put_string(output, out)
    })
}
