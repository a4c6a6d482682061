//! C ABI surface over the shiftlab library.
//!
//! Systems are opaque handles created from JSON (the same documents the CLI
//! reads) or from a builtin name. Every fallible call returns an `SlStatus`;
//! on failure a thread-local message is retrievable via `sl_last_error`.
//! Numeric results go through out-pointers; counts are written as decimal
//! strings because word censuses outgrow `uint64_t` quickly.

// The safety contract is uniform: pointers must be valid (or null where a
// function documents null as acceptable) and buffers must have the stated
// capacity. Per-function `# Safety` sections would repeat that verbatim.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use shiftlab::countable;
use shiftlab::fixtures;
use shiftlab::krieger::{self, ForbiddenKind};
use shiftlab::oracle::{self, WorkGuard};
use shiftlab::system::{self, System, SystemFile};
use shiftlab::ShiftError;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    SlOk = 0,
    /// A required pointer argument was null.
    SlNullArgument = 1,
    /// A string argument was not valid UTF-8.
    SlInvalidUtf8 = 2,
    /// The JSON document or word could not be parsed.
    SlParseError = 3,
    /// The request was structurally valid but rejected (reducible matrix,
    /// inadmissible word, unsupported operation for the system kind, ...).
    SlInvalidInput = 4,
    /// The system has no natural measure.
    SlNoMeasure = 5,
    /// An iterative computation did not converge within its budget.
    SlNotConverged = 6,
    /// A cross-check between two computations disagreed.
    SlMismatch = 7,
    /// The provided output buffer is too small.
    SlBufferTooSmall = 8,
    /// A panic was caught at the boundary; the handle stays valid.
    SlInternalError = 9,
}

/// Discriminant for the kind of system behind a handle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlSystemKind {
    SlSft = 0,
    SlSofic = 1,
    SlForbidden = 2,
    SlCountable = 3,
}

/// Opaque handle to a loaded shift system.
pub struct SlSystem {
    inner: System,
}

fn status_of(err: &ShiftError) -> SlStatus {
    match err {
        ShiftError::NoNaturalMeasure(_) => SlStatus::SlNoMeasure,
        ShiftError::NonConvergence(_) => SlStatus::SlNotConverged,
        ShiftError::Mismatch(_) => SlStatus::SlMismatch,
        ShiftError::Invalid(msg) if msg.contains("parse") => SlStatus::SlParseError,
        _ => SlStatus::SlInvalidInput,
    }
}

fn fail(err: ShiftError) -> SlStatus {
    let code = status_of(&err);
    set_error(err.to_string());
    code
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SlStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(SlStatus::SlNullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SlStatus::SlInvalidUtf8
    })
}

unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize) -> SlStatus {
    if buf.is_null() {
        set_error("null output buffer");
        return SlStatus::SlNullArgument;
    }
    let bytes = s.as_bytes();
    if bytes.len() + 1 > cap {
        set_error(format!("buffer of {cap} bytes too small for {} + NUL", bytes.len()));
        return SlStatus::SlBufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    SlStatus::SlOk
}

fn guarded(f: impl FnOnce() -> SlStatus) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            SlStatus::SlInternalError
        }
    }
}

/// Copies the message for the most recent failure on this thread into `buf`
/// (NUL-terminated, truncated to fit). Returns the full message length in
/// bytes, excluding the NUL. A zero-capacity buffer just queries the length.
#[no_mangle]
pub unsafe extern "C" fn sl_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Parses a system from a JSON document. On success writes a handle that must
/// be released with `sl_system_free`.
#[no_mangle]
pub unsafe extern "C" fn sl_system_from_json(
    json: *const c_char,
    out: *mut *mut SlSystem,
) -> SlStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output handle");
            return SlStatus::SlNullArgument;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match SystemFile::parse(text).and_then(|f| f.load()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SlSystem { inner }));
                SlStatus::SlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Loads one of the named builtin systems (the same names the CLI accepts,
/// e.g. "golden-mean", "even-shift", "random-walk-z", "context-free").
#[no_mangle]
pub unsafe extern "C" fn sl_system_builtin(
    name: *const c_char,
    out: *mut *mut SlSystem,
) -> SlStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output handle");
            return SlStatus::SlNullArgument;
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match fixtures::builtin(name) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SlSystem { inner }));
                SlStatus::SlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Passing null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sl_system_free(sys: *mut SlSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Reports which kind of system the handle holds.
#[no_mangle]
pub unsafe extern "C" fn sl_system_kind(
    sys: *const SlSystem,
    out: *mut SlSystemKind,
) -> SlStatus {
    if sys.is_null() || out.is_null() {
        set_error("null argument");
        return SlStatus::SlNullArgument;
    }
    *out = match (*sys).inner {
        System::Sft(_) => SlSystemKind::SlSft,
        System::Sofic(_) => SlSystemKind::SlSofic,
        System::Forbidden(_) => SlSystemKind::SlForbidden,
        System::Countable(_) => SlSystemKind::SlCountable,
    };
    SlStatus::SlOk
}

fn spectral_radius(sys: &System, tol: f64) -> Result<f64, ShiftError> {
    match sys {
        System::Sft(s) => Ok(s.spectral(tol)?.lambda),
        System::Sofic(g) => Ok(g.spectral(tol)?.lambda),
        System::Countable(c) => Ok(countable::approx_perron(c, tol, 500, None)?.lambda),
        System::Forbidden(f) => match f.kind {
            ForbiddenKind::ContextFree => Ok(krieger::cf_entropy(tol, 500)?.exp()),
            ForbiddenKind::WordList { .. } => {
                let cover = krieger::krieger_cover(f, 6, 4, 256)?;
                Ok(countable::approx_perron(&cover.cover, tol, 256, None)?.lambda)
            }
        },
    }
}

/// Spectral radius of the system: the Perron eigenvalue of its (possibly
/// truncated) transition structure. `tol` bounds the eigensolve residual.
#[no_mangle]
pub unsafe extern "C" fn sl_spectral_radius(
    sys: *const SlSystem,
    tol: f64,
    out: *mut f64,
) -> SlStatus {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        match spectral_radius(&(*sys).inner, tol) {
            Ok(v) => {
                *out = v;
                SlStatus::SlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Topological entropy, i.e. log of the spectral radius.
#[no_mangle]
pub unsafe extern "C" fn sl_entropy(sys: *const SlSystem, tol: f64, out: *mut f64) -> SlStatus {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        match spectral_radius(&(*sys).inner, tol) {
            Ok(v) => {
                *out = v.ln();
                SlStatus::SlOk
            }
            Err(e) => fail(e),
        }
    })
}

/// Natural measure of the cylinder on `word` (symbols separated by commas,
/// or one character per symbol). Supported for SFT and sofic handles.
#[no_mangle]
pub unsafe extern "C" fn sl_measure(
    sys: *const SlSystem,
    word: *const c_char,
    tol: f64,
    out: *mut f64,
) -> SlStatus {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        let word = match read_str(word) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let result = match &(*sys).inner {
            System::Sft(s) => s
                .parse_word(word)
                .and_then(|w| s.natural_measure(&w, tol, 512))
                .map(|m| m.value),
            System::Sofic(g) => g
                .parse_word(word)
                .and_then(|w| g.natural_measure(&w, tol))
                .map(|m| m.value),
            _ => Err(ShiftError::Invalid(
                "measure is only defined for sft and sofic handles".into(),
            )),
        };
        match result {
            Ok(v) => {
                *out = v;
                SlStatus::SlOk
            }
            Err(e) => fail(e),
        }
    })
}

fn count(sys: &System, n: usize, periodic: bool) -> Result<String, ShiftError> {
    let guard = WorkGuard::new();
    let big = match sys {
        System::Sft(s) => {
            if periodic {
                s.periodic_count(n)?
            } else {
                s.word_count(n)?
            }
        }
        System::Sofic(g) => {
            if periodic {
                g.count_periodic(n)?
            } else {
                g.count_words(n)?
            }
        }
        System::Forbidden(f) => {
            if periodic {
                oracle::count_periodic(f, n, &guard)?
            } else {
                oracle::census(f, n, &guard)?
            }
        }
        System::Countable(_) => {
            return Err(ShiftError::Invalid(
                "censuses of countable-state systems are not finite".into(),
            ))
        }
    };
    Ok(big.to_string())
}

/// Number of admissible words of length `n`, written to `buf` as a decimal
/// string (counts overflow any fixed-width integer).
#[no_mangle]
pub unsafe extern "C" fn sl_word_count(
    sys: *const SlSystem,
    n: usize,
    buf: *mut c_char,
    cap: usize,
) -> SlStatus {
    guarded(|| {
        if sys.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        match count(&(*sys).inner, n, false) {
            Ok(s) => write_str(&s, buf, cap),
            Err(e) => fail(e),
        }
    })
}

/// Number of points of period `n` (sequences fixed by the n-th shift power),
/// written to `buf` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn sl_periodic_count(
    sys: *const SlSystem,
    n: usize,
    buf: *mut c_char,
    cap: usize,
) -> SlStatus {
    guarded(|| {
        if sys.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        match count(&(*sys).inner, n, true) {
            Ok(s) => write_str(&s, buf, cap),
            Err(e) => fail(e),
        }
    })
}

/// Serializes the system back to its JSON document form.
#[no_mangle]
pub unsafe extern "C" fn sl_system_to_json(
    sys: *const SlSystem,
    buf: *mut c_char,
    cap: usize,
) -> SlStatus {
    guarded(|| {
        if sys.is_null() {
            set_error("null argument");
            return SlStatus::SlNullArgument;
        }
        match system::export(&(*sys).inner) {
            Ok(file) => write_str(&file.to_json(), buf, cap),
            Err(e) => fail(e),
        }
    })
}
