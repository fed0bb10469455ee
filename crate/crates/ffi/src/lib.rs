//! C ABI for `suffix-nsc`.
//!
//! Automata cross the boundary as opaque `SnscNfa` handles. Every fallible
//! function returns an `SnscStatus`; on failure a description is available
//! from `snsc_last_error_message` on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with `snsc_string_free`; handles with `snsc_nfa_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use suffix_nsc::automata::json;
use suffix_nsc::bounds::{
    certify_with, check_fooling_set, nsc_exhaustive, BoundsError, FoolingSet, Operation,
};
use suffix_nsc::constructions::{ConstructionError, Constructor};
use suffix_nsc::witnesses::{build, Witness, WitnessError, WitnessSpec};
use suffix_nsc::{is_suffix_free, Nfa};

/// Opaque automaton handle.
pub struct SnscNfa {
    inner: Nfa,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    PreconditionViolation = 4,
    ParameterOutOfRange = 5,
    BudgetExceeded = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnscOperation {
    Union = 0,
    Concat = 1,
    Intersect = 2,
    Star = 3,
    Reverse = 4,
    Complement = 5,
}

struct Failure {
    status: SnscStatus,
    message: String,
}

impl Failure {
    fn new(status: SnscStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<json::JsonError> for Failure {
    fn from(e: json::JsonError) -> Self {
        Failure::new(SnscStatus::ParseError, e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        Failure::new(SnscStatus::PreconditionViolation, e.to_string())
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        let status = match e {
            WitnessError::UnknownFamily(_) => SnscStatus::ParseError,
            WitnessError::PrefixClash => SnscStatus::PreconditionViolation,
            _ => SnscStatus::ParameterOutOfRange,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        let status = match &e {
            BoundsError::ParameterOutOfRange { .. }
            | BoundsError::MissingN(_)
            | BoundsError::EmptyTarget => SnscStatus::ParameterOutOfRange,
            BoundsError::BudgetExceeded { .. } | BoundsError::SearchBudgetExceeded { .. } => {
                SnscStatus::BudgetExceeded
            }
            BoundsError::Witness(w) => return Failure::from(w.clone()),
            _ => SnscStatus::PreconditionViolation,
        };
        Failure::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SnscStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "internal panic".to_string());
        Err(Failure::new(SnscStatus::Panic, message))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SnscStatus::Ok
        }
        Err(f) => {
            set_last_error(&f.message);
            f.status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::new(SnscStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::new(
            SnscStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn nfa_arg<'a>(p: *const SnscNfa, what: &str) -> Result<&'a Nfa, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn handle(a: Nfa) -> *mut SnscNfa {
    Box::into_raw(Box::new(SnscNfa { inner: a }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn snsc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn snsc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses canonical automaton JSON into a new handle.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_nfa_from_json(
    json: *const c_char,
    out: *mut *mut SnscNfa,
) -> SnscStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let a = json::from_json(text)?;
        put(out, handle(a), "out")
    })
}

/// Canonical JSON for `a`; release with `snsc_string_free`.
///
/// # Safety
/// `a` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_nfa_to_json(a: *const SnscNfa, out: *mut *mut c_char) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, c_string(json::to_json(a)), "out")
    })
}

/// # Safety
/// `a` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snsc_nfa_free(a: *mut SnscNfa) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snsc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `a` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_nfa_state_count(a: *const SnscNfa, out: *mut usize) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        put(out, a.state_count(), "out")
    })
}

/// Membership of `word`, written with the alphabet's labels ("" for λ).
///
/// # Safety
/// `a` must be NULL or a live handle, `word` NULL or NUL-terminated, `out`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_nfa_accepts(
    a: *const SnscNfa,
    word: *const c_char,
    out: *mut bool,
) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        let text = str_arg(word, "word")?;
        let w = a
            .alphabet()
            .word(text)
            .map_err(|e| Failure::new(SnscStatus::ParseError, e.to_string()))?;
        put(out, a.accepts(&w), "out")
    })
}

/// Decides suffix-freeness. When the language is not suffix-free and
/// `witness_json` is non-NULL, it receives `["shorter","longer"]`;
/// otherwise it receives NULL.
///
/// # Safety
/// `a` must be NULL or a live handle; out-pointers NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_check_suffix_free(
    a: *const SnscNfa,
    suffix_free: *mut bool,
    witness_json: *mut *mut c_char,
) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        if suffix_free.is_null() {
            return Err(null("suffix_free"));
        }
        let verdict = is_suffix_free(a);
        if !witness_json.is_null() {
            let text = verdict.witness().map(|(s, l)| {
                let pair = [a.alphabet().render(s), a.alphabet().render(l)];
                c_string(serde_json::to_string(&pair).expect("strings serialize"))
            });
            witness_json.write(text.unwrap_or(ptr::null_mut()));
        }
        put(suffix_free, verdict.is_suffix_free(), "suffix_free")
    })
}

/// Applies `op`. Binary operations need `b`; unary ones ignore it. With
/// `strict`, operands must be suffix-free, not only non-returning. The
/// complement is returned as a complete DFA in NFA form.
///
/// # Safety
/// `a` and `b` must be NULL or live handles; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_apply(
    op: SnscOperation,
    a: *const SnscNfa,
    b: *const SnscNfa,
    strict: bool,
    out: *mut *mut SnscNfa,
) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = Constructor { strict };
        let result = match op {
            SnscOperation::Union => c.union(a, nfa_arg(b, "b")?)?,
            SnscOperation::Concat => c.concat(a, nfa_arg(b, "b")?)?,
            SnscOperation::Intersect => c.intersect(a, nfa_arg(b, "b")?)?,
            SnscOperation::Star => c.star(a)?,
            SnscOperation::Reverse => c.reverse(a)?,
            SnscOperation::Complement => c.complement(a)?.to_nfa(),
        };
        put(out, handle(result), "out")
    })
}

/// Builds a witness. `n = 0` means "no second parameter". Pair families
/// write the second automaton to `second`, which must then be non-NULL;
/// single families set `*second` to NULL when it is non-NULL.
///
/// # Safety
/// `family` must be NULL or NUL-terminated; out-pointers NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_witness(
    family: *const c_char,
    m: usize,
    n: usize,
    first: *mut *mut SnscNfa,
    second: *mut *mut SnscNfa,
) -> SnscStatus {
    guard(|| {
        let family = str_arg(family, "family")?.parse()?;
        if first.is_null() {
            return Err(null("first"));
        }
        let n = (n != 0).then_some(n);
        match build(&WitnessSpec { family, m, n })? {
            Witness::Single(a) => {
                if !second.is_null() {
                    second.write(ptr::null_mut());
                }
                put(first, handle(a), "first")
            }
            Witness::Pair(a, b) => {
                if second.is_null() {
                    return Err(null("second"));
                }
                second.write(handle(b));
                put(first, handle(a), "first")
            }
        }
    })
}

/// Checks a pairs document `[["x","w"], ...]` as a fooling set for L(a).
///
/// # Safety
/// `a` must be NULL or a live handle, `pairs_json` NULL or NUL-terminated,
/// `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_verify_fooling_set(
    a: *const SnscNfa,
    pairs_json: *const c_char,
    out: *mut bool,
) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        let p = FoolingSet::from_json(a.alphabet(), str_arg(pairs_json, "pairs_json")?)?;
        put(out, check_fooling_set(a, &p).is_none(), "out")
    })
}

/// Exact NSC up to `max_states`; writes 0 when no NFA that small exists.
///
/// # Safety
/// `a` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_nsc_exhaustive(
    a: *const SnscNfa,
    max_states: usize,
    out: *mut usize,
) -> SnscStatus {
    guard(|| {
        let a = nfa_arg(a, "a")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let k = nsc_exhaustive(a, max_states)?;
        put(out, k.unwrap_or(0), "out")
    })
}

/// Certification report for `op` ("union", "concat", "intersect", "star",
/// "reverse", "complement") as JSON. `n = 0` means "no second parameter".
///
/// # Safety
/// `op` must be NULL or NUL-terminated; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn snsc_certify_json(
    op: *const c_char,
    m: usize,
    n: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> SnscStatus {
    guard(|| {
        let op: Operation = str_arg(op, "op")?
            .parse()
            .map_err(|e: String| Failure::new(SnscStatus::ParseError, e))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = certify_with(op, m, (n != 0).then_some(n), seed)?;
        let text = serde_json::to_string(&report).expect("report serializes");
        put(out, c_string(text), "out")
    })
}
