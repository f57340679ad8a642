//! C ABI for qarith.
//!
//! Every fallible call returns a `QarithStatus`; on anything but
//! `QARITH_STATUS_OK` the message is available from `qarith_last_error` on the
//! same thread. Circuits are opaque handles released with
//! `qarith_circuit_free`; strings returned by the library are released with
//! `qarith_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qarith::arith::{ArithSpec, Family};
use qarith::circuit::{from_text, report_with, to_text, Circuit, TMode};
use qarith::toffoli::{expand, DecompKind, ExpansionPolicy};
use qarith::topology::{clustering_coefficient, cpl, graph_by_name};
use qarith::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QarithStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParam = 4,
    UnknownName = 5,
    Policy = 6,
    Capacity = 7,
    Disconnected = 8,
    Internal = 9,
}

impl From<&Error> for QarithStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => QarithStatus::Parse,
            Error::UnknownName(_) => QarithStatus::UnknownName,
            Error::Policy(_) | Error::NotOdbEligible { .. } => QarithStatus::Policy,
            Error::Capacity { .. } => QarithStatus::Capacity,
            Error::Disconnected => QarithStatus::Disconnected,
            Error::MalformedOperation(_)
            | Error::DuplicateQubit(_)
            | Error::UnsupportedWidth(_)
            | Error::Shape(..)
            | Error::InvalidParam(_) => QarithStatus::InvalidParam,
        }
    }
}

/// Opaque circuit handle.
pub struct QarithCircuit {
    inner: Circuit,
}

/// Resource counts of a circuit.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QarithReport {
    pub depth: usize,
    pub t_depth: usize,
    pub t_count: usize,
    pub cnot_count: usize,
    pub measurement_count: usize,
    pub width: usize,
    pub kq: usize,
    pub kq_t: usize,
    /// Toffoli-like gates that were not lowered.
    pub unexpanded: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(QarithStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QarithStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QarithStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            QarithStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QarithStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QarithStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn circuit_arg<'a>(c: *const QarithCircuit) -> Result<&'a Circuit, Fail> {
    c.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(QarithStatus::NullPointer, "circuit is null".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(QarithStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn handle(c: Circuit) -> *mut QarithCircuit {
    Box::into_raw(Box::new(QarithCircuit { inner: c }))
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call; never null.
#[no_mangle]
pub extern "C" fn qarith_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qarith_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an arithmetic circuit at Toffoli level. `family` is one of
/// `ctrl-adder`, `takahashi`, `cla`, `multiplier`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_build(
    family: *const c_char,
    n: usize,
    out: *mut *mut QarithCircuit,
) -> QarithStatus {
    guard(|| {
        let family: Family = str_arg(family, "family")?.parse()?;
        let (c, _) = ArithSpec::new(family, n).build()?;
        put(out, handle(c))
    })
}

/// Parses circuit text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_parse(
    text: *const c_char,
    out: *mut *mut QarithCircuit,
) -> QarithStatus {
    guard(|| {
        let c = from_text(str_arg(text, "text")?)?;
        put(out, handle(c))
    })
}

/// Lowers every Toffoli of `circuit` with `decomp` (`st`, `0at3`, `4at1`,
/// `rt3`, `rt4`, `and`, `barenco`). With `odb`, eligible compute/uncompute
/// pairs use measurement-based uncomputation. The input is left untouched.
///
/// # Safety
/// `circuit` must be a live handle, `decomp` a NUL-terminated string and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_expand(
    circuit: *const QarithCircuit,
    decomp: *const c_char,
    odb: bool,
    out: *mut *mut QarithCircuit,
) -> QarithStatus {
    guard(|| {
        let c = circuit_arg(circuit)?;
        let kind: DecompKind = str_arg(decomp, "decomp")?.parse()?;
        let policy = if odb {
            ExpansionPolicy::odb(kind)
        } else {
            ExpansionPolicy::new(kind)
        };
        put(out, handle(expand(c, &policy)?))
    })
}

/// Number of operations, or 0 for a null handle.
///
/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_len(circuit: *const QarithCircuit) -> usize {
    circuit.as_ref().map_or(0, |h| h.inner.len())
}

/// ASAP resource report. With `sequential_t`, T gates never share a layer.
///
/// # Safety
/// `circuit` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_report(
    circuit: *const QarithCircuit,
    sequential_t: bool,
    out: *mut QarithReport,
) -> QarithStatus {
    guard(|| {
        let c = circuit_arg(circuit)?;
        let mode = if sequential_t {
            TMode::Sequential
        } else {
            TMode::Parallel
        };
        let r = report_with(c, mode);
        put(
            out,
            QarithReport {
                depth: r.depth,
                t_depth: r.t_depth(mode),
                t_count: r.t_count,
                cnot_count: r.cnot_count,
                measurement_count: r.measurement_count,
                width: r.width,
                kq: r.kq,
                kq_t: r.kq_t,
                unexpanded: r.unexpanded,
            },
        )
    })
}

/// Circuit text; release with `qarith_string_free`.
///
/// # Safety
/// `circuit` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_to_text(
    circuit: *const QarithCircuit,
    out: *mut *mut c_char,
) -> QarithStatus {
    guard(|| {
        let text = to_text(circuit_arg(circuit)?);
        let s = CString::new(text).map_err(|_| Fail(QarithStatus::Internal, "NUL in text".into()))?;
        put(out, s.into_raw())
    })
}

/// # Safety
/// `circuit` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qarith_circuit_free(circuit: *mut QarithCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qarith_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Characteristic path length and clustering coefficient of a shipped
/// coupling graph.
///
/// # Safety
/// `name` must be a NUL-terminated string; `cpl_out` and `cc_out` writable.
#[no_mangle]
pub unsafe extern "C" fn qarith_graph_metrics(
    name: *const c_char,
    cpl_out: *mut f64,
    cc_out: *mut f64,
) -> QarithStatus {
    guard(|| {
        let g = graph_by_name(str_arg(name, "name")?)?;
        let l = cpl(&g)?;
        put(cpl_out, l)?;
        put(cc_out, clustering_coefficient(&g))
    })
}
