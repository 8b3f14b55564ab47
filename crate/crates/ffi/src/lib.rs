//! C ABI over plabic graphs.
//!
//! Graphs are opaque handles released with `plabica_graph_free`. Strings
//! returned through out-parameters are owned by the caller and released
//! with `plabica_string_free`. Every function returns a `PlabicaStatus`;
//! on failure `plabica_last_error_message` describes the error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plabica::plabic::{Family, GraphJson, PlabicGraph};
use plabica::seeds::{assemble_superpotential, superpotential_terms};
use plabica::subsets::{DihedralElement, KSubset};
use plabica::Error;

/// Opaque graph handle.
pub struct PlabicaGraph {
    inner: PlabicGraph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlabicaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    OutOfRange = 3,
    Invalid = 4,
    Mismatch = 5,
    Malformed = 6,
    NotReduced = 7,
    LabelAbsent = 8,
    Frozen = 9,
    NotMutable = 10,
    Precondition = 11,
    Budget = 12,
    Unbounded = 13,
    Arithmetic = 14,
    Parse = 15,
    Io = 16,
    Panic = 17,
}

struct Failure {
    status: PlabicaStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::OutOfRange(_) => PlabicaStatus::OutOfRange,
            Error::Invalid(_) => PlabicaStatus::Invalid,
            Error::Mismatch(_) => PlabicaStatus::Mismatch,
            Error::Malformed(_) => PlabicaStatus::Malformed,
            Error::NotReduced(_) => PlabicaStatus::NotReduced,
            Error::LabelAbsent(_) => PlabicaStatus::LabelAbsent,
            Error::Frozen(_) => PlabicaStatus::Frozen,
            Error::NotMutable(..) => PlabicaStatus::NotMutable,
            Error::Precondition(_) => PlabicaStatus::Precondition,
            Error::Budget(_) => PlabicaStatus::Budget,
            Error::Unbounded => PlabicaStatus::Unbounded,
            Error::Arithmetic(_) => PlabicaStatus::Arithmetic,
            Error::Parse(_) => PlabicaStatus::Parse,
            Error::Io(_) => PlabicaStatus::Io,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            status: PlabicaStatus::Parse,
            message: e.to_string(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', "\\0")).expect("nul bytes replaced"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PlabicaStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure {
            status: PlabicaStatus::Panic,
            message,
        })
    });
    match outcome {
        Ok(()) => {
            set_last_error(None);
            PlabicaStatus::Ok
        }
        Err(fail) => {
            set_last_error(Some(fail.message));
            fail.status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure {
        status: PlabicaStatus::NullPointer,
        message: format!("{what} is null"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure {
        status: PlabicaStatus::InvalidUtf8,
        message: format!("{what}: {e}"),
    })
}

unsafe fn graph_ref<'a>(g: *const PlabicaGraph) -> Result<&'a PlabicGraph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure {
        status: PlabicaStatus::Invalid,
        message: e.to_string(),
    })
}

fn into_handle(g: PlabicGraph) -> *mut PlabicaGraph {
    Box::into_raw(Box::new(PlabicaGraph { inner: g }))
}

fn label_text(l: &KSubset) -> String {
    l.elements().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Builds `family` (`rec`, `ch`, `dual-rec` or `dual-ch`) for `Gr(k, n)`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_build(
    family: *const c_char,
    k: usize,
    n: usize,
    out: *mut *mut PlabicaGraph,
) -> PlabicaStatus {
    guard(|| {
        let fam: Family = read_str(family, "family")?.parse()?;
        let g = fam.build(k, n)?;
        put(out, into_handle(g))
    })
}

/// Parses graph JSON as produced by `plabica_graph_to_json`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_from_json(json: *const c_char, out: *mut *mut PlabicaGraph) -> PlabicaStatus {
    guard(|| {
        let j: GraphJson = serde_json::from_str(read_str(json, "json")?)?;
        let g = PlabicGraph::from_json(&j)?;
        put(out, into_handle(g))
    })
}

/// Releases a graph handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_free(g: *mut PlabicaGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of faces, boundary faces included.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_face_count(g: *const PlabicaGraph, out: *mut usize) -> PlabicaStatus {
    guard(|| {
        let count = graph_ref(g)?.labels()?.len();
        put(out, count)
    })
}

/// `{"k":..,"n":..,"labels":[[..]..],"right_labels":[[..]..]}`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_labels_json(g: *const PlabicaGraph, out: *mut *mut c_char) -> PlabicaStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let all = |c: plabica::subsets::LabelCollection| c.labels().iter().map(KSubset::elements).collect::<Vec<_>>();
        let v = serde_json::json!({
            "k": g.k(),
            "n": g.n(),
            "labels": all(g.labels()?),
            "right_labels": all(g.right_labels()?),
        });
        put(out, into_c_string(v.to_string())?)
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_to_json(g: *const PlabicaGraph, out: *mut *mut c_char) -> PlabicaStatus {
    guard(|| {
        let text = serde_json::to_string(&graph_ref(g)?.to_json())?;
        put(out, into_c_string(text)?)
    })
}

/// Mutates at the face with left label `label` (e.g. `"1,4,6"`). The input
/// handle is left unchanged; the mutated graph goes to `out` and, if
/// `new_label` is not null, the replacing label to `new_label`.
///
/// # Safety
/// `g` must be a live handle, `label` a NUL-terminated string, `out` a
/// valid pointer and `new_label` valid or null.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_mutate(
    g: *const PlabicaGraph,
    label: *const c_char,
    out: *mut *mut PlabicaGraph,
    new_label: *mut *mut c_char,
) -> PlabicaStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let l = KSubset::parse(g.n(), read_str(label, "label")?)?;
        if l.len() != g.k() {
            return Err(Error::Invalid(format!("label {l} does not have {} elements", g.k())).into());
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let (h, new) = g.mutate(&l)?;
        if !new_label.is_null() {
            new_label.write(into_c_string(label_text(&new))?);
        }
        put(out, into_handle(h))
    })
}

/// Applies `σ^shift`, or `σ^shift τ` when `reflected`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_dihedral_act(
    g: *const PlabicaGraph,
    shift: i64,
    reflected: bool,
    out: *mut *mut PlabicaGraph,
) -> PlabicaStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let e = if reflected {
            DihedralElement::reflection(g.n(), shift)
        } else {
            DihedralElement::rotation(g.n(), shift)
        };
        put(out, into_handle(g.dihedral_act(&e)))
    })
}

/// The superpotential in the seed of `g` as text, searching at most `budget` mutations per term.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plabica_graph_superpotential(
    g: *const PlabicaGraph,
    budget: usize,
    out: *mut *mut c_char,
) -> PlabicaStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let w = assemble_superpotential(&superpotential_terms(g, budget)?, g.k());
        put(out, into_c_string(w.to_string())?)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn plabica_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn plabica_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
