//! C ABI over `hk_core`.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `*_free`. Every fallible call returns an [`HkStatus`]; on failure the
//! message is available from [`hk_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hk_core::error::HkError;
use hk_core::representation::{check_effective, WeightFunction};
use hk_core::rewrite::{enumerate_graph, idempotents, ElementId, ElementTable, RewriteSystem};
use hk_core::{families, graph::parse_graph, DirectedGraph};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapExceeded = 4,
    LimitExceeded = 5,
    OutOfRange = 6,
    InvalidInput = 7,
    Panic = 8,
}

/// A directed graph.
pub struct HkGraph {
    graph: DirectedGraph,
}

/// An enumerated monoid together with the graph it came from.
pub struct HkMonoid {
    graph: DirectedGraph,
    _rules: RewriteSystem,
    table: ElementTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: HkStatus, msg: impl Into<String>) -> HkStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &HkError) -> HkStatus {
    match e {
        HkError::Parse { .. } => HkStatus::ParseError,
        HkError::CapExceeded { .. } => HkStatus::CapExceeded,
        HkError::LimitExceeded(_) | HkError::Unstable(_) => HkStatus::LimitExceeded,
        _ => HkStatus::InvalidInput,
    }
}

fn from_core(e: HkError) -> HkStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into [`HkStatus::Panic`].
fn guard(f: impl FnOnce() -> HkStatus) -> HkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HkStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HkStatus> {
    if s.is_null() {
        return Err(fail(HkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HkStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn write_out<T>(out: *mut T, value: T) -> HkStatus {
    if out.is_null() {
        return fail(HkStatus::NullPointer, "null output pointer");
    }
    // SAFETY: checked non-null; the caller provides a writable location.
    unsafe { out.write(value) };
    HkStatus::Ok
}

fn new_graph(r: hk_core::Result<DirectedGraph>, out: *mut *mut HkGraph) -> HkStatus {
    if out.is_null() {
        return fail(HkStatus::NullPointer, "null output pointer");
    }
    match r {
        Ok(graph) => write_out(out, Box::into_raw(Box::new(HkGraph { graph }))),
        Err(e) => from_core(e),
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph in the line format or as a DOT digraph.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_graph_parse(text: *const c_char, out: *mut *mut HkGraph) -> HkStatus {
    guard(|| match read_str(text) {
        Ok(s) => new_graph(parse_graph(s), out),
        Err(st) => st,
    })
}

/// Builds a graph from a builder expression such as `chain(4)`.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_graph_builder(expr: *const c_char, out: *mut *mut HkGraph) -> HkStatus {
    guard(|| match read_str(expr) {
        Ok(s) => new_graph(families::build(s), out),
        Err(st) => st,
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_graph_free(g: *mut HkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn hk_graph_vertex_count(g: *const HkGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Enumerates the monoid of `g`, stopping with `CapExceeded` past `cap`
/// elements.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_enumerate(g: *const HkGraph, cap: usize, out: *mut *mut HkMonoid) -> HkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(HkStatus::NullPointer, "null graph");
        };
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output pointer");
        }
        if cap == 0 {
            return fail(HkStatus::InvalidInput, "cap must be positive");
        }
        match enumerate_graph(&g.graph, cap) {
            Ok((rules, table)) => write_out(
                out,
                Box::into_raw(Box::new(HkMonoid {
                    graph: g.graph.clone(),
                    _rules: rules,
                    table,
                })),
            ),
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_free(m: *mut HkMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live monoid handle.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_size(m: *const HkMonoid) -> usize {
    m.as_ref().map_or(0, |m| m.table.len())
}

/// Normal form of element `index` in enumeration order, as a newly allocated
/// string (`-` for the identity). Free it with [`hk_string_free`].
///
/// # Safety
/// `m` must be a live monoid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_normal_form(m: *const HkMonoid, index: usize, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        let Some(m) = m.as_ref() else {
            return fail(HkStatus::NullPointer, "null monoid");
        };
        if index >= m.table.len() {
            return fail(
                HkStatus::OutOfRange,
                format!("element {index} out of range (size {})", m.table.len()),
            );
        }
        let nf = m.table.normal_form(ElementId(index as u32)).display(&m.graph).to_string();
        let c = CString::new(nf).expect("labels contain no nul");
        write_out(out, c.into_raw())
    })
}

/// Number of idempotent elements.
///
/// # Safety
/// `m` must be a live monoid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_idempotent_count(m: *const HkMonoid, out: *mut usize) -> HkStatus {
    guard(|| match m.as_ref() {
        Some(m) => write_out(out, idempotents(&m.table).len()),
        None => fail(HkStatus::NullPointer, "null monoid"),
    })
}

/// Checks whether the matrix representation with every edge weight equal to
/// `weight` separates all elements. Writes 1 or 0 to `out`.
///
/// # Safety
/// `m` must be a live monoid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_monoid_check_effective(m: *const HkMonoid, weight: i64, out: *mut i32) -> HkStatus {
    guard(|| {
        let Some(m) = m.as_ref() else {
            return fail(HkStatus::NullPointer, "null monoid");
        };
        let r = WeightFunction::constant(&m.graph, weight).and_then(|f| check_effective(&m.graph, &f, &m.table));
        match r {
            Ok(r) => write_out(out, i32::from(r.effective)),
            Err(e) => from_core(e),
        }
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
