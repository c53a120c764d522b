//! C interface to `magspec`.
//!
//! Graphs are opaque [`MgsGraph`] handles created by [`mgs_graph_from_json`]
//! or [`mgs_graph_load`] and released with [`mgs_graph_free`]. A handle holds a
//! periodic graph; the `t` argument of the spectral functions is the Floquet
//! parameter and is ignored by graphs without a cocycle.
//!
//! Every function returns an [`MgsStatus`]. On failure a description is
//! available from [`mgs_last_error_message`] on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and must
//! be released with [`mgs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use magspec::cheeger::{cheeger_constant, frustration_index};
use magspec::covering::PeriodicGraph;
use magspec::graph::{EdgeId, VertexId, WeightKind};
use magspec::preorder::{
    certify_contract_edge, certify_contract_pendant, certify_contract_vertices, certify_delete_edge,
    certify_delete_vertex, Hypothesis, WeightClass,
};
use magspec::spectra::{shift_less, spanning_tree_count, spectrum};
use magspec::Error;
use serde_json::Value;

/// Result code of every `mgs_` function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    InvalidInput = 5,
    /// A computed certificate or bracket failed its numerical check.
    VerificationFailed = 6,
    /// The output buffer is too short; the required length was written.
    BufferTooSmall = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Opaque graph handle.
pub struct MgsGraph {
    inner: PeriodicGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn fail(status: MgsStatus, msg: impl Into<String>) -> MgsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> MgsStatus {
    let status = match &e {
        Error::Parse(_) => MgsStatus::Parse,
        Error::Io(_) => MgsStatus::Io,
        e if e.is_verification_failure() => MgsStatus::VerificationFailed,
        _ => MgsStatus::InvalidInput,
    };
    fail(status, format!("{}: {e}", e.code()))
}

/// Runs `body` and converts panics into [`MgsStatus::Panic`].
fn guard(body: impl FnOnce() -> Result<(), MgsStatus>) -> MgsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            MgsStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            fail(MgsStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn lift<T>(r: magspec::Result<T>) -> Result<T, MgsStatus> {
    r.map_err(from_error)
}

unsafe fn graph_ref<'a>(g: *const MgsGraph) -> Result<&'a MgsGraph, MgsStatus> {
    g.as_ref().ok_or_else(|| fail(MgsStatus::NullPointer, "graph handle is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, MgsStatus> {
    p.as_mut().ok_or_else(|| fail(MgsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, MgsStatus> {
    if s.is_null() {
        return Err(fail(MgsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(MgsStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn new_handle(inner: PeriodicGraph) -> *mut MgsGraph {
    Box::into_raw(Box::new(MgsGraph { inner }))
}

fn new_string(s: String) -> Result<*mut c_char, MgsStatus> {
    CString::new(s).map(CString::into_raw).map_err(|e| fail(MgsStatus::InvalidInput, e.to_string()))
}

/// Message describing the last failure on this thread, or an empty string.
///
/// The pointer stays valid until the next `mgs_` call on the same thread.
#[no_mangle]
pub extern "C" fn mgs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mgs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a graph file given as a NUL-terminated JSON string.
///
/// # Safety
/// `json` must be NUL-terminated and `out` must point to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_from_json(json: *const c_char, out: *mut *mut MgsGraph) -> MgsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let p = lift(magspec::io::periodic_from_json(text(json, "json")?))?;
        *out = new_handle(p);
        Ok(())
    })
}

/// Reads a graph file from `path`.
///
/// # Safety
/// `path` must be NUL-terminated and `out` must point to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_load(path: *const c_char, out: *mut *mut MgsGraph) -> MgsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let p = lift(magspec::io::load_periodic(Path::new(text(path, "path")?)))?;
        *out = new_handle(p);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `graph` must be null or a handle returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_free(graph: *mut MgsGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Serialises a graph back to JSON.
///
/// # Safety
/// `graph` must be a live handle and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_to_json(graph: *const MgsGraph, out: *mut *mut c_char) -> MgsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        *out = new_string(magspec::io::periodic_to_json(&graph_ref(graph)?.inner))?;
        Ok(())
    })
}

/// Writes the numbers of vertices and edges.
///
/// # Safety
/// `graph` must be a live handle; `vertices` and `edges` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_counts(graph: *const MgsGraph, vertices: *mut usize, edges: *mut usize) -> MgsStatus {
    guard(|| {
        let g = graph_ref(graph)?.inner.quotient();
        *out_ref(vertices, "vertices")? = g.vertex_count();
        *out_ref(edges, "edges")? = g.edge_count();
        Ok(())
    })
}

/// Creates a new handle holding the Floquet graph at parameter `t`, with no cocycle.
///
/// # Safety
/// `graph` must be a live handle and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_graph_floquet(graph: *const MgsGraph, t: f64, out: *mut *mut MgsGraph) -> MgsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let g = graph_ref(graph)?.inner.floquet(t);
        *out = new_handle(lift(PeriodicGraph::new(g, Default::default()))?);
        Ok(())
    })
}

/// Eigenvalues at Floquet parameter `t` in ascending order.
///
/// Writes the number of eigenvalues to `len`. If `capacity` is smaller, no
/// values are written and [`MgsStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `graph` must be a live handle, `len` writable, and `values` valid for
/// `capacity` writes (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn mgs_spectrum(
    graph: *const MgsGraph,
    t: f64,
    values: *mut f64,
    capacity: usize,
    len: *mut usize,
) -> MgsStatus {
    guard(|| {
        let s = lift(spectrum(&graph_ref(graph)?.inner.floquet(t)))?;
        *out_ref(len, "len")? = s.len();
        if capacity < s.len() {
            return Err(fail(MgsStatus::BufferTooSmall, format!("need room for {} values", s.len())));
        }
        if s.is_empty() {
            return Ok(());
        }
        if values.is_null() {
            return Err(fail(MgsStatus::NullPointer, "values is null"));
        }
        std::slice::from_raw_parts_mut(values, s.len()).copy_from_slice(s.values());
        Ok(())
    })
}

/// Tests `σ(a_t) ≼_r σ(b_t)` with tolerance `tol`.
///
/// `witness` receives the first failing index (counted from one), or 0.
///
/// # Safety
/// `a` and `b` must be live handles; `holds` and `witness` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgs_shift_less(
    a: *const MgsGraph,
    b: *const MgsGraph,
    t: f64,
    r: usize,
    tol: f64,
    holds: *mut bool,
    witness: *mut usize,
) -> MgsStatus {
    guard(|| {
        let sa = lift(spectrum(&graph_ref(a)?.inner.floquet(t)))?;
        let sb = lift(spectrum(&graph_ref(b)?.inner.floquet(t)))?;
        let rel = shift_less(&sa, &sb, r, tol);
        *out_ref(holds, "holds")? = rel.holds;
        *out_ref(witness, "witness")? = rel.witness_index.unwrap_or(0);
        Ok(())
    })
}

fn field(req: &Value, name: &str) -> Result<u32, MgsStatus> {
    req.get(name)
        .and_then(Value::as_u64)
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| fail(MgsStatus::InvalidInput, format!("request needs an integer field \"{name}\"")))
}

fn certify(p: &PeriodicGraph, request: &str) -> Result<String, MgsStatus> {
    let req: Value = serde_json::from_str(request).map_err(|e| fail(MgsStatus::Parse, e.to_string()))?;
    let g = p.quotient();
    let class = match req.get("hypothesis") {
        Some(h) => WeightClass::General(
            serde_json::from_value::<Hypothesis>(h.clone()).map_err(|e| fail(MgsStatus::InvalidInput, format!("hypothesis: {e}")))?,
        ),
        None => match g.kind() {
            WeightKind::Combinatorial => WeightClass::Combinatorial,
            WeightKind::Standard => WeightClass::Standard,
            WeightKind::Custom => return Err(fail(MgsStatus::InvalidInput, "custom weights need a \"hypothesis\"")),
        },
    };
    let op = req.get("operation").and_then(Value::as_str).unwrap_or_default();
    let cert = match op {
        "delete-edge" => lift(certify_delete_edge(g, EdgeId(field(&req, "edge")?), class))?.1,
        "contract-vertices" => {
            lift(certify_contract_vertices(g, VertexId(field(&req, "v1")?), VertexId(field(&req, "v2")?), class))?.1
        }
        "contract-edge" => lift(certify_contract_edge(g, EdgeId(field(&req, "edge")?), class))?.1,
        "contract-pendant" => lift(certify_contract_pendant(g, EdgeId(field(&req, "edge")?), class))?.1,
        "delete-vertex" => lift(certify_delete_vertex(g, VertexId(field(&req, "vertex")?), class))?.1,
        other => return Err(fail(MgsStatus::InvalidInput, format!("unknown operation \"{other}\""))),
    };
    Ok(serde_json::to_string(&cert).expect("certificate serialises"))
}

/// Certifies an elementary perturbation and returns the certificate as JSON.
///
/// `request` is a JSON object with `"operation"` set to one of
/// `delete-edge`, `contract-vertices`, `contract-edge`, `contract-pendant`
/// or `delete-vertex`, the operands `"edge"`, `"v1"`/`"v2"` or `"vertex"`,
/// and an optional `"hypothesis"` (required for custom weights).
///
/// # Safety
/// `graph` must be a live handle, `request` NUL-terminated, and `out`
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_certify(graph: *const MgsGraph, request: *const c_char, out: *mut *mut c_char) -> MgsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let json = certify(&graph_ref(graph)?.inner, text(request, "request")?)?;
        *out = new_string(json)?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn mgs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frustration index at parameter `t`. `exact` tells whether the value is
/// certified minimal.
///
/// # Safety
/// `graph` must be a live handle; `value` and `exact` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mgs_frustration_index(graph: *const MgsGraph, t: f64, value: *mut f64, exact: *mut bool) -> MgsStatus {
    guard(|| {
        let r = lift(frustration_index(&graph_ref(graph)?.inner.floquet(t), None))?;
        *out_ref(value, "value")? = r.value;
        *out_ref(exact, "exact")? = r.certified_exact;
        Ok(())
    })
}

/// `k`-way Cheeger constant at parameter `t`.
///
/// # Safety
/// `graph` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn mgs_cheeger(graph: *const MgsGraph, t: f64, k: usize, value: *mut f64) -> MgsStatus {
    guard(|| {
        let r = lift(cheeger_constant(&graph_ref(graph)?.inner.floquet(t), k, None))?;
        *out_ref(value, "value")? = r.value;
        Ok(())
    })
}

/// Number of spanning trees of the underlying multigraph.
///
/// # Safety
/// `graph` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn mgs_spanning_tree_count(graph: *const MgsGraph, count: *mut f64) -> MgsStatus {
    guard(|| {
        *out_ref(count, "count")? = lift(spanning_tree_count(graph_ref(graph)?.inner.quotient()))?;
        Ok(())
    })
}
