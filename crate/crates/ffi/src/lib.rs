//! C ABI for the game-coloring solvers: opaque graph handles, status codes,
//! and value-out parameters. Strings returned by this library are allocated
//! here and must be released with `ggc_string_free`.

use ggc_core::coloring::{game_chromatic, offline_chromatic, solve_coloring};
use ggc_core::graph::{ConflictGraph, ConflictMode, SimpleGraph};
use ggc_core::marking::{gcol, solve_marking};
use ggc_core::orientation::min_max_outdegree_orientation;
use ggc_core::{parse_graph6, to_graph6, Error, Player};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgcStatus {
    GgcOk = 0,
    GgcNullPointer = 1,
    GgcInvalidUtf8 = 2,
    GgcParseError = 3,
    GgcCapExceeded = 4,
    GgcInvalidArgument = 5,
    GgcInternalError = 6,
}

/// Which conflict graph a game is played on.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgcMode {
    GgcModeVertex = 0,
    GgcModeEdge = 1,
    GgcModeTotal = 2,
}

/// Winner of a solved game.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GgcWinner {
    GgcWinnerAlice = 0,
    GgcWinnerBob = 1,
}

/// Opaque graph handle.
pub struct GgcGraph {
    inner: SimpleGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_for(err: &Error) -> GgcStatus {
    match err {
        Error::Graph6 { .. } => GgcStatus::GgcParseError,
        Error::CapExceeded { .. } => GgcStatus::GgcCapExceeded,
        Error::InvalidGraph(_) => GgcStatus::GgcInvalidArgument,
        _ => GgcStatus::GgcInternalError,
    }
}

fn mode_of(mode: GgcMode) -> ConflictMode {
    match mode {
        GgcMode::GgcModeVertex => ConflictMode::Identity,
        GgcMode::GgcModeEdge => ConflictMode::Line,
        GgcMode::GgcModeTotal => ConflictMode::Total,
    }
}

/// Runs a solver closure, translating panics into an error status.
fn guarded<F: FnOnce() -> Result<u32, Error>>(out: *mut u32, f: F) -> GgcStatus {
    if out.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { *out = v };
            GgcStatus::GgcOk
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_for(&e)
        }
        Err(_) => {
            set_error("solver panicked".into());
            GgcStatus::GgcInternalError
        }
    }
}

/// Parses a graph6 string into a new graph handle. On success `*out` owns
/// the graph; release it with `ggc_graph_free`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_graph_parse_g6(
    text: *const c_char,
    out: *mut *mut GgcGraph,
) -> GgcStatus {
    if text.is_null() || out.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return GgcStatus::GgcInvalidUtf8,
    };
    match parse_graph6(s) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(GgcGraph { inner: g }));
            GgcStatus::GgcOk
        }
        Err(e) => {
            set_error(e.to_string());
            status_for(&e)
        }
    }
}

/// Releases a graph handle. A null pointer is a no-op.
///
/// # Safety
/// `g` must be null or a pointer returned by `ggc_graph_parse_g6`, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ggc_graph_free(g: *mut GgcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, edge count, and maximum degree of a graph.
///
/// # Safety
/// All pointers must be valid; `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ggc_graph_counts(
    g: *const GgcGraph,
    out_n: *mut u32,
    out_m: *mut u32,
    out_max_degree: *mut u32,
) -> GgcStatus {
    if g.is_null() || out_n.is_null() || out_m.is_null() || out_max_degree.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let graph = &(*g).inner;
    *out_n = graph.n();
    *out_m = graph.m();
    *out_max_degree = graph.max_degree();
    GgcStatus::GgcOk
}

/// graph6 encoding of a graph; free the returned string with
/// `ggc_string_free`.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ggc_graph_to_g6(g: *const GgcGraph) -> *mut c_char {
    if g.is_null() {
        return std::ptr::null_mut();
    }
    match CString::new(to_graph6(&(*g).inner)) {
        Ok(s) => s.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Game chromatic number of the graph in the given mode (total mode is the
/// total game chromatic number).
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_game_chromatic(
    g: *const GgcGraph,
    mode: GgcMode,
    out: *mut u32,
) -> GgcStatus {
    if g.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let graph = &(*g).inner;
    guarded(out, || game_chromatic(graph, mode_of(mode)).map(|r| r.value))
}

/// Game coloring number of the graph in the given mode (total mode is the
/// total game coloring number).
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_game_coloring_number(
    g: *const GgcGraph,
    mode: GgcMode,
    out: *mut u32,
) -> GgcStatus {
    if g.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let graph = &(*g).inner;
    guarded(out, || gcol(graph, mode_of(mode)))
}

/// Winner of the coloring game with `k` colors.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_coloring_winner(
    g: *const GgcGraph,
    mode: GgcMode,
    k: u32,
    out: *mut GgcWinner,
) -> GgcStatus {
    if g.is_null() || out.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    if k == 0 {
        set_error("k must be at least 1".into());
        return GgcStatus::GgcInvalidArgument;
    }
    let graph = &(*g).inner;
    let mut value = 0u32;
    let status = guarded(&mut value, || {
        let conflict = ConflictGraph::build(graph, mode_of(mode));
        Ok(match solve_coloring(&conflict, k) {
            Player::Alice => 0,
            Player::Bob => 1,
        })
    });
    if status == GgcStatus::GgcOk {
        *out = if value == 0 {
            GgcWinner::GgcWinnerAlice
        } else {
            GgcWinner::GgcWinnerBob
        };
    }
    status
}

/// Winner of the marking game with parameter `k`.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_marking_winner(
    g: *const GgcGraph,
    mode: GgcMode,
    k: u32,
    out: *mut GgcWinner,
) -> GgcStatus {
    if g.is_null() || out.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    if k == 0 {
        set_error("k must be at least 1".into());
        return GgcStatus::GgcInvalidArgument;
    }
    let graph = &(*g).inner;
    let mut value = 0u32;
    let status = guarded(&mut value, || {
        let conflict = ConflictGraph::build(graph, mode_of(mode));
        Ok(match solve_marking(&conflict, k) {
            Player::Alice => 0,
            Player::Bob => 1,
        })
    });
    if status == GgcStatus::GgcOk {
        *out = if value == 0 {
            GgcWinner::GgcWinnerAlice
        } else {
            GgcWinner::GgcWinnerBob
        };
    }
    status
}

/// Minimum possible maximum outdegree over all orientations.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_min_max_outdegree(g: *const GgcGraph, out: *mut u32) -> GgcStatus {
    if g.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let graph = &(*g).inner;
    guarded(out, || {
        Ok(min_max_outdegree_orientation(graph).max_outdegree())
    })
}

/// Exact chromatic number of the graph's conflict graph in the given mode.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ggc_offline_chromatic(
    g: *const GgcGraph,
    mode: GgcMode,
    out: *mut u32,
) -> GgcStatus {
    if g.is_null() {
        return GgcStatus::GgcNullPointer;
    }
    let graph = &(*g).inner;
    guarded(out, || {
        Ok(offline_chromatic(&ConflictGraph::build(graph, mode_of(mode))))
    })
}

/// Message for the most recent error on this thread, or null when none.
/// Free the result with `ggc_string_free`.
#[no_mangle]
pub extern "C" fn ggc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer returned by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ggc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
