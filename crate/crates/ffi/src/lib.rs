//! C ABI for the syncburst layout engine.
//!
//! Graphs and layouts are opaque heap handles released with their `_free`
//! functions. Every fallible call returns an [`SnbStatus`]; on failure the
//! message is available from [`snb_last_error_message`] on the same thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use syncburst::bench::{Algorithm, BenchConfig};
use syncburst::graph::{
    gen_heawood, gen_queen, gen_random_connected, gen_scale_free_target_m, gen_wagner,
    parse_graph,
};
use syncburst::metrics::evaluate;
use syncburst::snb::compute_sync_param;
use syncburst::{Error, Graph, Layout};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    Degenerate = 5,
    Numeric = 6,
    Panic = 7,
}

impl From<&Error> for SnbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::InvalidEdge { .. } => SnbStatus::InvalidArgument,
            Error::Parse { .. } | Error::GraphMl(_) | Error::EmptyGraph | Error::Csv(_) | Error::Json(_) => {
                SnbStatus::Parse
            }
            Error::Io { .. } => SnbStatus::Io,
            Error::DegenerateGraph(_) | Error::DegenerateLayout(_) => SnbStatus::Degenerate,
            Error::Numeric(_) => SnbStatus::Numeric,
        }
    }
}

/// Opaque graph handle.
pub struct SnbGraph(Graph);

/// Opaque layout handle; coordinates are normalized into `[0, 1]`.
pub struct SnbLayout(Layout);

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SnbRunConfig {
    pub seed: u64,
    /// Iterations are this multiple of n (20 by default).
    pub iterations_multiplier: u32,
    /// Sync parameter for SnB; zero or negative derives it from betweenness.
    pub sync_param: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SnbMetrics {
    pub crossings: usize,
    pub avg_crossing_angle: f64,
    /// NaN when no two edges share a vertex.
    pub avg_adjacent_angle: f64,
    pub edge_length_stdev: f64,
    pub min_pair_distance_scaled: f64,
    pub vertex_distribution: f64,
    pub drawing_area: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (SnbStatus, String);

fn fail(e: Error) -> Failure {
    (SnbStatus::from(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (SnbStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SnbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SnbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SnbStatus::Panic
        }
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const SnbGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn layout_ref<'a>(l: *const SnbLayout) -> Result<&'a Layout, Failure> {
    l.as_ref().map(|l| &l.0).ok_or_else(|| null("layout"))
}

fn new_graph(out: *mut *mut SnbGraph, make: impl FnOnce() -> syncburst::Result<Graph>) -> SnbStatus {
    guard(|| {
        let g = make().map_err(fail)?;
        unsafe { put(out, SnbGraph(g)) }
    })
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn snb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an edge list or GraphML document (NUL-terminated UTF-8).
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_parse(text: *const c_char, out: *mut *mut SnbGraph) -> SnbStatus {
    new_graph(out, || {
        if text.is_null() {
            return Err(Error::InvalidParameter("text is null".into()));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Error::InvalidParameter(format!("text is not UTF-8: {e}")))?;
        Ok(parse_graph(s, None)?.graph)
    })
}

/// Builds a graph from `m` pairs stored as `edges[2k], edges[2k+1]`.
///
/// # Safety
/// `edges` must point to `2*m` readable values (may be null when `m` is 0).
#[no_mangle]
pub unsafe extern "C" fn snb_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut SnbGraph,
) -> SnbStatus {
    new_graph(out, || {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Error::InvalidParameter("edges is null".into()));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        Graph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_queen(rows: usize, cols: usize, out: *mut *mut SnbGraph) -> SnbStatus {
    new_graph(out, || gen_queen(rows, cols))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_wagner(out: *mut *mut SnbGraph) -> SnbStatus {
    new_graph(out, || Ok(gen_wagner()))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_heawood(out: *mut *mut SnbGraph) -> SnbStatus {
    new_graph(out, || Ok(gen_heawood()))
}

/// Preferential-attachment graph with exactly `target_m` edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_scale_free(
    n: usize,
    target_m: usize,
    seed: u64,
    out: *mut *mut SnbGraph,
) -> SnbStatus {
    new_graph(out, || gen_scale_free_target_m(n, target_m, seed))
}

/// Uniformly grown connected graph with `m` edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_random(n: usize, m: usize, seed: u64, out: *mut *mut SnbGraph) -> SnbStatus {
    new_graph(out, || gen_random_connected(n, m, seed))
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_vertex_count(g: *const SnbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_edge_count(g: *const SnbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// `s = min(4, 20 / stdev(betweenness))`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_sync_param(g: *const SnbGraph, out: *mut f64) -> SnbStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = compute_sync_param(g).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snb_graph_free(g: *mut SnbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub extern "C" fn snb_run_config_default() -> SnbRunConfig {
    SnbRunConfig {
        seed: 0,
        iterations_multiplier: 20,
        sync_param: 0.0,
    }
}

unsafe fn run(
    alg: Algorithm,
    g: *const SnbGraph,
    config: *const SnbRunConfig,
    out: *mut *mut SnbLayout,
) -> SnbStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let c = config.as_ref().copied().unwrap_or_else(|| snb_run_config_default());
        if c.iterations_multiplier == 0 {
            return Err(fail(Error::InvalidParameter("iterations_multiplier must be positive".into())));
        }
        let bench = BenchConfig {
            total_multiplier: c.iterations_multiplier,
            sync_param: (c.sync_param > 0.0).then_some(c.sync_param),
            base_seed: c.seed,
            single_threaded: true,
        };
        let result = bench.layout(g, alg, c.seed).map_err(fail)?;
        put(out, SnbLayout(result.layout))
    })
}

/// Sync-and-Burst layout. A null `config` means the defaults.
///
/// # Safety
/// `g` must be a live graph handle; `config` null or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn snb_layout_snb(
    g: *const SnbGraph,
    config: *const SnbRunConfig,
    out: *mut *mut SnbLayout,
) -> SnbStatus {
    run(Algorithm::Snb, g, config, out)
}

/// Fruchterman-Reingold layout with the same iteration budget; `sync_param` is ignored.
///
/// # Safety
/// As for [`snb_layout_snb`].
#[no_mangle]
pub unsafe extern "C" fn snb_layout_fr(
    g: *const SnbGraph,
    config: *const SnbRunConfig,
    out: *mut *mut SnbLayout,
) -> SnbStatus {
    run(Algorithm::Fr, g, config, out)
}

/// Number of vertices in the layout, or 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live layout handle.
#[no_mangle]
pub unsafe extern "C" fn snb_layout_len(l: *const SnbLayout) -> usize {
    l.as_ref().map_or(0, |l| l.0.len())
}

/// Copies interleaved `x0, y0, x1, y1, ...` into `xy`, which holds `capacity` doubles.
///
/// # Safety
/// `l` must be a live layout handle; `xy` must hold `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn snb_layout_coords(l: *const SnbLayout, xy: *mut f64, capacity: usize) -> SnbStatus {
    guard(|| {
        let l = layout_ref(l)?;
        if xy.is_null() {
            return Err(null("coordinate buffer"));
        }
        if capacity < 2 * l.len() {
            return Err((
                SnbStatus::InvalidArgument,
                format!("buffer holds {capacity} values, need {}", 2 * l.len()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(xy, 2 * l.len());
        for (pair, p) in dst.chunks_exact_mut(2).zip(&l.coords) {
            pair[0] = p.x;
            pair[1] = p.y;
        }
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snb_layout_free(l: *mut SnbLayout) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Scores `l` as a drawing of `g`.
///
/// # Safety
/// `g` and `l` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snb_metrics(g: *const SnbGraph, l: *const SnbLayout, out: *mut SnbMetrics) -> SnbStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let l = layout_ref(l)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let r = evaluate(g, l).map_err(fail)?;
        *out = SnbMetrics {
            crossings: r.crossings,
            avg_crossing_angle: r.avg_crossing_angle,
            avg_adjacent_angle: r.avg_adjacent_angle.unwrap_or(f64::NAN),
            edge_length_stdev: r.edge_length_stdev,
            min_pair_distance_scaled: r.min_pair_distance_scaled,
            vertex_distribution: r.vertex_distribution,
            drawing_area: r.drawing_area,
        };
        Ok(())
    })
}
