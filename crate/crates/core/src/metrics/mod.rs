//! Aesthetic metrics for straight-line drawings.
//!
//! All functions take the layout as given; [`evaluate`] normalizes first so
//! that scale-dependent values (edge lengths, distances) are comparable
//! between algorithms.

pub mod geometry;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{normalize_layout, Bounds, Layout, Vec2};
use geometry::{line_angle_deg, nearest_neighbor_distances, ray_angle_deg, segments_intersect};

/// Crossing angle reported for drawings without crossings.
pub const PLANAR_CROSSING_ANGLE: f64 = 90.0;
/// Smallest drawing-rectangle side used when all vertices are collinear.
pub const MIN_AREA_SIDE: f64 = 1e-9;

fn check_len(g: &Graph, l: &Layout) -> Result<()> {
    if g.vertex_count() != l.len() {
        return Err(Error::InvalidParameter(format!(
            "layout has {} positions but the graph has {} vertices",
            l.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

fn segment(l: &Layout, (u, v): (usize, usize)) -> (Vec2, Vec2) {
    (l.coords[u], l.coords[v])
}

/// Unordered pairs of edges, without a shared endpoint, whose closed segments
/// meet. Concurrent crossings count pairwise.
pub fn crossing_pairs(g: &Graph, l: &Layout) -> Vec<(usize, usize)> {
    let edges = g.edges();
    // Sweep in x: edge j can only meet edge i if its x-range starts before i's ends.
    let mut spans: Vec<(f64, f64, usize)> = edges
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let (a, b) = segment(l, e);
            (a.x.min(b.x), a.x.max(b.x), k)
        })
        .collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    let mut out = Vec::new();
    for (rank, &(_, hi, i)) in spans.iter().enumerate() {
        let (eu, ev) = edges[i];
        let (a, b) = segment(l, edges[i]);
        for &(lo_j, _, j) in &spans[rank + 1..] {
            if lo_j > hi + geometry::ORIENT_EPS {
                break;
            }
            let (fu, fv) = edges[j];
            if eu == fu || eu == fv || ev == fu || ev == fv {
                continue;
            }
            let (c, d) = segment(l, edges[j]);
            if segments_intersect(a, b, c, d) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn count_crossings(g: &Graph, l: &Layout) -> usize {
    crossing_pairs(g, l).len()
}

/// Mean acute angle over crossing pairs; 90 when the drawing is planar.
pub fn avg_crossing_angle(g: &Graph, l: &Layout) -> f64 {
    let pairs = crossing_pairs(g, l);
    if pairs.is_empty() {
        return PLANAR_CROSSING_ANGLE;
    }
    let edges = g.edges();
    let sum: f64 = pairs
        .iter()
        .map(|&(i, j)| {
            let (a, b) = segment(l, edges[i]);
            let (c, d) = segment(l, edges[j]);
            line_angle_deg(b - a, d - c)
        })
        .sum();
    sum / pairs.len() as f64
}

/// Mean angle at the shared vertex over all pairs of adjacent edges, in
/// `[0, 180]`. `None` when no two edges share a vertex.
pub fn avg_adjacent_angle(g: &Graph, l: &Layout) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in 0..g.vertex_count() {
        let p = l.coords[v];
        let nbrs = g.neighbors(v);
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                sum += ray_angle_deg(l.coords[a] - p, l.coords[b] - p);
                count += 1;
            }
        }
    }
    (count > 0).then(|| sum / count as f64)
}

pub fn edge_lengths(g: &Graph, l: &Layout) -> Vec<f64> {
    g.edges()
        .iter()
        .map(|&e| {
            let (a, b) = segment(l, e);
            a.dist(b)
        })
        .collect()
}

/// Population standard deviation of edge lengths (0 without edges).
pub fn edge_length_stdev(g: &Graph, l: &Layout) -> f64 {
    crate::graph::population_stdev(&edge_lengths(g, l))
}

/// `n ·` the smallest distance between two vertices.
pub fn min_pair_distance_scaled(l: &Layout) -> f64 {
    let min = nearest_neighbor_distances(&l.coords)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min.is_finite() {
        l.len() as f64 * min
    } else {
        0.0
    }
}

/// Per-vertex packing circle: `r = min(d*/2, d**)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexRadius {
    pub r: f64,
    /// Distance to the nearest other vertex.
    pub d_vertex: f64,
    /// Distance to the nearest side of the drawing rectangle.
    pub d_border: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexDistribution {
    /// `D = π Σ r_i² / A`.
    pub value: f64,
    pub area: f64,
    /// The rectangle had a zero side and was widened to `MIN_AREA_SIDE`.
    pub degenerate: bool,
    pub radii: Vec<VertexRadius>,
}

/// Packing ratio of non-overlapping vertex circles in the drawing rectangle.
///
/// The rectangle is the tight bounding box, rescaled so its larger side is 1,
/// so the value does not depend on how the caller normalized.
pub fn vertex_distribution(l: &Layout) -> Result<VertexDistribution> {
    if l.len() < 2 {
        return Err(Error::DegenerateLayout(
            "vertex distribution needs at least two vertices".into(),
        ));
    }
    let unit = normalize_layout(l)?;
    let b = unit
        .bounds()
        .expect("normalized layout is non-empty");
    let mut w = b.width();
    let mut h = b.height();
    let degenerate = w <= 0.0 || h <= 0.0;
    w = w.max(MIN_AREA_SIDE);
    h = h.max(MIN_AREA_SIDE);
    let frame = Bounds {
        min: Vec2::ZERO,
        max: Vec2::new(w, h),
    };
    let nearest = nearest_neighbor_distances(&unit.coords);
    let radii: Vec<VertexRadius> = unit
        .coords
        .iter()
        .zip(nearest)
        .map(|(&p, d_vertex)| {
            let d_border = (p.x - frame.min.x)
                .min(frame.max.x - p.x)
                .min(p.y - frame.min.y)
                .min(frame.max.y - p.y)
                .max(0.0);
            VertexRadius {
                r: (d_vertex / 2.0).min(d_border),
                d_vertex,
                d_border,
            }
        })
        .collect();
    let area = w * h;
    let value = std::f64::consts::PI * radii.iter().map(|r| r.r * r.r).sum::<f64>() / area;
    Ok(VertexDistribution {
        value,
        area,
        degenerate,
        radii,
    })
}

/// One layout's full scorecard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub avg_crossing_angle: f64,
    pub avg_adjacent_angle: Option<f64>,
    pub edge_length_stdev: f64,
    pub min_pair_distance_scaled: f64,
    pub vertex_distribution: f64,
    pub drawing_area: f64,
    pub degenerate_area: bool,
    pub per_vertex: Vec<VertexRadius>,
}

/// Column order of [`MetricsReport::csv_record`].
pub const METRICS_CSV_HEADER: [&str; 10] = [
    "n",
    "m",
    "crossings",
    "avg_crossing_angle",
    "avg_adjacent_angle",
    "edge_length_stdev",
    "min_pair_distance_scaled",
    "vertex_distribution",
    "drawing_area",
    "degenerate_area",
];

impl MetricsReport {
    /// Flat CSV fields in `METRICS_CSV_HEADER` order; per-vertex data is omitted.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            self.crossings.to_string(),
            self.avg_crossing_angle.to_string(),
            self.avg_adjacent_angle.map(|a| a.to_string()).unwrap_or_default(),
            self.edge_length_stdev.to_string(),
            self.min_pair_distance_scaled.to_string(),
            self.vertex_distribution.to_string(),
            self.drawing_area.to_string(),
            self.degenerate_area.to_string(),
        ]
    }
}

/// Normalizes `l` into the unit square and computes every metric.
pub fn evaluate(g: &Graph, l: &Layout) -> Result<MetricsReport> {
    check_len(g, l)?;
    let unit = normalize_layout(l)?;
    let pairs = crossing_pairs(g, &unit);
    let avg_crossing_angle = if pairs.is_empty() {
        PLANAR_CROSSING_ANGLE
    } else {
        avg_crossing_angle(g, &unit)
    };
    let dist = vertex_distribution(&unit)?;
    Ok(MetricsReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        crossings: pairs.len(),
        avg_crossing_angle,
        avg_adjacent_angle: avg_adjacent_angle(g, &unit),
        edge_length_stdev: edge_length_stdev(g, &unit),
        min_pair_distance_scaled: min_pair_distance_scaled(&unit),
        vertex_distribution: dist.value,
        drawing_area: dist.area,
        degenerate_area: dist.degenerate,
        per_vertex: dist.radii,
    })
}
