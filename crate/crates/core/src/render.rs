//! SVG drawings and the CSV files emitted by the command-line tool.
//!
//! Every CSV has a header row, comma separators and '.' decimals.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{normalize_layout, Layout, Vec2};
use crate::snb::CurvePoint;

/// Vertex circle radius as a fraction of the unit viewport.
pub const VERTEX_RADIUS: f64 = 0.006;
pub const EDGE_WIDTH: f64 = 0.002;
/// Margin around the unit square so border vertices are not clipped.
pub const PADDING: f64 = 0.02;

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    pub labels: bool,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Straight-line drawing of `g`, normalized into the unit square.
///
/// Emits exactly one `<line>` per edge and one `<circle>` per vertex.
pub fn render_svg(g: &Graph, layout: &Layout, opts: &SvgOptions) -> Result<String> {
    if layout.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "layout has {} positions but the graph has {} vertices",
            layout.len(),
            g.vertex_count()
        )));
    }
    let l = if layout.len() == 1 {
        Layout::new(vec![Vec2::new(0.5, 0.5)])
    } else {
        normalize_layout(layout)?
    };
    let side = 1.0 + 2.0 * PADDING;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {side} {side}\" width=\"800\" height=\"800\">",
        -PADDING, -PADDING
    );
    let _ = writeln!(s, "<rect x=\"{}\" y=\"{}\" width=\"{side}\" height=\"{side}\" fill=\"white\"/>", -PADDING, -PADDING);
    let _ = writeln!(s, "<g stroke=\"#555\" stroke-width=\"{EDGE_WIDTH}\">");
    for &(u, v) in g.edges() {
        let (a, b) = (l.coords[u], l.coords[v]);
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", a.x, a.y, b.x, b.y);
    }
    s.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for p in &l.coords {
        let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{VERTEX_RADIUS}\"/>", p.x, p.y);
    }
    s.push_str("</g>\n");
    if opts.labels {
        s.push_str("<g font-family=\"sans-serif\" font-size=\"0.018\" fill=\"#222\">\n");
        for (v, p) in l.coords.iter().enumerate() {
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                p.x + 1.5 * VERTEX_RADIUS,
                p.y - 1.5 * VERTEX_RADIUS,
                escape(&g.label(v))
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[derive(Debug, Serialize, Deserialize)]
struct CoordRow {
    vertex: usize,
    x: f64,
    y: f64,
}

#[derive(Debug, Serialize)]
struct TrajectoryRow {
    t: usize,
    vertex: usize,
    x: f64,
    y: f64,
}

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// `vertex,x,y`, one row per vertex in index order.
pub fn write_coords_csv<W: Write>(out: W, layout: &Layout) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (vertex, p) in layout.coords.iter().enumerate() {
        w.serialize(CoordRow { vertex, x: p.x, y: p.y })?;
    }
    flush(w)
}

/// Reads a `vertex,x,y` file. Every index in `0..rows` must appear once.
pub fn read_coords_csv<R: Read>(input: R) -> Result<Layout> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows: Vec<CoordRow> = Vec::new();
    for row in r.deserialize() {
        rows.push(row?);
    }
    let n = rows.len();
    let mut coords = vec![None; n];
    for row in rows {
        let slot = coords.get_mut(row.vertex).ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("vertex {} out of range for {n} rows", row.vertex),
        })?;
        if slot.replace(Vec2::new(row.x, row.y)).is_some() {
            return Err(Error::Parse {
                line: 0,
                message: format!("vertex {} listed twice", row.vertex),
            });
        }
    }
    let coords: Vec<Vec2> = coords.into_iter().map(|c| c.expect("every slot filled")).collect();
    if coords.iter().any(|p| !p.is_finite()) {
        return Err(Error::Numeric("non-finite coordinate in layout file".into()));
    }
    Ok(Layout::new(coords))
}

/// `t,vertex,x,y` for each snapshot.
pub fn write_trajectory_csv<W: Write>(out: W, snapshots: &[Layout]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if snapshots.is_empty() {
        w.write_record(["t", "vertex", "x", "y"])?;
    }
    for l in snapshots {
        for (vertex, p) in l.coords.iter().enumerate() {
            w.serialize(TrajectoryRow {
                t: l.iteration,
                vertex,
                x: p.x,
                y: p.y,
            })?;
        }
    }
    flush(w)
}

/// `t,Ma,Mr,f`.
pub fn write_curve_csv<W: Write>(out: W, curve: &[CurvePoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if curve.is_empty() {
        w.write_record(["t", "Ma", "Mr", "f"])?;
    }
    for p in curve {
        w.serialize(p)?;
    }
    flush(w)
}
