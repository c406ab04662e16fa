//! Orientation predicates and nearest-neighbour search.

use crate::layout::Vec2;

/// Tolerance on the orientation determinant for layouts in the unit square.
pub const ORIENT_EPS: f64 = 1e-12;

/// Sign of the turn `a → b → c`: 1 left, −1 right, 0 collinear within `ORIENT_EPS`.
pub fn orientation(a: Vec2, b: Vec2, c: Vec2) -> i8 {
    let det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if det > ORIENT_EPS {
        1
    } else if det < -ORIENT_EPS {
        -1
    } else {
        0
    }
}

// `p` is collinear with `a b`; is it within the segment's box?
fn within(a: Vec2, b: Vec2, p: Vec2) -> bool {
    p.x >= a.x.min(b.x) - ORIENT_EPS
        && p.x <= a.x.max(b.x) + ORIENT_EPS
        && p.y >= a.y.min(b.y) - ORIENT_EPS
        && p.y <= a.y.max(b.y) + ORIENT_EPS
}

/// Closed-segment intersection: proper crossings, an endpoint touching the
/// other segment, and collinear overlaps all count.
pub fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Acute angle in degrees between the lines through two segments, `[0, 90]`.
pub fn line_angle_deg(u: Vec2, v: Vec2) -> f64 {
    let cross = (u.x * v.y - u.y * v.x).abs();
    let dot = (u.x * v.x + u.y * v.y).abs();
    cross.atan2(dot).to_degrees()
}

/// Angle in degrees between two rays from a common origin, `[0, 180]`.
pub fn ray_angle_deg(u: Vec2, v: Vec2) -> f64 {
    let cross = (u.x * v.y - u.y * v.x).abs();
    let dot = u.x * v.x + u.y * v.y;
    cross.atan2(dot).to_degrees()
}

/// Distance from every point to its nearest other point (x-sorted sweep).
///
/// A single point gets `f64::INFINITY`.
pub fn nearest_neighbor_distances(points: &[Vec2]) -> Vec<f64> {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let mut best = vec![f64::INFINITY; n];
    for (rank, &i) in order.iter().enumerate() {
        let p = points[i];
        let mut bi = f64::INFINITY;
        // Walk outwards in x until the x gap alone exceeds the best distance.
        for &j in &order[rank + 1..] {
            if points[j].x - p.x > bi {
                break;
            }
            bi = bi.min(p.dist(points[j]));
        }
        for &j in order[..rank].iter().rev() {
            if p.x - points[j].x > bi {
                break;
            }
            bi = bi.min(p.dist(points[j]));
        }
        best[i] = bi;
    }
    best
}
