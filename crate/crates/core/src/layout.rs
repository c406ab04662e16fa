//! 2D layouts and their normalization.

use std::ops::{Add, AddAssign, Mul, Sub, SubAssign};

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// Force accumulators share the point representation.
pub type ForceVector = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Vec2,
    pub max: Vec2,
}

impl Bounds {
    pub fn of(points: &[Vec2]) -> Option<Bounds> {
        let first = *points.first()?;
        Some(points.iter().fold(
            Bounds {
                min: first,
                max: first,
            },
            |b, p| Bounds {
                min: Vec2::new(b.min.x.min(p.x), b.min.y.min(p.y)),
                max: Vec2::new(b.max.x.max(p.x), b.max.y.max(p.y)),
            },
        ))
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn extent(&self) -> f64 {
        self.width().max(self.height())
    }
}

/// Vertex positions at one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub coords: Vec<Vec2>,
    pub iteration: usize,
}

impl Layout {
    pub fn new(coords: Vec<Vec2>) -> Self {
        Layout {
            coords,
            iteration: 0,
        }
    }

    /// Uniform i.i.d. positions in the unit square, drawn from SplitMix64.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let coords = (0..n)
            .map(|_| {
                let x: f64 = rng.random();
                let y: f64 = rng.random();
                Vec2::new(x, y)
            })
            .collect();
        Layout::new(coords)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|p| p.is_finite())
    }

    pub fn bounds(&self) -> Option<Bounds> {
        Bounds::of(&self.coords)
    }

    /// Applies `p -> p * scale + offset` to every point.
    pub fn transformed(&self, scale: f64, offset: Vec2) -> Layout {
        Layout {
            coords: self.coords.iter().map(|&p| p * scale + offset).collect(),
            iteration: self.iteration,
        }
    }
}

/// Scales and translates so the bounding box starts at the origin and its
/// larger side spans exactly `[0, 1]`. Aspect ratio is preserved.
pub fn normalize_layout(layout: &Layout) -> Result<Layout> {
    let b = layout
        .bounds()
        .ok_or_else(|| Error::DegenerateLayout("layout has no vertices".into()))?;
    let extent = b.extent();
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::DegenerateLayout(
            "all vertices are coincident".into(),
        ));
    }
    let coords = layout
        .coords
        .iter()
        .map(|&p| {
            let q = (p - b.min) * (1.0 / extent);
            // Pin the far side to exactly 1 despite rounding in the division.
            Vec2::new(
                if p.x == b.max.x && b.width() == extent { 1.0 } else { q.x },
                if p.y == b.max.y && b.height() == extent { 1.0 } else { q.y },
            )
        })
        .collect();
    Ok(Layout {
        coords,
        iteration: layout.iteration,
    })
}
