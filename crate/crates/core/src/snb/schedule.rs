//! The uniform force magnitude schedule.
//!
//! Repulsion between every vertex pair has magnitude `M(t)`; attraction along
//! every edge has magnitude `m·M(t)^a` with `a = 0.9` by default. With
//!
//! ```text
//! M(t) = (2·t·m² / (s·n²·(n−1)))^10
//! ```
//!
//! the system-wide attraction total `2·m²·M^a` equals the repulsion total
//! `n(n−1)·M` exactly at `t = s·n`, where
//!
//! ```text
//! M(t_p) = (2m² / (n(n−1)))^(1/(1−a))
//! ```
//!
//! Everything is evaluated in log space. Magnitudes for dense graphs reach
//! 1e40 and beyond near the end of a run; only the ratio between attraction
//! and repulsion ever reaches the layout update.

use serde::Serialize;

use super::SnbParams;
use crate::error::{Error, Result};
use crate::graph::{betweenness, Graph};

/// Cap on the sync parameter, and the value used when betweenness is flat.
pub const MAX_SYNC_PARAM: f64 = 4.0;
/// Numerator of the betweenness rule `s = min(4, 20 / stdev)`.
pub const SYNC_NUMERATOR: f64 = 20.0;

/// Schedule position at one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleState {
    pub t: usize,
    pub magnitude: f64,
    pub turning_point_magnitude: f64,
}

/// One row of the total-magnitude curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: usize,
    #[serde(rename = "Ma")]
    pub attraction_total: f64,
    #[serde(rename = "Mr")]
    pub repulsion_total: f64,
    pub f: f64,
}

#[derive(Debug, Clone)]
pub struct Schedule {
    ln_m: f64,
    ln_pairs: f64,
    ln_linear_base: f64,
    ln_initial: f64,
    schedule_exponent: f64,
    attraction_exponent: f64,
}

fn check_graph(g: &Graph) -> Result<()> {
    if g.vertex_count() < 2 {
        return Err(Error::DegenerateGraph(format!(
            "{} vertex graph has nothing to lay out",
            g.vertex_count()
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::DegenerateGraph(
            "graph has no edges, the magnitude schedule is undefined".into(),
        ));
    }
    Ok(())
}

impl Schedule {
    pub fn new(g: &Graph, p: &SnbParams) -> Result<Self> {
        check_graph(g)?;
        p.validate()?;
        let n = g.vertex_count() as f64;
        let m = g.edge_count() as f64;
        let ln_m = m.ln();
        let ln_initial = match p.initial_magnitude {
            Some(m0) => m0.ln(),
            None => -ln_m,
        };
        Ok(Schedule {
            ln_m,
            ln_pairs: n.ln() + (n - 1.0).ln(),
            ln_linear_base: 2f64.ln() + 2.0 * ln_m - p.sync_param.ln() - 2.0 * n.ln() - (n - 1.0).ln(),
            ln_initial,
            schedule_exponent: p.schedule_exponent as f64,
            attraction_exponent: p.attraction_exponent,
        })
    }

    /// `ln M(t)`; `t = 0` gives the initial magnitude.
    pub fn ln_magnitude(&self, t: usize) -> f64 {
        if t == 0 {
            self.ln_initial
        } else {
            self.schedule_exponent * (self.ln_linear_base + (t as f64).ln())
        }
    }

    pub fn magnitude(&self, t: usize) -> f64 {
        self.ln_magnitude(t).exp()
    }

    pub fn ln_turning_point(&self) -> f64 {
        (2f64.ln() + 2.0 * self.ln_m - self.ln_pairs) / (1.0 - self.attraction_exponent)
    }

    pub fn turning_point(&self) -> f64 {
        self.ln_turning_point().exp()
    }

    /// Per-edge attraction relative to per-pair repulsion, `m·M^a / M`.
    pub fn attraction_ratio(&self, ln_magnitude: f64) -> f64 {
        (self.ln_m + (self.attraction_exponent - 1.0) * ln_magnitude).exp()
    }

    pub fn state(&self, t: usize) -> ScheduleState {
        ScheduleState {
            t,
            magnitude: self.magnitude(t),
            turning_point_magnitude: self.turning_point(),
        }
    }

    /// Attraction total, repulsion total and their difference at magnitude `exp(ln_m)`.
    pub fn totals(&self, ln_magnitude: f64) -> (f64, f64, f64) {
        let repulsion = (ln_magnitude + self.ln_pairs).exp();
        let attraction =
            (2f64.ln() + self.attraction_exponent * ln_magnitude + 2.0 * self.ln_m).exp();
        // f = Mr·(Ma/Mr − 1) keeps full relative precision near the root.
        let ratio = (2f64.ln() + (self.attraction_exponent - 1.0) * ln_magnitude + 2.0 * self.ln_m
            - self.ln_pairs)
            .exp();
        (attraction, repulsion, repulsion * (ratio - 1.0))
    }

    /// First iteration `t ≥ 1` whose magnitude reaches the turning point.
    pub fn first_burst_iteration(&self) -> usize {
        let per_t = self.ln_turning_point() / self.schedule_exponent - self.ln_linear_base;
        let mut t = per_t.exp().floor().max(1.0) as usize;
        while t > 1 && self.ln_magnitude(t - 1) >= self.ln_turning_point() {
            t -= 1;
        }
        while self.ln_magnitude(t) < self.ln_turning_point() {
            t += 1;
        }
        t
    }
}

/// `M(t)` for `t ≥ 1`.
pub fn magnitude(t: usize, g: &Graph, p: &SnbParams) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "the schedule starts at t = 1; M(0) is the initial magnitude".into(),
        ));
    }
    Ok(Schedule::new(g, p)?.magnitude(t))
}

/// `M(t_p) = (2m²/(n(n−1)))^10`, where attraction and repulsion totals balance.
pub fn turning_point_magnitude(g: &Graph) -> Result<f64> {
    Ok(Schedule::new(g, &SnbParams::default())?.turning_point())
}

/// Per-iteration totals `(t, Ma, Mr, f)` for `t = 1..=t_max`.
pub fn total_magnitude_curve(g: &Graph, p: &SnbParams, t_max: usize) -> Result<Vec<CurvePoint>> {
    if t_max == 0 {
        return Err(Error::InvalidParameter("t_max must be at least 1".into()));
    }
    let sched = Schedule::new(g, p)?;
    Ok((1..=t_max)
        .map(|t| {
            let (attraction_total, repulsion_total, f) = sched.totals(sched.ln_magnitude(t));
            CurvePoint {
                t,
                attraction_total,
                repulsion_total,
                f,
            }
        })
        .collect())
}

/// Sync parameter from the spread of betweenness: `min(4, 20 / stdev)`.
pub fn compute_sync_param(g: &Graph) -> Result<f64> {
    if g.vertex_count() < 2 {
        return Err(Error::DegenerateGraph(
            "sync parameter needs at least two vertices".into(),
        ));
    }
    Ok(sync_param_from_stdev(betweenness(g).stdev))
}

pub fn sync_param_from_stdev(stdev: f64) -> f64 {
    if stdev > 0.0 {
        (SYNC_NUMERATOR / stdev).min(MAX_SYNC_PARAM)
    } else {
        MAX_SYNC_PARAM
    }
}
