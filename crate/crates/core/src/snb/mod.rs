//! Sync-and-Burst: force-directed layout with distance-independent forces.
//!
//! Every vertex pair repels with the same magnitude `M(t)` and every edge
//! attracts with `m·M(t)^0.9`. Only directions between vertices matter; the
//! new position of a vertex *is* the sum of the forces acting on it. Early on
//! attraction dominates and adjacent vertices collapse together (sync), later
//! repulsion takes over and spreads them out (burst).

mod engine;
mod schedule;

pub use engine::{snb_forces, snb_run, snb_run_with, snb_step, SnbSimulation};
pub use schedule::{
    compute_sync_param, magnitude, sync_param_from_stdev, total_magnitude_curve,
    turning_point_magnitude, CurvePoint, Schedule, ScheduleState, MAX_SYNC_PARAM,
    SYNC_NUMERATOR,
};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct SnbParams {
    /// Sync phase length in units of `n` iterations (`s`).
    pub sync_param: f64,
    /// Total iterations are `total_multiplier · n`; the burst length is the rest.
    pub total_multiplier: u32,
    pub attraction_exponent: f64,
    pub schedule_exponent: u32,
    pub seed: u64,
    /// `M(0)`; `None` means `1/m`.
    pub initial_magnitude: Option<f64>,
}

impl Default for SnbParams {
    fn default() -> Self {
        SnbParams {
            sync_param: MAX_SYNC_PARAM,
            total_multiplier: 20,
            attraction_exponent: 0.9,
            schedule_exponent: 10,
            seed: 0,
            initial_magnitude: None,
        }
    }
}

impl SnbParams {
    /// Defaults with the sync parameter derived from betweenness.
    pub fn for_graph(g: &Graph, seed: u64) -> Result<Self> {
        Ok(SnbParams {
            sync_param: compute_sync_param(g)?,
            seed,
            ..SnbParams::default()
        })
    }

    /// `b = total_multiplier − s`.
    pub fn burst_param(&self) -> f64 {
        f64::from(self.total_multiplier) - self.sync_param
    }

    pub fn total_iterations(&self, n: usize) -> usize {
        self.total_multiplier as usize * n
    }

    /// `⌈s·n⌉`.
    pub fn sync_iterations(&self, n: usize) -> usize {
        (self.sync_param * n as f64).ceil() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.sync_param > 0.0 && self.sync_param.is_finite()) {
            return bad(format!("sync parameter must be positive, got {}", self.sync_param));
        }
        if self.total_multiplier == 0 {
            return bad("total multiplier must be positive".into());
        }
        if self.sync_param >= self.burst_param() {
            return bad(format!(
                "sync parameter {} must be below the burst length {}",
                self.sync_param,
                self.burst_param()
            ));
        }
        if !(self.attraction_exponent < 1.0 && self.attraction_exponent.is_finite()) {
            return bad(format!(
                "attraction exponent must be finite and below 1, got {}",
                self.attraction_exponent
            ));
        }
        if self.schedule_exponent == 0 {
            return bad("schedule exponent must be positive".into());
        }
        if let Some(m0) = self.initial_magnitude {
            if !(m0 > 0.0 && m0.is_finite()) {
                return bad(format!("initial magnitude must be positive, got {m0}"));
            }
        }
        Ok(())
    }
}
