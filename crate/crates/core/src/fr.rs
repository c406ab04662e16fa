//! Naive all-pairs Fruchterman-Reingold, the comparison baseline.
//!
//! `k = sqrt(area / n)`, attraction `d²/k` along edges, repulsion `k²/d`
//! between every pair, displacement capped by a temperature that decays
//! linearly from `initial_temperature` towards zero. No grid acceleration and
//! no frame clamping.

use std::f64::consts::TAU;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{normalize_layout, Layout, Vec2};
use crate::run::{LayoutRun, RunOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct FrParams {
    /// `None` means `20·n`, the Sync-and-Burst budget.
    pub iterations: Option<usize>,
    pub area_side: f64,
    /// `None` means `0.1 · area_side`.
    pub initial_temperature: Option<f64>,
    pub seed: u64,
}

impl Default for FrParams {
    fn default() -> Self {
        FrParams {
            iterations: None,
            area_side: 1.0,
            initial_temperature: None,
            seed: 0,
        }
    }
}

pub const DEFAULT_ITERATION_MULTIPLIER: usize = 20;

impl FrParams {
    pub fn with_seed(seed: u64) -> Self {
        FrParams {
            seed,
            ..FrParams::default()
        }
    }

    pub fn iterations_for(&self, n: usize) -> usize {
        self.iterations.unwrap_or(DEFAULT_ITERATION_MULTIPLIER * n)
    }

    pub fn start_temperature(&self) -> f64 {
        self.initial_temperature.unwrap_or(0.1 * self.area_side)
    }

    /// Temperature in force during iteration `i` (0-based) of `total`.
    pub fn temperature(&self, i: usize, total: usize) -> f64 {
        self.start_temperature() * (total - i) as f64 / total as f64
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::DegenerateGraph(format!(
                "{n} vertex graph has nothing to lay out"
            )));
        }
        if !(self.area_side > 0.0 && self.area_side.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "area side must be positive, got {}",
                self.area_side
            )));
        }
        let t0 = self.start_temperature();
        if !(t0 > 0.0 && t0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "initial temperature must be positive, got {t0}"
            )));
        }
        if self.iterations == Some(0) {
            return Err(Error::InvalidParameter("iterations must be positive".into()));
        }
        Ok(())
    }
}

// Deterministic jitter direction for coincident pairs.
fn jitter(seed: u64, t: usize, i: usize, j: usize) -> Vec2 {
    let mut z = seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ ((i as u64) << 32 | j as u64);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let angle = (z >> 11) as f64 / (1u64 << 53) as f64 * TAU;
    Vec2::new(angle.cos(), angle.sin())
}

/// Layout state plus the per-iteration update.
#[derive(Debug)]
pub struct FrSimulation<'g> {
    graph: &'g Graph,
    params: FrParams,
    k: f64,
    total: usize,
    layout: Layout,
    disp: Vec<Vec2>,
}

impl<'g> FrSimulation<'g> {
    pub fn new(graph: &'g Graph, params: FrParams) -> Result<Self> {
        let n = graph.vertex_count();
        params.validate(n)?;
        let initial = Layout::random(n, params.seed).transformed(params.area_side, Vec2::ZERO);
        Ok(FrSimulation {
            graph,
            k: (params.area_side * params.area_side / n as f64).sqrt(),
            total: params.iterations_for(n),
            params,
            layout: initial,
            disp: vec![Vec2::ZERO; n],
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn iteration(&self) -> usize {
        self.layout.iteration
    }

    pub fn total_iterations(&self) -> usize {
        self.total
    }

    pub fn is_done(&self) -> bool {
        self.iteration() >= self.total
    }

    pub fn current_temperature(&self) -> f64 {
        self.params.temperature(self.iteration(), self.total)
    }

    /// One iteration; returns the temperature that capped it.
    pub fn step(&mut self) -> Result<f64> {
        let t = self.iteration();
        let temp = self.current_temperature();
        let n = self.layout.len();
        let pos = &mut self.layout.coords;
        let k2 = self.k * self.k;
        self.disp.fill(Vec2::ZERO);

        for i in 0..n {
            let pi = pos[i];
            let mut acc = Vec2::ZERO;
            for j in i + 1..n {
                let mut delta = pi - pos[j];
                let mut d = (delta.x * delta.x + delta.y * delta.y).sqrt();
                if d == 0.0 {
                    delta = jitter(self.params.seed, t, i, j) * 1e-9;
                    d = 1e-9;
                }
                // (delta / d) · k²/d, as in the original formulation.
                let push = delta * ((k2 / d) / d);
                acc += push;
                self.disp[j] -= push;
            }
            self.disp[i] += acc;
        }
        for &(u, v) in self.graph.edges() {
            let mut delta = pos[u] - pos[v];
            let mut d = (delta.x * delta.x + delta.y * delta.y).sqrt();
            if d == 0.0 {
                delta = jitter(self.params.seed, t, u, v) * 1e-9;
                d = 1e-9;
            }
            let pull = delta * (d / self.k);
            self.disp[u] -= pull;
            self.disp[v] += pull;
        }
        for (p, &d) in pos.iter_mut().zip(&self.disp) {
            let len = d.norm();
            if len > 0.0 {
                *p += d * (len.min(temp) / len);
            }
        }
        if pos.iter().any(|p| !p.is_finite()) {
            return Err(Error::Numeric(format!("non-finite position at iteration {}", t + 1)));
        }
        self.layout.iteration += 1;
        Ok(temp)
    }

    pub fn finish(mut self, opts: &RunOptions) -> Result<LayoutRun> {
        let total = self.total;
        let mut trajectory = Vec::new();
        if opts.keeps(0, total) {
            trajectory.push(self.layout.clone());
        }
        let mut iteration_times = Vec::with_capacity(total);
        let start = Instant::now();
        while !self.is_done() {
            let tick = Instant::now();
            self.step()?;
            iteration_times.push(tick.elapsed());
            if opts.keeps(self.iteration(), total) {
                trajectory.push(self.layout.clone());
            }
        }
        let total_time = start.elapsed();
        Ok(LayoutRun {
            layout: normalize_layout(&self.layout)?,
            iterations: iteration_times.len(),
            total_time,
            iteration_times,
            trajectory,
        })
    }
}

pub fn fr_run(g: &Graph, p: &FrParams) -> Result<LayoutRun> {
    fr_run_with(g, p, &RunOptions::default())
}

pub fn fr_run_with(g: &Graph, p: &FrParams, opts: &RunOptions) -> Result<LayoutRun> {
    FrSimulation::new(g, p.clone())?.finish(opts)
}
