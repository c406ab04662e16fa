use std::f64::consts::TAU;
use std::time::Instant;

use super::{Schedule, SnbParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{normalize_layout, Bounds, ForceVector, Layout, Vec2};
use crate::run::{LayoutRun, RunOptions};

/// Resolution of the grid every input layout is snapped to before angles are
/// taken. Snapping to the bounding box makes a step an exact function of the
/// input's shape: any translation or positive scaling of `prev` yields the
/// same bits. Integer grid coordinates also make the differences exact.
const LATTICE: f64 = (1u64 << 28) as f64;

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stand-in direction from `i` to `j` (`i < j`) when the two coincide.
fn tie_direction(seed: u64, t: usize, i: usize, j: usize) -> Vec2 {
    let h = mix64(mix64(mix64(seed) ^ t as u64) ^ ((i as u64) << 32 | j as u64));
    let angle = (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * TAU;
    Vec2::new(angle.cos(), angle.sin())
}

fn snap(coords: &[Vec2], out: &mut Vec<Vec2>) {
    out.clear();
    let Some(b) = Bounds::of(coords) else { return };
    let extent = b.extent();
    if !(extent > 0.0) || !extent.is_finite() {
        out.resize(coords.len(), Vec2::ZERO);
        return;
    }
    let scale = LATTICE / extent;
    out.extend(coords.iter().map(|&p| {
        let d = (p - b.min) * scale;
        Vec2::new(d.x.round(), d.y.round())
    }));
}

#[derive(Debug, Default)]
struct Scratch {
    grid: Vec<Vec2>,
    repulsion: Vec<Vec2>,
    attraction: Vec<Vec2>,
}

impl Scratch {
    /// Sums of unit vectors toward every other vertex and toward neighbours.
    fn accumulate(&mut self, g: &Graph, prev: &[Vec2], seed: u64, t: usize) {
        snap(prev, &mut self.grid);
        let n = prev.len();
        self.repulsion.clear();
        self.repulsion.resize(n, Vec2::ZERO);
        self.attraction.clear();
        self.attraction.resize(n, Vec2::ZERO);

        let q = &self.grid;
        // Each unordered pair once; the reverse direction is the negation.
        for i in 0..n {
            let pi = q[i];
            let nbrs = g.neighbors(i);
            let mut next = nbrs.partition_point(|&v| v <= i);
            let mut rep = Vec2::ZERO;
            let mut att = Vec2::ZERO;
            for j in i + 1..n {
                let d = q[j] - pi;
                let len2 = d.x * d.x + d.y * d.y;
                let u = if len2 > 0.0 {
                    let inv = 1.0 / len2.sqrt();
                    Vec2::new(d.x * inv, d.y * inv)
                } else {
                    tie_direction(seed, t, i, j)
                };
                rep += u;
                self.repulsion[j] -= u;
                if next < nbrs.len() && nbrs[next] == j {
                    att += u;
                    self.attraction[j] -= u;
                    next += 1;
                }
            }
            self.repulsion[i] += rep;
            self.attraction[i] += att;
        }
    }

    /// Forces in units of the repulsion magnitude.
    fn forces(&self, ratio: f64) -> Vec<ForceVector> {
        self.attraction
            .iter()
            .zip(&self.repulsion)
            .map(|(&a, &r)| a * ratio - r)
            .collect()
    }
}

/// Shifts to zero centroid and scales the larger bounding-box side to 1.
fn recenter(mut coords: Vec<Vec2>) -> Vec<Vec2> {
    let n = coords.len() as f64;
    let sum = coords.iter().fold(Vec2::ZERO, |s, &p| s + p);
    let c = sum * (1.0 / n);
    for p in &mut coords {
        *p -= c;
    }
    if let Some(extent) = Bounds::of(&coords).map(|b| b.extent()) {
        if extent > 0.0 {
            let k = 1.0 / extent;
            for p in &mut coords {
                *p = *p * k;
            }
        }
    }
    coords
}

fn check_prev(g: &Graph, prev: &Layout) -> Result<()> {
    if prev.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "layout has {} positions for {} vertices",
            prev.len(),
            g.vertex_count()
        )));
    }
    if !prev.is_finite() {
        return Err(Error::Numeric("input layout has non-finite coordinates".into()));
    }
    Ok(())
}

fn step_with_ratio(
    g: &Graph,
    prev: &Layout,
    ratio: f64,
    seed: u64,
    scratch: &mut Scratch,
) -> Result<Layout> {
    let t = prev.iteration + 1;
    scratch.accumulate(g, &prev.coords, seed, t);
    let forces = scratch.forces(ratio);
    if forces.iter().any(|f| !f.is_finite()) {
        return Err(Error::Numeric(format!("non-finite force at iteration {t}")));
    }
    let coords = recenter(forces);
    if coords.iter().any(|p| !p.is_finite()) {
        return Err(Error::Numeric(format!("non-finite position at iteration {t}")));
    }
    Ok(Layout {
        coords,
        iteration: t,
    })
}

fn ratio_for(schedule: &Schedule, magnitude_prev: f64) -> Result<f64> {
    if !(magnitude_prev > 0.0 && magnitude_prev.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "magnitude must be positive and finite, got {magnitude_prev}"
        )));
    }
    Ok(schedule.attraction_ratio(magnitude_prev.ln()))
}

/// Net force on every vertex divided by the repulsion magnitude:
/// `m·M^(a−1) · Σ_{j~i} u_ij − Σ_{j≠i} u_ij`, with `u_ij` the unit vector from
/// `i` to `j` in `prev`.
pub fn snb_forces(
    g: &Graph,
    prev: &Layout,
    magnitude_prev: f64,
    p: &SnbParams,
) -> Result<Vec<ForceVector>> {
    let schedule = Schedule::new(g, p)?;
    check_prev(g, prev)?;
    let ratio = ratio_for(&schedule, magnitude_prev)?;
    let mut scratch = Scratch::default();
    scratch.accumulate(g, &prev.coords, p.seed, prev.iteration + 1);
    Ok(scratch.forces(ratio))
}

/// One iteration: the new positions are the force sums under the previous
/// magnitude, shifted to zero centroid and scaled to unit extent.
pub fn snb_step(g: &Graph, prev: &Layout, magnitude_prev: f64, p: &SnbParams) -> Result<Layout> {
    let schedule = Schedule::new(g, p)?;
    check_prev(g, prev)?;
    let ratio = ratio_for(&schedule, magnitude_prev)?;
    step_with_ratio(g, prev, ratio, p.seed, &mut Scratch::default())
}

/// A Sync-and-Burst run that can be advanced one iteration at a time.
#[derive(Debug)]
pub struct SnbSimulation<'g> {
    graph: &'g Graph,
    params: SnbParams,
    schedule: Schedule,
    layout: Layout,
    scratch: Scratch,
}

impl<'g> SnbSimulation<'g> {
    /// Starts from a uniform random layout in the unit square seeded by `p.seed`.
    pub fn new(graph: &'g Graph, params: SnbParams) -> Result<Self> {
        let initial = Layout::random(graph.vertex_count(), params.seed);
        Self::with_layout(graph, params, initial)
    }

    pub fn with_layout(graph: &'g Graph, params: SnbParams, initial: Layout) -> Result<Self> {
        let schedule = Schedule::new(graph, &params)?;
        check_prev(graph, &initial)?;
        Ok(SnbSimulation {
            graph,
            params,
            schedule,
            layout: initial,
            scratch: Scratch::default(),
        })
    }

    pub fn iteration(&self) -> usize {
        self.layout.iteration
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn params(&self) -> &SnbParams {
        &self.params
    }

    pub fn total_iterations(&self) -> usize {
        self.params.total_iterations(self.graph.vertex_count())
    }

    /// `⌈s·n⌉`, the last iteration of the sync phase.
    pub fn sync_iterations(&self) -> usize {
        self.params.sync_iterations(self.graph.vertex_count())
    }

    pub fn is_done(&self) -> bool {
        self.iteration() >= self.total_iterations()
    }

    /// Advances to iteration `t + 1` using `M(t)`.
    pub fn step(&mut self) -> Result<()> {
        let ln_prev = self.schedule.ln_magnitude(self.layout.iteration);
        let ratio = self.schedule.attraction_ratio(ln_prev);
        self.layout = step_with_ratio(
            self.graph,
            &self.layout,
            ratio,
            self.params.seed,
            &mut self.scratch,
        )?;
        Ok(())
    }

    pub fn advance_to(&mut self, t: usize) -> Result<()> {
        while self.iteration() < t {
            self.step()?;
        }
        Ok(())
    }

    /// Runs the remaining iterations, timing only the loop.
    pub fn finish(mut self, opts: &RunOptions) -> Result<LayoutRun> {
        let total = self.total_iterations();
        let mut trajectory = Vec::new();
        if opts.keeps(self.iteration(), total) {
            trajectory.push(self.layout.clone());
        }
        let mut iteration_times = Vec::with_capacity(total.saturating_sub(self.iteration()));
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

/// Full run: `total_multiplier · n` iterations from a seeded random layout.
pub fn snb_run(g: &Graph, p: &SnbParams) -> Result<LayoutRun> {
    snb_run_with(g, p, &RunOptions::default())
}

pub fn snb_run_with(g: &Graph, p: &SnbParams, opts: &RunOptions) -> Result<LayoutRun> {
    SnbSimulation::new(g, p.clone())?.finish(opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_queen, gen_random_connected, gen_wagner};
    use proptest::prelude::*;

    fn params(seed: u64) -> SnbParams {
        SnbParams {
            seed,
            ..SnbParams::default()
        }
    }

    #[test]
    fn three_vertex_golden_forces() {
        // Edge 0-1 only, so m = 1; M = 2 gives ratio 2^-0.1.
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let prev = Layout::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]);
        let f = snb_forces(&g, &prev, 2.0, &params(0)).unwrap();
        let w = 0.933_032_991_536_807_4;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [
            Vec2::new(w - 1.0, -1.0),
            Vec2::new(-w + 1.0 + h, -h),
            Vec2::new(-h, 1.0 + h),
        ];
        for (got, want) in f.iter().zip(&expected) {
            assert!(got.dist(*want) < 1e-12, "{got:?} vs {want:?}");
        }

        let next = snb_step(&g, &prev, 2.0, &params(0)).unwrap();
        assert_eq!(next.iteration, 1);
        let c = expected.iter().fold(Vec2::ZERO, |s, &p| s + p) * (1.0 / 3.0);
        let shifted: Vec<Vec2> = expected.iter().map(|&p| p - c).collect();
        let b = Bounds::of(&shifted).unwrap();
        for (got, want) in next.coords.iter().zip(&shifted) {
            assert!(got.dist(*want * (1.0 / b.extent())) < 1e-12);
        }
    }

    #[test]
    fn two_vertices_reflect_through_centroid() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let theta = 0.7f64;
        for dist in [1e-3, 1.0, 250.0] {
            let prev = Layout::new(vec![
                Vec2::new(3.0, -1.0),
                Vec2::new(3.0 + dist * theta.cos(), -1.0 + dist * theta.sin()),
            ]);
            let next = snb_step(&g, &prev, 0.5, &params(0)).unwrap();
            let (a, b) = (next.coords[0], next.coords[1]);
            assert!((a + b).norm() < 1e-12);
            let dir = b - a;
            // Snapping to the 2^-28 grid perturbs the angle slightly.
            assert!((dir.x * theta.sin() - dir.y * theta.cos()).abs() < 1e-7);
        }
    }

    #[test]
    fn coincident_vertices_get_a_deterministic_direction() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let prev = Layout::new(vec![Vec2::new(0.5, 0.5), Vec2::new(0.5, 0.5), Vec2::new(0.0, 1.0)]);
        let a = snb_step(&g, &prev, 1.0, &params(3)).unwrap();
        let b = snb_step(&g, &prev, 1.0, &params(3)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_finite());
        let all_same = Layout::new(vec![Vec2::new(0.2, 0.2); 3]);
        assert!(snb_step(&g, &all_same, 1.0, &params(3)).unwrap().is_finite());
    }

    #[test]
    fn step_input_checks() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let short = Layout::new(vec![Vec2::ZERO; 2]);
        assert!(snb_step(&g, &short, 1.0, &params(0)).is_err());
        let nan = Layout::new(vec![Vec2::ZERO, Vec2::new(f64::NAN, 0.0), Vec2::ZERO]);
        assert!(matches!(snb_step(&g, &nan, 1.0, &params(0)), Err(Error::Numeric(_))));
        let ok = Layout::random(3, 1);
        assert!(snb_step(&g, &ok, 0.0, &params(0)).is_err());
    }

    #[test]
    fn queen_runs_twenty_n_iterations() {
        let g = gen_queen(8, 8).unwrap();
        let p = SnbParams::for_graph(&g, 1).unwrap();
        let run = snb_run(&g, &p).unwrap();
        assert_eq!(run.iterations, 1280);
        assert_eq!(run.iteration_times.len(), 1280);
        assert_eq!(run.layout.iteration, 1280);
        assert!(run.total_time >= run.iteration_times.iter().sum());
    }

    #[test]
    fn runs_are_deterministic() {
        let g = gen_wagner();
        let a = snb_run(&g, &params(11)).unwrap();
        let b = snb_run(&g, &params(11)).unwrap();
        assert_eq!(a.layout, b.layout);
        let c = snb_run(&g, &params(12)).unwrap();
        assert_ne!(a.layout, c.layout);
    }

    #[test]
    fn trajectory_sampling() {
        let g = gen_wagner();
        let opts = RunOptions {
            trajectory_every: Some(50),
        };
        let run = snb_run_with(&g, &params(0), &opts).unwrap();
        let ts: Vec<usize> = run.trajectory.iter().map(|l| l.iteration).collect();
        assert_eq!(ts, vec![0, 50, 100, 150, 160]);
    }

    #[test]
    fn disconnected_graphs_are_fine() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let run = snb_run(&g, &params(2)).unwrap();
        assert!(run.layout.is_finite());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn similarity_invariance(seed in any::<u64>(), n in 3usize..25, scale in 0.25f64..4.0,
                                 dx in -10f64..10.0, dy in -10f64..10.0, mag in 1e-3f64..1e3) {
            let m = (2 * n).min(n * (n - 1) / 2);
            let g = gen_random_connected(n, m, seed).unwrap();
            let prev = Layout::random(n, seed ^ 1);
            let moved = prev.transformed(scale, Vec2::new(dx, dy));
            let a = snb_step(&g, &prev, mag, &params(seed)).unwrap();
            let b = snb_step(&g, &moved, mag, &params(seed)).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn runs_stay_finite(seed in any::<u64>(), n in 2usize..60, extra in 0usize..80) {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            let g = gen_random_connected(n, m, seed).unwrap();
            let p = SnbParams::for_graph(&g, seed).unwrap();
            let mut sim = SnbSimulation::new(&g, p).unwrap();
            while !sim.is_done() {
                sim.step().unwrap();
                prop_assert!(sim.layout().is_finite());
            }
        }
    }
}
