//! Output of a single layout run, shared by both algorithms.

use std::time::Duration;

use crate::layout::Layout;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Keep every `k`-th layout (and the first and last) when set.
    pub trajectory_every: Option<usize>,
}

impl RunOptions {
    pub(crate) fn keeps(&self, t: usize, last: usize) -> bool {
        match self.trajectory_every {
            Some(k) if k > 0 => t % k == 0 || t == last,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LayoutRun {
    /// Final positions scaled into `[0, 1]` (larger side exactly 1).
    pub layout: Layout,
    pub iterations: usize,
    /// Wall time of the iteration loop only.
    pub total_time: Duration,
    pub iteration_times: Vec<Duration>,
    /// Raw (unnormalized) snapshots, in iteration order.
    pub trajectory: Vec<Layout>,
}

impl LayoutRun {
    pub fn seconds_per_iteration(&self) -> f64 {
        if self.iterations == 0 {
            0.0
        } else {
            self.total_time.as_secs_f64() / self.iterations as f64
        }
    }

    /// Median of the recorded per-iteration times, in seconds.
    pub fn median_iteration_seconds(&self) -> f64 {
        let mut t: Vec<f64> = self.iteration_times.iter().map(Duration::as_secs_f64).collect();
        if t.is_empty() {
            return 0.0;
        }
        t.sort_by(f64::total_cmp);
        let mid = t.len() / 2;
        if t.len() % 2 == 1 {
            t[mid]
        } else {
            0.5 * (t[mid - 1] + t[mid])
        }
    }
}
