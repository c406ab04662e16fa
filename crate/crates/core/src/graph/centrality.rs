//! Exact shortest-path betweenness (Brandes accumulation).

use std::collections::VecDeque;

use super::Graph;

/// Per-vertex betweenness with its population standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub values: Vec<f64>,
    pub stdev: f64,
}

impl CentralityVector {
    pub fn from_values(values: Vec<f64>) -> Self {
        let stdev = population_stdev(&values);
        CentralityVector { values, stdev }
    }
}

pub(crate) fn population_stdev(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Unnormalized betweenness; each unordered vertex pair contributes once.
///
/// Disconnected graphs are fine: pairs in different components have no
/// shortest path and contribute nothing.
pub fn betweenness(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let mut score = vec![0.0f64; n];

    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        // Predecessors of w are its neighbours one level closer to s.
        for &w in order.iter().rev() {
            for &v in g.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    for x in &mut score {
        *x /= 2.0;
    }
    CentralityVector::from_values(score)
}
