//! Named and random graph generators.

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::Graph;
use crate::error::{Error, Result};

/// The queen graph on a `rows × cols` board: squares are adjacent when a
/// queen can move between them in one step.
pub fn gen_queen(rows: usize, cols: usize) -> Result<Graph> {
    let n = rows
        .checked_mul(cols)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("board {rows}x{cols} is empty or too large")))?;
    let index = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    // Forward rays only (east, south, south-east, south-west) so each pair is seen once.
    for r in 0..rows {
        for c in 0..cols {
            let from = index(r, c);
            for c2 in c + 1..cols {
                edges.push((from, index(r, c2)));
            }
            for r2 in r + 1..rows {
                edges.push((from, index(r2, c)));
                let step = r2 - r;
                if c + step < cols {
                    edges.push((from, index(r2, c + step)));
                }
                if step <= c {
                    edges.push((from, index(r2, c - step)));
                }
            }
        }
    }
    Graph::new(n, edges)
}

/// The Wagner graph: an 8-cycle plus its four long diagonals.
pub fn gen_wagner() -> Graph {
    let edges = (0..8).flat_map(|i| {
        let mut e = vec![(i, (i + 1) % 8)];
        if i < 4 {
            e.push((i, i + 4));
        }
        e
    });
    Graph::new(8, edges).expect("wagner graph is simple")
}

/// The Heawood graph, LCF notation [5,-5]^7.
pub fn gen_heawood() -> Graph {
    lcf(14, &[5, -5]).expect("heawood graph is simple")
}

// Hamiltonian cycle plus chords given by LCF offsets. Each chord is seen from
// both ends, so duplicates are expected and dropped.
fn lcf(n: usize, offsets: &[isize]) -> Result<Graph> {
    let mut pairs = Vec::with_capacity(2 * n);
    for i in 0..n {
        pairs.push((i, (i + 1) % n));
        let off = offsets[i % offsets.len()];
        let j = (i as isize + off).rem_euclid(n as isize) as usize;
        pairs.push((i, j));
    }
    Graph::from_pairs_lossy(n, pairs).map(|(g, _, _)| g)
}

/// Barabási–Albert preferential attachment.
///
/// The seed graph is a clique on `edges_per_step` vertices; every later vertex
/// attaches to `edges_per_step` distinct existing vertices chosen with
/// probability proportional to degree. With `extra_edge_probability > 0` each
/// arriving vertex adds one more preferential edge with that probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFree {
    pub vertex_count: usize,
    pub edges_per_step: usize,
    pub extra_edge_probability: f64,
    pub seed: u64,
}

impl ScaleFree {
    pub fn generate(&self) -> Result<Graph> {
        let p = self.extra_edge_probability;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "extra edge probability {p} outside [0, 1]"
            )));
        }
        self.validate()?;
        let mut rng = SplitMix64::seed_from_u64(self.seed);
        let k = self.edges_per_step;
        let extras: Vec<usize> = (0..self.vertex_count)
            .map(|v| usize::from(v > k && rng.random_bool(p)))
            .collect();
        preferential_attachment(self.vertex_count, k, &extras, &mut rng)
    }

    fn validate(&self) -> Result<()> {
        if self.edges_per_step == 0 || self.vertex_count <= self.edges_per_step {
            return Err(Error::InvalidParameter(format!(
                "scale-free generator needs n > edges_per_step >= 1, got n={} k={}",
                self.vertex_count, self.edges_per_step
            )));
        }
        Ok(())
    }
}

pub fn gen_scale_free(n: usize, edges_per_step: usize, seed: u64) -> Result<Graph> {
    ScaleFree {
        vertex_count: n,
        edges_per_step,
        extra_edge_probability: 0.0,
        seed,
    }
    .generate()
}

/// Preferential attachment with one edge per step plus exactly enough extra
/// preferential edges, spread over random steps, to end with `target_m` edges.
pub fn gen_scale_free_target_m(n: usize, target_m: usize, seed: u64) -> Result<Graph> {
    ScaleFree {
        vertex_count: n,
        edges_per_step: 1,
        extra_edge_probability: 0.0,
        seed,
    }
    .validate()?;
    let max_m = n * (n - 1) / 2;
    if target_m < n - 1 || target_m > max_m {
        return Err(Error::InvalidParameter(format!(
            "target m={target_m} outside [{}, {max_m}] for n={n}",
            n - 1
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    // Vertex v arrives with v existing vertices, one of which its base edge uses.
    let mut extras = vec![0usize; n];
    let mut open: Vec<usize> = (2..n).collect();
    for _ in 0..target_m - (n - 1) {
        let slot = rng.random_range(0..open.len());
        let v = open[slot];
        extras[v] += 1;
        if extras[v] == v - 1 {
            open.swap_remove(slot);
        }
    }
    preferential_attachment(n, 1, &extras, &mut rng)
}

fn preferential_attachment(
    n: usize,
    k: usize,
    extras: &[usize],
    rng: &mut SplitMix64,
) -> Result<Graph> {
    let mut edges = Vec::new();
    // Each edge contributes both endpoints, so uniform sampling is degree-proportional.
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
            ends.extend([u, v]);
        }
    }
    for v in k..n {
        let want = k + extras[v];
        let mut chosen = BTreeSet::new();
        while chosen.len() < want {
            let target = if ends.is_empty() {
                rng.random_range(0..v)
            } else {
                ends[rng.random_range(0..ends.len())]
            };
            chosen.insert(target);
        }
        for t in chosen {
            edges.push((t, v));
            ends.extend([t, v]);
        }
    }
    Graph::new(n, edges)
}

/// A uniformly random recursive spanning tree plus uniformly random extra
/// edges, giving a connected graph with exactly `m` edges.
pub fn gen_random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max_m = n.saturating_mul(n.saturating_sub(1)) / 2;
    if n == 0 || m + 1 < n || m > max_m {
        return Err(Error::InvalidParameter(format!(
            "connected graph with n={n} needs m in [n-1, {max_m}], got {m}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    for v in 1..n {
        set.insert((rng.random_range(0..v), v));
    }
    if 2 * m <= max_m {
        while set.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
    } else {
        let mut free: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !set.contains(e))
            .collect();
        let need = m - set.len();
        for i in 0..need {
            let j = rng.random_range(i..free.len());
            free.swap(i, j);
        }
        set.extend(free.into_iter().take(need));
    }
    Graph::new(n, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn queen_boards_from_the_comparison_table() {
        let g = gen_queen(8, 8).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (64, 728));
        let g = gen_queen(15, 5).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (75, 935));
        let g = gen_queen(1, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert!(gen_queen(0, 3).is_err());
        assert!(gen_queen(usize::MAX, 2).is_err());
    }

    #[test]
    fn wagner_is_cubic() {
        let g = gen_wagner();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!((0..8).all(|v| g.degree(v) == 3));
        assert!(g.check_invariants());
    }

    #[test]
    fn heawood_counts() {
        let g = gen_heawood();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 21));
        assert!((0..14).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn scale_free_tree_case() {
        let g = gen_scale_free(5, 1, 99).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 4));
        assert!(g.is_connected());
    }

    #[test]
    fn scale_free_edge_count_formula() {
        for k in 1..5 {
            let n = 30;
            let g = gen_scale_free(n, k, 3).unwrap();
            assert_eq!(g.edge_count(), k * (n - k) + k * (k - 1) / 2);
            assert!(g.is_connected() && g.check_invariants());
        }
    }

    #[test]
    fn scale_free_is_deterministic() {
        let a = gen_scale_free(60, 2, 17).unwrap();
        let b = gen_scale_free(60, 2, 17).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = gen_scale_free(60, 2, 18).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn scale_free_parameter_checks() {
        assert!(gen_scale_free(3, 3, 0).is_err());
        assert!(gen_scale_free(3, 0, 0).is_err());
        let bad = ScaleFree {
            vertex_count: 10,
            edges_per_step: 1,
            extra_edge_probability: 1.5,
            seed: 0,
        };
        assert!(bad.generate().is_err());
    }

    #[test]
    fn scale_free_extra_probability_adds_edges() {
        let g = ScaleFree {
            vertex_count: 200,
            edges_per_step: 1,
            extra_edge_probability: 0.5,
            seed: 5,
        }
        .generate()
        .unwrap();
        assert!(g.edge_count() > 250 && g.edge_count() < 350, "{}", g.edge_count());
        assert!(g.is_connected());
    }

    #[test]
    fn target_m_is_exact() {
        let g = gen_scale_free_target_m(130, 190, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (130, 190));
        assert!(g.is_connected() && g.check_invariants());
        let full = gen_scale_free_target_m(6, 15, 1).unwrap();
        assert_eq!(full.edge_count(), 15);
        assert!(gen_scale_free_target_m(10, 8, 1).is_err());
        assert!(gen_scale_free_target_m(10, 46, 1).is_err());
    }

    #[test]
    fn random_connected() {
        for (n, m) in [(1, 0), (2, 1), (10, 13), (12, 60), (12, 66)] {
            let g = gen_random_connected(n, m, 4).unwrap();
            assert_eq!(g.edge_count(), m);
            assert!(g.is_connected() && g.check_invariants());
        }
        assert!(gen_random_connected(5, 3, 0).is_err());
        assert!(gen_random_connected(5, 11, 0).is_err());
    }
}
