//! Undirected simple graphs, their file formats, generators and centrality.

mod centrality;
mod generators;
mod io;

pub use centrality::{betweenness, CentralityVector};
pub(crate) use centrality::population_stdev;
pub use generators::{
    gen_heawood, gen_queen, gen_random_connected, gen_scale_free, gen_scale_free_target_m,
    gen_wagner, ScaleFree,
};
pub use io::{
    parse_edge_list, parse_graph, parse_graphml, write_edge_list, write_graphml, GraphFormat,
    ParseStats, Parsed,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An immutable undirected simple graph on dense vertex indices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Adjacency lists are
/// sorted and symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ends.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count || u == v {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    n: vertex_count,
                });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    n: vertex_count,
                });
            }
        }
        Ok(Self::from_canonical(vertex_count, set.into_iter().collect()))
    }

    /// Builds a graph from arbitrary pairs, silently dropping self-loops and
    /// duplicates. Returns the graph with the number of each that was dropped.
    pub fn from_pairs_lossy(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, usize, usize)> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        let (mut loops, mut dups) = (0, 0);
        for (u, v) in pairs {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    n: vertex_count,
                });
            }
            if u == v {
                loops += 1;
            } else if !set.insert((u.min(v), u.max(v))) {
                dups += 1;
            }
        }
        Ok((Self::from_canonical(vertex_count, set.into_iter().collect()), dups, loops))
    }

    // `edges` must already be sorted, deduplicated, loop-free, with u < v.
    fn from_canonical(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            vertex_count,
            edges,
            adjacency,
            labels: None,
        }
    }

    /// Attaches external vertex ids, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// External id of `v`, or its index when the graph carries no labels.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// True when every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Checks the structural invariants. Used by tests on every constructor.
    pub fn check_invariants(&self) -> bool {
        let mut total = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v == u || v >= self.vertex_count || self.adjacency[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            total += list.len();
        }
        total == 2 * self.edges.len()
            && self.edges.windows(2).all(|w| w[0] < w[1])
            && self.edges.iter().all(|&(u, v)| u < v && self.has_edge(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(0, []), Err(Error::EmptyGraph)));
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn lossy_counts_drops() {
        let (g, dups, loops) = Graph::from_pairs_lossy(2, [(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), dups, loops), (2, 1, 1, 1));
        assert!(g.check_invariants());
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::new(4, [(3, 0), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert!(g.has_edge(3, 0) && !g.has_edge(2, 3));
        assert!(g.check_invariants());
        assert!(g.is_connected());
        assert!(!Graph::new(3, [(0, 1)]).unwrap().is_connected());
    }
}
