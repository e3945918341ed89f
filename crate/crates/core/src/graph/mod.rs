//! Simple undirected graphs and the line-graph operator.

mod line;
mod regular;
mod shadow;

pub use line::{iterated_sizes, line_graph, line_graph_limited, GrahamSequence, Limits};
pub use regular::{
    star_lk_product_bound, star_lk_size, star_lk_size_below_power_bound, regular_line_degree,
};
pub use shadow::{shadow_line_iterate, ShadowedGraph, MAX_SHADOW_BASE};
pub(crate) use shadow::full_shadow_counts;

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A simple undirected graph on the vertices `0..vertex_count`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically and
/// free of duplicates. Isolated vertices are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph, normalizing edge orientation and order.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    /// Caller guarantees normalized, sorted, duplicate-free edges.
    pub(crate) fn from_sorted_edges(vertex_count: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| u < v && (v as usize) < vertex_count));
        Graph {
            vertex_count,
            edges,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// The path `P_len` with `len` edges on vertices `0..=len`.
    pub fn path(len: usize) -> Self {
        let edges = (0..len as u32).map(|i| (i, i + 1)).collect();
        Graph::from_sorted_edges(len + 1, edges)
    }

    /// The star `K_{1,d}` with center 0.
    pub fn star(d: usize) -> Self {
        let edges = (1..=d as u32).map(|i| (0, i)).collect();
        Graph::from_sorted_edges(d + 1, edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_sorted_edges(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// Neighbor lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Nonempty, connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.vertex_count >= 1 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    /// `Err(NotATree)` unless the graph is a tree.
    pub fn require_tree(&self) -> Result<()> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }

    /// Renames vertex `v` to `perm[v]`.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..vertex_count`.
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count, "permutation length");
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(!core::mem::replace(&mut seen[p as usize], true), "not a permutation");
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u as usize], perm[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Graph::from_sorted_edges(self.vertex_count, edges)
    }

    /// The subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Graph {
        let mut index = vec![u32::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (index[u as usize], index[v as usize]);
                (a != u32::MAX && b != u32::MAX).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        edges.sort_unstable();
        Graph::from_sorted_edges(vertices.len(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_normalizes_and_validates() {
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange {
                vertex: 2,
                vertex_count: 2
            })
        );
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop { vertex: 1 }));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        );
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let g = Graph::new(5, [(0, 1)]).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(!g.is_tree());
    }

    #[test]
    fn tree_recognition() {
        assert!(Graph::path(4).is_tree());
        assert!(Graph::star(3).is_tree());
        assert!(Graph::empty(1).is_tree());
        assert!(!Graph::empty(0).is_tree());
        assert!(!Graph::complete(3).is_tree());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_tree());
    }

    #[test]
    fn induced_subgraph_relabels_by_position() {
        let g = Graph::path(4);
        let h = g.induced_subgraph(&[3, 1, 2]);
        assert_eq!(h.edges(), &[(0, 2), (1, 2)]);
    }
}
