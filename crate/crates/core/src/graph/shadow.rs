use alloc::vec::Vec;

use super::{line_graph_limited, Graph, Limits};
use crate::{Error, Result};

/// Largest base graph whose vertex sets fit in a shadow mask.
pub const MAX_SHADOW_BASE: usize = 64;

/// An iterated line graph `L^level(G)` whose vertices remember the set of
/// base vertices they were built from.
///
/// `shadows[v]` has bit `i` set iff base vertex `i` lies in the shadow of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowedGraph {
    pub base_vertex_count: usize,
    pub level: usize,
    pub graph: Graph,
    pub shadows: Vec<u64>,
}

impl ShadowedGraph {
    /// Level 0: every vertex shadows itself.
    pub fn from_base(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > MAX_SHADOW_BASE {
            return Err(Error::Ceiling {
                what: "shadow base vertex count",
                value: n as u64,
                max: MAX_SHADOW_BASE as u64,
            });
        }
        Ok(ShadowedGraph {
            base_vertex_count: n,
            level: 0,
            graph: g.clone(),
            shadows: (0..n).map(|v| 1u64 << v).collect(),
        })
    }

    /// Applies the line-graph operator once.
    pub fn step(&self, limits: &Limits) -> Result<Self> {
        let graph = line_graph_limited(&self.graph, limits, self.level + 1)?;
        let shadows = self.edge_shadows().collect();
        Ok(ShadowedGraph {
            base_vertex_count: self.base_vertex_count,
            level: self.level + 1,
            graph,
            shadows,
        })
    }

    /// Shadows of the vertices of the next level, in vertex order.
    pub fn edge_shadows(&self) -> impl Iterator<Item = u64> + '_ {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| self.shadows[u as usize] | self.shadows[v as usize])
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.base_vertex_count)
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `L^k(g)` with shadows attached.
pub fn shadow_line_iterate(g: &Graph, k: usize, limits: &Limits) -> Result<ShadowedGraph> {
    let mut sg = ShadowedGraph::from_base(g)?;
    for _ in 0..k {
        sg = sg.step(limits)?;
    }
    Ok(sg)
}

/// For each level `j = 0..=max_level`, the number of vertices of `L^j(g)`
/// whose shadow is all of `V(g)`.
///
/// Level `max_level` itself is never materialized: its shadows are the
/// unions over the edges of the previous level.
pub(crate) fn full_shadow_counts(g: &Graph, max_level: usize, limits: &Limits) -> Result<Vec<u64>> {
    let mut sg = ShadowedGraph::from_base(g)?;
    let full = sg.full_mask();
    let mut counts = Vec::with_capacity(max_level + 1);
    counts.push(sg.shadows.iter().filter(|&&s| s == full).count() as u64);
    for level in 1..=max_level {
        counts.push(sg.edge_shadows().filter(|&s| s == full).count() as u64);
        if level < max_level {
            if sg.graph.edge_count() == 0 {
                counts.resize(max_level + 1, 0);
                break;
            }
            sg = sg.step(limits)?;
        }
    }
    Ok(counts)
}
