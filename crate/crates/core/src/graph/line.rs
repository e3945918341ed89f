use alloc::borrow::Cow;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::Graph;
use crate::{Error, Result};

/// Ceilings on the size of any materialized intermediate graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: u64,
    pub max_edges: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 5_000_000,
            max_edges: 50_000_000,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_vertices: u64::MAX,
            max_edges: u64::MAX,
        }
    }

    fn check(&self, level: usize, vertices: u64, edges: u64) -> Result<()> {
        if vertices > self.max_vertices || edges > self.max_edges {
            Err(Error::ResourceLimit {
                level,
                vertices,
                edges,
            })
        } else {
            Ok(())
        }
    }
}

/// The sizes `|L^0(G)|, |L^1(G)|, ...` of the iterated line graphs of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrahamSequence {
    pub terms: Vec<BigUint>,
}

impl GrahamSequence {
    pub fn depth(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn truncated(&self, depth: usize) -> GrahamSequence {
        GrahamSequence {
            terms: self.terms.iter().take(depth + 1).cloned().collect(),
        }
    }
}

impl From<Vec<u64>> for GrahamSequence {
    fn from(terms: Vec<u64>) -> Self {
        GrahamSequence {
            terms: terms.into_iter().map(BigUint::from).collect(),
        }
    }
}

fn pairs(d: u128) -> u128 {
    d * d.saturating_sub(1) / 2
}

/// Vertex and edge count of `L(g)`.
fn line_graph_size(g: &Graph) -> (u64, u64) {
    let new_edges: u128 = g.degrees().iter().map(|&d| pairs(d as u128)).sum();
    (
        g.edge_count() as u64,
        u64::try_from(new_edges).unwrap_or(u64::MAX),
    )
}

/// The line graph of `g`.
///
/// Vertex `i` of the result is the `i`-th edge of `g` in lexicographic order.
pub fn line_graph(g: &Graph) -> Graph {
    build_line_graph(g)
}

/// [`line_graph`], refusing to build a result larger than `limits`.
///
/// `level` is only used to label the error.
pub fn line_graph_limited(g: &Graph, limits: &Limits, level: usize) -> Result<Graph> {
    let (vertices, edges) = line_graph_size(g);
    limits.check(level, vertices, edges)?;
    Ok(build_line_graph(g))
}

fn build_line_graph(g: &Graph) -> Graph {
    let n = g.vertex_count();
    // CSR incidence lists; edge indices come out ascending per vertex.
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in g.edges() {
        offsets[u as usize + 1] += 1;
        offsets[v as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut incident = vec![0u32; offsets[n]];
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        for x in [u, v] {
            incident[fill[x as usize]] = idx as u32;
            fill[x as usize] += 1;
        }
    }

    let total: usize = (0..n)
        .map(|x| pairs((offsets[x + 1] - offsets[x]) as u128) as usize)
        .sum();
    let mut packed = Vec::with_capacity(total);
    for x in 0..n {
        let list = &incident[offsets[x]..offsets[x + 1]];
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                packed.push(((a as u64) << 32) | b as u64);
            }
        }
    }
    // Two distinct edges of a simple graph share at most one endpoint, so
    // no pair is produced twice.
    packed.sort_unstable();
    let edges = packed
        .into_iter()
        .map(|p| ((p >> 32) as u32, p as u32))
        .collect();
    Graph::from_sorted_edges(g.edge_count(), edges)
}

/// `[|V(L^j)|, |V(L^{j+1})|, |V(L^{j+2})|, |V(L^{j+3})|]` read off `h = L^j`.
///
/// Uses `|V(L(h))| = |E(h)|`, `|E(L(h))| = sum C(deg v, 2)` and the fact that
/// the vertex `uv` of `L(h)` has degree `deg u + deg v - 2`.
fn look_ahead(h: &Graph) -> [u128; 4] {
    let deg = h.degrees();
    let second: u128 = deg.iter().map(|&d| pairs(d as u128)).sum();
    let third: u128 = h
        .edges()
        .iter()
        .map(|&(u, v)| pairs(deg[u as usize] as u128 + deg[v as usize] as u128 - 2))
        .sum();
    [
        h.vertex_count() as u128,
        h.edge_count() as u128,
        second,
        third,
    ]
}

/// `|V(L^j(g))|` for `j = 0..=depth`.
///
/// Only `L^0 .. L^{depth-3}` are materialized; the last three terms are read
/// off degrees. Every materialized graph is checked against `limits`.
pub fn iterated_sizes(g: &Graph, depth: usize, limits: &Limits) -> Result<GrahamSequence> {
    let mut terms: Vec<BigUint> = Vec::with_capacity(depth + 1);
    let mut h = Cow::Borrowed(g);
    let mut level = 0;
    loop {
        for (offset, value) in look_ahead(&h).into_iter().enumerate() {
            if level + offset == terms.len() && terms.len() <= depth {
                terms.push(BigUint::from(value));
            }
        }
        if terms.len() > depth {
            return Ok(GrahamSequence { terms });
        }
        level += 1;
        h = Cow::Owned(line_graph_limited(&h, limits, level)?);
    }
}
