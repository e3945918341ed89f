//! Free trees: canonical codes, enumeration by isomorphism class, and
//! connected vertex subsets.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Graph, Result};

/// Largest `n` accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_VERTICES: usize = 16;

/// Largest tree accepted by [`canonical_code`]; depths must fit in a byte.
pub const MAX_CODE_VERTICES: usize = 256;

/// Canonical form of a free tree.
///
/// The bytes are the depths of the vertices in preorder when the tree is
/// rooted at its centroid and children are visited in decreasing order of
/// their own level sequences. A bicentroidal tree takes the smaller of its
/// two rootings. Two trees have equal codes iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    /// Wraps raw level-sequence bytes, checking they describe some rooted
    /// tree. The bytes are not re-canonicalized.
    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        let valid = bytes.first() == Some(&0)
            && bytes.iter().skip(1).all(|&d| d > 0)
            && bytes.windows(2).all(|w| w[1] <= w[0] + 1);
        if valid {
            Ok(TreeCode(bytes))
        } else {
            Err(Error::Constraint("byte string is not a level sequence".into()))
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    /// Rebuilds a tree from the code; vertex `i` is the `i`-th in preorder.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.0.len().saturating_sub(1));
        // stack[d] = most recent vertex at depth d
        let mut stack: Vec<u32> = Vec::new();
        for (i, &depth) in self.0.iter().enumerate() {
            let depth = depth as usize;
            stack.truncate(depth);
            if let Some(&parent) = stack.last() {
                edges.push((parent, i as u32));
            }
            stack.push(i as u32);
        }
        Graph::new(self.0.len(), edges).expect("level sequence yields a tree")
    }
}

impl fmt::Debug for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TreeCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

fn rooted_level_sequence(adj: &[Vec<u32>], v: u32, parent: u32, depth: u8) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = adj[v as usize]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_level_sequence(adj, w, v, depth + 1))
        .collect();
    children.sort_unstable_by(|a, b| b.cmp(a));
    let mut seq = Vec::with_capacity(1 + children.iter().map(Vec::len).sum::<usize>());
    seq.push(depth);
    for c in children {
        seq.extend(c);
    }
    seq
}

fn centroids(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0u32];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in &adj[u as usize] {
            if parent[w as usize] == u32::MAX {
                parent[w as usize] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u as usize] as usize] += size[u as usize];
    }
    (0..n as u32)
        .filter(|&u| {
            let largest_child = adj[u as usize]
                .iter()
                .filter(|&&w| parent[w as usize] == u)
                .map(|&w| size[w as usize])
                .max()
                .unwrap_or(0);
            largest_child.max(n - size[u as usize]) <= n / 2
        })
        .collect()
}

/// The canonical code of a free tree.
pub fn canonical_code(t: &Graph) -> Result<TreeCode> {
    t.require_tree()?;
    if t.vertex_count() > MAX_CODE_VERTICES {
        return Err(Error::Ceiling {
            what: "tree size for canonical code",
            value: t.vertex_count() as u64,
            max: MAX_CODE_VERTICES as u64,
        });
    }
    let adj = t.adjacency();
    let code = centroids(&adj)
        .into_iter()
        .map(|c| rooted_level_sequence(&adj, c, u32::MAX, 0))
        .min()
        .expect("every tree has a centroid");
    Ok(TreeCode(code))
}

/// Canonical codes of all free trees on `n` vertices, ascending.
///
/// Trees on `m + 1` vertices are grown from those on `m` by attaching a leaf
/// in every position and deduplicating by code.
pub fn enumerate_tree_codes(n: usize) -> Result<Vec<TreeCode>> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Ceiling {
            what: "tree enumeration size",
            value: n as u64,
            max: MAX_ENUMERATION_VERTICES as u64,
        });
    }
    let mut layer: BTreeSet<TreeCode> = BTreeSet::new();
    layer.insert(TreeCode(vec![0]));
    for m in 1..n {
        let mut next = BTreeSet::new();
        for code in &layer {
            let g = code.to_graph();
            for v in 0..m as u32 {
                let grown = Graph::new(m + 1, g.edges().iter().copied().chain([(v, m as u32)]))?;
                next.insert(canonical_code(&grown)?);
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().collect())
}

/// One representative per isomorphism class of free trees on `n` vertices,
/// in ascending code order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(enumerate_tree_codes(n)?.into_iter().map(|c| c.to_graph()))
}

/// Calls `visit` once for every vertex set `S` with `1 <= |S| <= max_size`
/// that induces a connected subtree of `t`.
///
/// Sets are generated by the ESU scheme: each set is grown from its smallest
/// vertex, extending only through exclusive neighbors, so no set repeats.
/// The slice passed to `visit` is in insertion order, not sorted.
pub fn for_each_connected_subset<F>(t: &Graph, max_size: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[u32]),
{
    t.require_tree()?;
    if max_size == 0 {
        return Err(Error::Constraint("max_size must be >= 1".into()));
    }
    let adj = t.adjacency();
    let mut walker = Esu {
        adj: &adj,
        max_size,
        // number of chosen vertices in the closed neighborhood of each vertex
        covered: vec![0u32; t.vertex_count()],
        chosen: Vec::with_capacity(max_size),
    };
    for root in 0..t.vertex_count() as u32 {
        let ext: Vec<u32> = adj[root as usize].iter().copied().filter(|&u| u > root).collect();
        walker.push(root);
        walker.extend(ext, root, &mut visit);
        walker.pop();
    }
    Ok(())
}

struct Esu<'a> {
    adj: &'a [Vec<u32>],
    max_size: usize,
    covered: Vec<u32>,
    chosen: Vec<u32>,
}

impl Esu<'_> {
    fn push(&mut self, v: u32) {
        self.chosen.push(v);
        self.covered[v as usize] += 1;
        for &w in &self.adj[v as usize] {
            self.covered[w as usize] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.chosen.pop().expect("nonempty");
        self.covered[v as usize] -= 1;
        for &w in &self.adj[v as usize] {
            self.covered[w as usize] -= 1;
        }
    }

    fn extend<F: FnMut(&[u32])>(&mut self, mut ext: Vec<u32>, root: u32, visit: &mut F) {
        visit(&self.chosen);
        if self.chosen.len() == self.max_size {
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(
                self.adj[w as usize]
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.covered[u as usize] == 0),
            );
            self.push(w);
            self.extend(next, root, visit);
            self.pop();
        }
    }
}

/// All connected vertex subsets of size `1..=max_size`, each sorted, in
/// generation order.
pub fn connected_subsets(t: &Graph, max_size: usize) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for_each_connected_subset(t, max_size, |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        out.push(s);
    })?;
    Ok(out)
}
