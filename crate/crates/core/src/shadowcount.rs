//! Weights of trees and the shadow decomposition of `|L^k(T)|`.
//!
//! The weight of a tree `H` at level `k` is the number of vertices of
//! `L^k(H)` whose shadow is all of `V(H)`. Every vertex of `L^k(T)` has a
//! connected shadow `S` with at most `k + 1` vertices, and it is also a
//! vertex of `L^k(T[S])` with full shadow there. Summing weights over the
//! connected vertex sets of `T` therefore recovers `|L^k(T)|`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::graph::full_shadow_counts;
use crate::treegen::{canonical_code, enumerate_tree_codes, for_each_connected_subset};
use crate::{Error, Graph, Limits, Result, TreeCode};

pub const WT_TABLE_VERSION: u32 = 1;

/// Weights keyed by tree isomorphism class and level.
///
/// An entry `(code, k)` is only stored when the tree has at most `k + 1`
/// vertices; larger trees have weight zero at level `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WtTable {
    version: u32,
    max_vertices: usize,
    entries: BTreeMap<(TreeCode, u32), BigUint>,
}

impl WtTable {
    pub fn new(max_vertices: usize) -> Self {
        WtTable {
            version: WT_TABLE_VERSION,
            max_vertices,
            entries: BTreeMap::new(),
        }
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    /// Highest level with any entry.
    pub fn max_level(&self) -> Option<u32> {
        self.entries.keys().map(|&(_, k)| k).max()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, code: &TreeCode, level: u32) -> Option<&BigUint> {
        self.entries.get(&(code.clone(), level))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TreeCode, u32, &BigUint)> {
        self.entries.iter().map(|((c, k), w)| (c, *k, w))
    }

    pub fn insert(&mut self, code: TreeCode, level: u32, weight: BigUint) -> Result<()> {
        let n = code.vertex_count();
        if n > level as usize + 1 {
            return Err(Error::Constraint(format!(
                "tree on {n} vertices stored at level {level}"
            )));
        }
        if n > self.max_vertices {
            return Err(Error::Constraint(format!(
                "tree on {n} vertices exceeds table max_vertices {}",
                self.max_vertices
            )));
        }
        self.entries.insert((code, level), weight);
        Ok(())
    }

    /// Stores `weights[j]` for every level `j` at which the tree is allowed.
    pub fn insert_weights(&mut self, code: &TreeCode, weights: &[BigUint]) -> Result<()> {
        let first = code.vertex_count() - 1;
        for (level, w) in weights.iter().enumerate().skip(first) {
            self.insert(code.clone(), level as u32, w.clone())?;
        }
        Ok(())
    }

    /// Whether every tree with at most `vertices` vertices has a stored
    /// weight at `level` (as far as the table's own bookkeeping can tell).
    pub fn covers(&self, level: u32, vertices: usize) -> bool {
        let needed = vertices.min(level as usize + 1);
        self.max_vertices >= needed && self.max_level().is_some_and(|m| m >= level)
    }
}

/// Lookup counters for [`lk_size_via_shadows_counted`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LookupStats {
    pub subsets: u64,
    pub table_hits: u64,
}

/// Weights of a tree at every level `0..=max_level`.
pub fn tree_weights(t: &Graph, max_level: usize, limits: &Limits) -> Result<Vec<BigUint>> {
    t.require_tree()?;
    if t.vertex_count() > max_level + 1 {
        return Ok(vec![BigUint::zero(); max_level + 1]);
    }
    Ok(full_shadow_counts(t, max_level, limits)?
        .into_iter()
        .map(BigUint::from)
        .collect())
}

/// `|{v in L^k(t) : Sh(v) = V(t)}|`; zero whenever `|t| > k + 1`.
pub fn weight(t: &Graph, k: usize, limits: &Limits) -> Result<BigUint> {
    let mut w = tree_weights(t, k, limits)?;
    Ok(w.pop().expect("max_level + 1 entries"))
}

/// Codes of the trees a table for `(k, max_vertices)` has to cover, smallest
/// trees first. `max_vertices` is clamped to `k + 1`.
pub fn table_trees(k: usize, max_vertices: usize) -> Result<Vec<TreeCode>> {
    let mut codes = Vec::new();
    for n in 1..=clamp_table_vertices(k, max_vertices) {
        codes.extend(enumerate_tree_codes(n)?);
    }
    Ok(codes)
}

/// Trees with more than `k + 1` vertices have weight zero at every level up
/// to `k`, so larger tables carry no information.
pub fn clamp_table_vertices(k: usize, max_vertices: usize) -> usize {
    max_vertices.min(k + 1)
}

/// Weights of every tree on at most `max_vertices` vertices at every level
/// up to `k`.
pub fn build_wt_table(k: usize, max_vertices: usize, limits: &Limits) -> Result<WtTable> {
    let mut table = WtTable::new(clamp_table_vertices(k, max_vertices));
    for code in table_trees(k, max_vertices)? {
        let weights = tree_weights(&code.to_graph(), k, limits)?;
        table.insert_weights(&code, &weights)?;
    }
    Ok(table)
}

/// `|V(L^k(t))|` as the sum of table weights over connected subsets of `t`.
pub fn lk_size_via_shadows(t: &Graph, k: usize, table: &WtTable) -> Result<BigUint> {
    lk_size_via_shadows_counted(t, k, table, &mut LookupStats::default())
}

pub fn lk_size_via_shadows_counted(
    t: &Graph,
    k: usize,
    table: &WtTable,
    stats: &mut LookupStats,
) -> Result<BigUint> {
    t.require_tree()?;
    let max_size = (k + 1).min(t.vertex_count());
    if table.max_vertices() < max_size {
        return Err(Error::Constraint(format!(
            "table holds trees up to {} vertices, level {k} needs {max_size}",
            table.max_vertices()
        )));
    }
    let mut total = BigUint::zero();
    let mut failure = None;
    for_each_connected_subset(t, max_size, |subset| {
        if failure.is_some() {
            return;
        }
        stats.subsets += 1;
        let code = match canonical_code(&t.induced_subgraph(subset)) {
            Ok(c) => c,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        match table.get(&code, k as u32) {
            Some(w) => {
                stats.table_hits += 1;
                total += w;
            }
            None => {
                failure = Some(Error::MissingWeight {
                    code: code.as_bytes().to_vec(),
                    level: k as u32,
                })
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn code(g: &Graph) -> TreeCode {
        canonical_code(g).unwrap()
    }

    fn nonzero_at(table: &WtTable, level: u32) -> Vec<(TreeCode, BigUint)> {
        table
            .iter()
            .filter(|(_, k, w)| *k == level && !w.is_zero())
            .map(|(c, _, w)| (c.clone(), w.clone()))
            .collect()
    }

    #[test]
    fn weight_examples() {
        let lim = Limits::default();
        for k in 1..5 {
            assert_eq!(weight(&Graph::path(k), k, &lim).unwrap(), n(1));
        }
        assert_eq!(weight(&Graph::path(1), 2, &lim).unwrap(), n(0));
        assert_eq!(weight(&Graph::star(3), 3, &lim).unwrap(), n(3));
        assert_eq!(weight(&Graph::empty(1), 0, &lim).unwrap(), n(1));
        assert_eq!(weight(&Graph::empty(1), 3, &lim).unwrap(), n(0));
        // more than k + 2 vertices is allowed and is zero
        assert_eq!(weight(&Graph::path(6), 2, &lim).unwrap(), n(0));
    }

    #[test]
    fn table_k2() {
        let t = build_wt_table(2, 3, &Limits::default()).unwrap();
        let mut nonzero = Vec::new();
        for level in 0..=2 {
            nonzero.extend(nonzero_at(&t, level).into_iter().map(|(c, w)| (c, level, w)));
        }
        assert_eq!(
            nonzero,
            vec![
                (code(&Graph::empty(1)), 0, n(1)),
                (code(&Graph::path(1)), 1, n(1)),
                (code(&Graph::path(2)), 2, n(1)),
            ]
        );
    }

    #[test]
    fn table_k3_level3() {
        let t = build_wt_table(3, 4, &Limits::default()).unwrap();
        let mut got = nonzero_at(&t, 3);
        got.sort();
        let mut want = vec![(code(&Graph::path(3)), n(1)), (code(&Graph::star(3)), n(3))];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn table_k0() {
        let t = build_wt_table(0, 1, &Limits::default()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&code(&Graph::empty(1)), 0), Some(&n(1)));
    }

    #[test]
    fn table_clamps_vertices() {
        let t = build_wt_table(1, 9, &Limits::default()).unwrap();
        assert_eq!(t.max_vertices(), 2);
    }

    #[test]
    fn entries_respect_size_bound() {
        let mut t = WtTable::new(4);
        assert!(t.insert(code(&Graph::path(3)), 2, n(0)).is_err());
        assert!(t.insert(code(&Graph::path(3)), 3, n(1)).is_ok());
    }

    #[test]
    fn shadow_sizes_match_examples() {
        let table = build_wt_table(3, 4, &Limits::default()).unwrap();
        assert_eq!(lk_size_via_shadows(&Graph::path(2), 2, &table).unwrap(), n(1));
        assert_eq!(lk_size_via_shadows(&Graph::star(3), 3, &table).unwrap(), n(3));
        let t = Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(lk_size_via_shadows(&t, 1, &table).unwrap(), n(5));
    }

    #[test]
    fn missing_entry_is_reported() {
        let table = build_wt_table(2, 3, &Limits::default()).unwrap();
        let err = lk_size_via_shadows(&Graph::star(3), 3, &table).unwrap_err();
        assert!(matches!(err, Error::Constraint(_)));
        let mut sparse = WtTable::new(4);
        sparse.insert(code(&Graph::path(3)), 3, n(1)).unwrap();
        let err = lk_size_via_shadows(&Graph::star(3), 3, &sparse).unwrap_err();
        assert!(matches!(err, Error::MissingWeight { level: 3, .. }));
    }
}
