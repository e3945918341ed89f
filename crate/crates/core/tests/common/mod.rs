#![allow(dead_code)]

use grahamlab_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Decodes a Prüfer sequence over `0..n` into a labeled tree.
pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    assert_eq!(seq.len() + 2, n.max(2));
    if n == 1 {
        return Graph::empty(1);
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf as u32, x as u32));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0] as u32, rest[1] as u32));
    Graph::new(n, edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    prufer_tree(n, &seq)
}

pub fn shuffled<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut perm: Vec<u32> = (0..g.vertex_count() as u32).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Backtracking isomorphism test with degree pruning.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let adj_b = {
        let mut m = vec![vec![false; n]; n];
        for &(u, v) in b.edges() {
            m[u as usize][v as usize] = true;
            m[v as usize][u as usize] = true;
        }
        m
    };
    let adj_a = a.adjacency();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        adj_a: &[Vec<u32>],
        adj_b: &[Vec<bool>],
        da: &[u32],
        db: &[u32],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == map.len() {
            return true;
        }
        for w in 0..map.len() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            let consistent = adj_a[v]
                .iter()
                .filter(|&&u| (u as usize) < v)
                .all(|&u| adj_b[map[u as usize]][w]);
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(v + 1, adj_a, adj_b, da, db, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }

    extend(0, &adj_a, &adj_b, &da, &db, &mut map, &mut used)
}

/// All labeled trees on `n` vertices, one per Prüfer sequence.
pub fn all_labeled_trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        return vec![prufer_tree(n, &[])];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let x = code % n;
                    code /= n;
                    x
                })
                .collect();
            prufer_tree(n, &seq)
        })
        .collect()
}
