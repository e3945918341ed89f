mod common;

use common::{random_tree, shuffled};
use grahamlab_core::caterpillar::star_graph;
use grahamlab_core::graph::{
    iterated_sizes, line_graph, regular_line_degree, shadow_line_iterate, star_lk_product_bound,
    star_lk_size, star_lk_size_below_power_bound,
};
use grahamlab_core::treegen::enumerate_trees;
use grahamlab_core::{Error, Graph, Limits};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Sizes by applying the operator step by step.
fn repeated_sizes(g: &Graph, depth: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(g.vertex_count())];
    let mut h = g.clone();
    for _ in 0..depth {
        h = line_graph(&h);
        out.push(BigUint::from(h.vertex_count()));
    }
    out
}

/// Adjacency of `L(g)` by pairwise incidence of edges.
fn incidence_line_graph(g: &Graph) -> Graph {
    let e = g.edges();
    let mut edges = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = (e[i], e[j]);
            if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::new(e.len(), edges).unwrap()
}

proptest! {
    #[test]
    fn line_graph_matches_incidence(seed in any::<u64>(), n in 0usize..9, p in 0.1f64..0.9) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        let l = line_graph(&g);
        prop_assert_eq!(&l, &incidence_line_graph(&g));
        prop_assert_eq!(l.vertex_count(), g.edge_count());
    }

    #[test]
    fn iterated_sizes_match_repetition(seed in any::<u64>(), n in 0usize..7, p in 0.1f64..0.7, depth in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        let seq = iterated_sizes(&g, depth, &Limits::default()).unwrap();
        prop_assert_eq!(&seq.terms, &repeated_sizes(&g, depth));
        if depth >= 1 {
            prop_assert_eq!(&seq.terms[1], &BigUint::from(g.edge_count()));
        }
    }

    #[test]
    fn tree_sizes_match_repetition(seed in any::<u64>(), n in 1usize..14, depth in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = random_tree(&mut rng, n);
        let seq = iterated_sizes(&t, depth, &Limits::default()).unwrap();
        prop_assert_eq!(&seq.terms, &repeated_sizes(&t, depth));
        let u = shuffled(&mut rng, &t);
        prop_assert_eq!(seq, iterated_sizes(&u, depth, &Limits::default()).unwrap());
    }
}

#[test]
fn shadows_are_small_connected_subtrees() {
    let limits = Limits::default();
    for n in 1..=9 {
        for t in enumerate_trees(n).unwrap() {
            for k in 0..=4 {
                let sg = shadow_line_iterate(&t, k, &limits).unwrap();
                for &mask in &sg.shadows {
                    let size = mask.count_ones() as usize;
                    assert!(size >= 1 && size <= k + 1);
                    let inside = t
                        .edges()
                        .iter()
                        .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
                        .count();
                    assert_eq!(inside + 1, size, "shadow not connected");
                }
            }
        }
    }
}

#[test]
fn star_sizes_match_iteration() {
    for d in 3..=6usize {
        let seq = iterated_sizes(&Graph::star(d), 5, &Limits::default()).unwrap();
        for k in 0..=5u32 {
            assert_eq!(star_lk_size(d as u64, k).unwrap(), seq.terms[k as usize], "d = {d}, k = {k}");
        }
    }
    assert_eq!(star_lk_size(4, 2).unwrap(), BigUint::from(6u32));
    assert_eq!(star_lk_size(3, 5).unwrap(), BigUint::from(3u32));
    assert_eq!(star_lk_size(4, 3).unwrap(), BigUint::from(12u32));
}

#[test]
fn star_bounds_hold() {
    for d in 3..=6u64 {
        for k in 1..=4u32 {
            let exact = star_lk_size(d, k).unwrap();
            assert!(star_lk_size_below_power_bound(&exact, d, k));
            assert!(exact <= star_lk_product_bound(d, k).unwrap());
            for a in 0..=3usize {
                for b in 0..=3usize {
                    let g = star_graph(d as usize, a, b).unwrap();
                    let seq = iterated_sizes(&g, k as usize, &Limits::default()).unwrap();
                    let base = d + a as u64 + b as u64;
                    assert!(star_lk_size_below_power_bound(&seq.terms[k as usize], base, k));
                }
            }
        }
    }
    assert_eq!(star_lk_product_bound(4, 2).unwrap(), BigUint::from(8u32));
}

#[test]
fn regular_degree_doubles() {
    let limits = Limits::default();
    assert_eq!(regular_line_degree(3, 1).unwrap(), BigUint::from(4u32));
    assert_eq!(regular_line_degree(4, 2).unwrap(), BigUint::from(10u32));
    for d in 3..=5usize {
        let mut h = Graph::complete(d);
        for k in 0..=3u32 {
            let want = regular_line_degree(d as u64 - 1, k).unwrap();
            assert!(h.degrees().iter().all(|&x| BigUint::from(x) == want), "K_{d}, k = {k}");
            h = grahamlab_core::graph::line_graph_limited(&h, &limits, k as usize + 1).unwrap();
        }
    }
}

#[test]
fn resource_ceiling_is_typed() {
    let limits = Limits {
        max_vertices: 100,
        max_edges: 1_000,
    };
    let err = iterated_sizes(&Graph::star(8), 6, &limits).unwrap_err();
    assert!(matches!(err, Error::ResourceLimit { .. }));
}
