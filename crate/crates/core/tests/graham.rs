mod common;

use common::{random_tree, shuffled};
use grahamlab_core::caterpillar::{f_k_poly, DirectSizer};
use grahamlab_core::graham::{build_family, graham_classes, graham_sequence, FamilySpec, Method};
use grahamlab_core::pte::pte_defect;
use grahamlab_core::shadowcount::build_wt_table;
use grahamlab_core::treegen::enumerate_trees;
use grahamlab_core::Limits;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sequences_are_isomorphism_invariant(seed in any::<u64>(), n in 1usize..16) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = random_tree(&mut rng, n);
        let u = shuffled(&mut rng, &t);
        let lim = Limits::default();
        prop_assert_eq!(
            graham_sequence(&t, 4, Method::Direct, &lim, None).unwrap(),
            graham_sequence(&u, 4, Method::Direct, &lim, None).unwrap()
        );
    }
}

#[test]
fn methods_agree_on_small_trees() {
    let lim = Limits::default();
    let table = build_wt_table(4, 5, &lim).unwrap();
    for n in 1..=9 {
        for t in enumerate_trees(n).unwrap() {
            let direct = graham_sequence(&t, 4, Method::Direct, &lim, None).unwrap();
            let shadow = graham_sequence(&t, 4, Method::Shadow, &lim, Some(&table)).unwrap();
            assert_eq!(direct, shadow);
        }
    }
}

#[test]
fn auto_falls_back_to_shadows() {
    let tight = Limits {
        max_vertices: 300,
        max_edges: 3_000,
    };
    let t = grahamlab_core::Graph::star(20);
    assert!(graham_sequence(&t, 5, Method::Direct, &tight, None).is_err());
    let auto = graham_sequence(&t, 4, Method::Auto, &tight, None).unwrap();
    let direct = graham_sequence(&t, 4, Method::Direct, &Limits::default(), None).unwrap();
    assert_eq!(auto, direct);
}

#[test]
fn census_separates_small_orders() {
    let expected = [1, 1, 1, 2, 3, 6, 11, 23];
    for n in 1..=8 {
        let r = graham_classes(n, 4, &Limits::default()).unwrap();
        assert_eq!(r.tree_count, expected[n - 1]);
        assert_eq!(r.class_count, r.tree_count, "collisions at n = {n}: {:?}", r.collisions);
    }
}

fn lead(k: u32) -> BigRational {
    f_k_poly(k, &DirectSizer::default()).unwrap().leading().unwrap().clone()
}

#[test]
fn families_share_prefix_and_split() {
    for (k, sigma) in [(2, 1), (2, 2), (3, 1)] {
        let spec = FamilySpec::new(k, sigma).unwrap();
        let report = build_family(&spec, Method::Auto, &Limits::default(), None).unwrap();
        assert_eq!(report.failure(), None, "(k, sigma) = ({k}, {sigma})");
        let s = sigma as usize;
        assert_eq!(report.members.len(), (s + 1) * (s + 2) / 2);
        let step = -(lead(k + 1) * BigRational::from_integer(pte_defect(k + 1, 0).unwrap()));
        assert_eq!(BigRational::from_integer(report.expected_step.clone()), step);
    }
    let spec = FamilySpec::new(2, 1).unwrap();
    let report = build_family(&spec, Method::Direct, &Limits::default(), None).unwrap();
    let shapes: Vec<(u32, u32, u32)> = report.members.iter().map(|m| (m.r, m.s, m.t)).collect();
    assert_eq!(shapes, vec![(0, 1, 0), (0, 1, 1), (1, 0, 0)]);
}

#[test]
fn padding_is_neutral() {
    let lim = Limits::default();
    let spec = FamilySpec::new(2, 2).unwrap();
    let base = build_family(&spec, Method::Direct, &lim, None).unwrap();
    for pad in [3usize, 11] {
        let mut padded = spec.clone();
        padded.pad = pad;
        let report = build_family(&padded, Method::Direct, &lim, None).unwrap();
        assert!(report.verified());
        for (a, b) in base.members.iter().zip(&report.members) {
            for (x, y) in a.sequence.terms.iter().zip(&b.sequence.terms) {
                assert_eq!(y - x, BigUint::from(pad));
            }
        }
        assert_eq!(report.steps, base.steps);
    }
}

#[test]
fn wider_spacing_keeps_the_split() {
    let mut spec = FamilySpec::new(2, 2).unwrap();
    spec.spacing = 9;
    let report = build_family(&spec, Method::Direct, &Limits::default(), None).unwrap();
    assert!(report.verified());
    assert_eq!(report.expected_step, BigInt::from(-24));
}
