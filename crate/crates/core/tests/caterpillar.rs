use grahamlab_core::caterpillar::{
    cat_lk_size_formula, caterpillar_graph, coeff_ratio_report, f_k_poly, star_lk_poly_by_embeddings,
    CaterpillarSpec, DirectSizer, ShadowSizer,
};
use grahamlab_core::graph::iterated_sizes;
use grahamlab_core::shadowcount::build_wt_table;
use grahamlab_core::{Limits, Polynomial};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

fn direct_lk(parts: &[usize], k: usize, pad: usize) -> BigUint {
    let spec = CaterpillarSpec::new(parts.to_vec(), 2 * k, pad).unwrap();
    let g = caterpillar_graph(&spec).unwrap();
    iterated_sizes(&g, k, &Limits::default()).unwrap().terms.pop().unwrap()
}

#[test]
fn joint_formula_matches_direct_iteration() {
    let direct = DirectSizer::default();
    let table = build_wt_table(3, 4, &Limits::default()).unwrap();
    let shadow = ShadowSizer { table: &table };
    for parts in [&[2][..], &[3], &[5], &[3, 4], &[2, 2, 5], &[0, 1, 0, 3]] {
        for k in 1..=3u32 {
            for pad in [0, 1, 7] {
                let want = direct_lk(parts, k as usize, pad);
                assert_eq!(cat_lk_size_formula(parts, k, pad, &direct).unwrap().total, want);
                assert_eq!(cat_lk_size_formula(parts, k, pad, &shadow).unwrap().total, want);
            }
        }
    }
}

#[test]
fn vertex_count_invariant() {
    for parts in [vec![], vec![0], vec![3, 0, 2], vec![1, 1, 1, 1]] {
        for m in 1..5 {
            for pad in 0..3 {
                let spec = CaterpillarSpec::new(parts.clone(), m, pad).unwrap();
                let g = caterpillar_graph(&spec).unwrap();
                let t = parts.len();
                assert_eq!(g.vertex_count(), (t + 1) * m + 1 + parts.iter().sum::<usize>() + pad);
                assert!(g.is_tree());
                let deg = g.degrees();
                for (i, &d) in parts.iter().enumerate() {
                    assert_eq!(deg[(i + 1) * m] as usize, d + 2);
                }
            }
        }
    }
}

#[test]
fn joints_separate_at_spacing_two_k() {
    for k in 1..=3usize {
        let base = |a: usize, b: usize| direct_lk(&[a, b], k, 0);
        let lone = |a: usize| direct_lk(&[a, 0], k, 0);
        let reference = base(1, 4) - lone(1);
        for a in 0..6 {
            assert_eq!(base(a, 4) - lone(a), reference, "k = {k}, a = {a}");
        }
    }
}

#[test]
fn f_k_takes_half_integer_values() {
    let s = DirectSizer::default();
    for k in 1..=4 {
        let f = f_k_poly(k, &s).unwrap();
        for d in 1..=25i64 {
            let twice = f.eval_int(&BigInt::from(d)) * BigRational::from_integer(BigInt::from(2));
            assert!(twice.is_integer());
            assert!(twice.to_integer().is_odd(), "k = {k}, d = {d}");
        }
    }
}

#[test]
fn f_k_leading_coefficients() {
    let s = DirectSizer::default();
    for k in 1..=4u32 {
        let f = f_k_poly(k, &s).unwrap();
        let exp = (k * (k - 1) / 2) as i64 - 2 * (k as i64 - 1);
        let want = if exp >= 0 {
            BigRational::from_integer(BigInt::one() << exp as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-exp) as usize)
        };
        assert_eq!(f.leading(), Some(&want), "k = {k}");
    }
}

#[test]
fn embedding_sum_cross_check() {
    let s = DirectSizer::default();
    for k in 1..=3u32 {
        let table = build_wt_table(k as usize, k as usize + 1, &Limits::default()).unwrap();
        assert_eq!(star_lk_poly_by_embeddings(k, &table).unwrap(), f_k_poly(k, &s).unwrap());
    }
}

#[test]
fn ratio_within_bound() {
    let s = DirectSizer::default();
    for k in 1..=4 {
        assert!(coeff_ratio_report(k, &s).unwrap().holds(), "k = {k}");
    }
}

#[test]
fn binomial_basis_coefficients_are_small() {
    for t in 1..=8usize {
        let p = Polynomial::binomial(t);
        let cap = BigRational::new(BigInt::one() << t, BigInt::from(t));
        assert_eq!(p.leading(), Some(&BigRational::new(BigInt::one(), (1..=t as u64).map(BigInt::from).product())));
        for c in p.coeffs() {
            assert!(c.abs() <= cap, "t = {t}, coefficient {c}");
        }
    }
}
