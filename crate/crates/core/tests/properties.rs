use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use greene_core::algebra::{frac_equal, ipt_frac, RatFrac};
use greene_core::corpus::corpus_gen;
use greene_core::format::{parse_poset_file, serialize_poset_file, PosetFile};
use greene_core::greene::{psi_oracle, psi_oracle_naive};
use greene_core::poset::{
    close_notch, find_notches, lattice_paths, skew_to_poset, LabeledGraph, Poset, SkewDiagram,
};
use greene_core::subdivision::{
    psi_from_sum, reduce_full, reduce_step, sigma_by_reduction, sigma_from_sum, DefaultStrategy,
    FormalSum, GraphTerm, LexMax,
};
use greene_core::triangulation::{
    compatible, decompose_lr, lp_triangulation, noncrossing_alternating_trees, EdgeOrder,
};

fn poset(seed: u64, n_max: usize) -> Poset {
    corpus_gen(seed, n_max, 1).pop().unwrap()
}

fn point(n: usize, seed: u64) -> Vec<BigRational> {
    // Distinct nonzero integers, so no factor x_i - x_j or x_i vanishes.
    let mut xs: Vec<i64> = Vec::new();
    let mut v = (seed % 17) as i64 + 2;
    while xs.len() < n {
        xs.push(v);
        v += (seed % 5) as i64 + 1;
    }
    xs.into_iter()
        .map(|x| BigRational::from_integer(x.into()))
        .collect()
}

fn brute_force_extensions(p: &Poset) -> usize {
    let lt = p.strict_order();
    let n = p.n();
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut count = 0;
    permutations(&mut perm, 0, &mut |w| {
        let ok = (0..n).all(|a| (a + 1..n).all(|b| !lt[w[b]][w[a]]));
        if ok {
            count += 1;
        }
    });
    count
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for x in k..v.len() {
        v.swap(k, x);
        permutations(v, k + 1, f);
        v.swap(k, x);
    }
}

/// `prod 1/(x_i - x_j)` at beta = 0, or `prod x_j/(x_j - x_i)` at beta = -1,
/// over the edges of `g`.
fn monomial_value(g: &LabeledGraph, x: &[BigRational], beta: i32) -> BigRational {
    g.edges().iter().fold(BigRational::one(), |acc, &(i, j)| {
        let (xi, xj) = (&x[i - 1], &x[j - 1]);
        let f = if beta == 0 {
            (xi - xj).recip()
        } else {
            xj / (xj - xi)
        };
        acc * f
    })
}

fn term_value(t: &GraphTerm, x: &[BigRational], beta: i32) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(beta));
    let mut v = monomial_value(&t.graph, x, beta) * BigRational::from_integer(t.coeff.into());
    for _ in 0..t.beta_pow {
        v *= &b;
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extension_count_matches_brute_force(seed in any::<u64>()) {
        let p = poset(seed, 6);
        prop_assert_eq!(p.linear_extensions().len(), brute_force_extensions(&p));
    }

    #[test]
    fn oracle_dp_matches_direct_sum(seed in any::<u64>()) {
        let p = poset(seed, 6);
        prop_assert!(frac_equal(&psi_oracle(&p), &psi_oracle_naive(&p)));
    }

    #[test]
    fn closure_is_idempotent(seed in any::<u64>()) {
        let c = poset(seed, 7).hasse().transitive_closure();
        prop_assert_eq!(c.transitive_closure(), c);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(seed in any::<u64>(), s2 in any::<u64>()) {
        let a = psi_oracle(&poset(seed, 5));
        let b = psi_oracle(&poset(s2, 5));
        let x = point(5, seed ^ s2);
        let (ea, eb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!(a.add(&b).eval(&x).unwrap(), &ea + &eb);
        prop_assert_eq!(a.mul(&b).eval(&x).unwrap(), &ea * &eb);
        prop_assert!(frac_equal(&a.sub(&a), &RatFrac::zero()));
    }

    #[test]
    fn frac_equal_is_an_equivalence(seed in any::<u64>()) {
        let a = psi_oracle(&poset(seed, 5));
        let b = a.add(&RatFrac::inv_diff(1, 2)).sub(&RatFrac::inv_diff(1, 2));
        let c = b.mul(&RatFrac::one());
        prop_assert!(frac_equal(&a, &a));
        prop_assert_eq!(frac_equal(&a, &b), frac_equal(&b, &a));
        prop_assert!(frac_equal(&a, &b) && frac_equal(&b, &c) && frac_equal(&a, &c));
    }

    #[test]
    fn ipt_inverts_the_cover_product(seed in any::<u64>()) {
        // A spanning tree of the Hasse diagram is a forest in the closure.
        let p = poset(seed, 6);
        for (_, g) in decompose_lr(&p).into_iter().take(2) {
            for t in lp_triangulation(&g, &EdgeOrder::lex(&g)).unwrap().into_iter().take(3) {
                let x = point(p.n(), seed);
                let inv = t.edges().iter().fold(BigRational::one(), |acc, &(i, j)| {
                    acc * (BigRational::one() - &x[i - 1] / &x[j - 1])
                });
                prop_assert_eq!(ipt_frac(&t).unwrap().eval(&x).unwrap() * inv, BigRational::one());
            }
        }
    }

    #[test]
    fn closing_a_notch_merges_two_elements(seed in any::<u64>()) {
        let p = poset(seed, 6);
        for t in find_notches(&p) {
            let c = close_notch(&p, t).unwrap();
            prop_assert_eq!(c.poset.n() + 1, p.n());
            prop_assert_eq!(c.relabel(t.b), c.relabel(t.c));
        }
    }

    #[test]
    fn paths_and_noncrossing_trees_are_equinumerous(idx in 0usize..494) {
        let d = &SkewDiagram::enumerate(4, 4)[idx];
        let (p, order) = skew_to_poset(d);
        let trees = noncrossing_alternating_trees(&p.hasse(), &order);
        prop_assert_eq!(lattice_paths(d).unwrap().len(), trees.len());
    }

    #[test]
    fn tree_count_is_independent_of_the_edge_order(seed in any::<u64>()) {
        let p = poset(seed, 6);
        for (_, g) in decompose_lr(&p) {
            let lex = lp_triangulation(&g, &EdgeOrder::lex(&g)).unwrap();
            let rev = lp_triangulation(&g, &EdgeOrder::revlex(&g)).unwrap();
            let mut edges = g.edges().to_vec();
            let shift = seed as usize % edges.len().max(1);
            edges.rotate_left(shift);
            let rot = lp_triangulation(&g, &EdgeOrder::from_list(edges)).unwrap();
            prop_assert_eq!(lex.len(), rev.len());
            prop_assert_eq!(lex.len(), rot.len());
        }
    }

    #[test]
    fn lp_trees_are_pairwise_compatible(seed in any::<u64>()) {
        let p = poset(seed, 6);
        for (_, g) in decompose_lr(&p) {
            let trees = lp_triangulation(&g, &EdgeOrder::revlex(&g)).unwrap();
            for a in 0..trees.len() {
                for b in a + 1..trees.len() {
                    prop_assert!(compatible(&trees[a], &trees[b]));
                }
            }
        }
    }

    #[test]
    fn reduce_step_preserves_both_specialisations(seed in any::<u64>()) {
        let p = poset(seed, 7);
        let g = p.hasse();
        let x = point(p.n(), seed);
        for pivot in g.pivots() {
            let t = GraphTerm::new(g.clone());
            let [a, b, c] = reduce_step(&t, pivot).unwrap();
            for beta in [0, -1] {
                let children = term_value(&a, &x, beta) + term_value(&b, &x, beta) + term_value(&c, &x, beta);
                prop_assert_eq!(term_value(&t, &x, beta), children);
            }
        }
    }

    #[test]
    fn reduction_recovers_psi_and_sigma(seed in any::<u64>()) {
        let p = poset(seed, 5);
        let sum = reduce_full(&p.hasse(), &DefaultStrategy::default()).unwrap();
        prop_assert!(frac_equal(&psi_from_sum(&sum).unwrap(), &psi_oracle(&p)));
        let flat = sigma_from_sum(&sum).unwrap();
        prop_assert!(frac_equal(&flat, &sigma_by_reduction(&p.hasse(), &DefaultStrategy::default()).unwrap()));
        // Another strategy triangulates differently but the transform is the same.
        let other = sigma_by_reduction(&p.hasse(), &LexMax).unwrap();
        prop_assert!(frac_equal(&flat, &other));
    }

    #[test]
    fn dump_round_trips(seed in any::<u64>()) {
        let p = poset(seed, 5);
        let sum = reduce_full(&p.hasse(), &DefaultStrategy::default()).unwrap();
        prop_assert_eq!(FormalSum::parse_dump(p.n(), &sum.dump()).unwrap(), sum);
    }

    #[test]
    fn poset_files_round_trip(seed in any::<u64>()) {
        let p = poset(seed, 9);
        let text = serialize_poset_file(&PosetFile::bare(p.clone()));
        let back = parse_poset_file(&text).unwrap();
        prop_assert_eq!(&back.poset, &p);
        prop_assert_eq!(serialize_poset_file(&back), text);
    }

    #[test]
    fn corpus_is_a_function_of_the_seed(seed in any::<u64>()) {
        let a = corpus_gen(seed, 7, 5);
        prop_assert_eq!(&a, &corpus_gen(seed, 7, 5));
        prop_assert!(a.iter().all(|p| p.is_connected() && p.n() <= 7));
    }
}

#[test]
fn zero_point_helper_avoids_poles() {
    let x = point(6, 3);
    for i in 0..6 {
        assert!(!x[i].is_zero());
        for j in i + 1..6 {
            assert_ne!(x[i], x[j]);
        }
    }
}
