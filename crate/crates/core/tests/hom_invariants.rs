mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use semibrick::algebra::fixtures;
use semibrick::homology::{minimal_presentation, theta_of, Weight};
use semibrick::rep::hom_dim;
use semibrick::stability::is_theta_stable;
use semibrick::{BoundQuiverAlgebra, Scalar, F2, F3};

fn fixture<S: Scalar>(which: usize) -> Arc<BoundQuiverAlgebra<S>> {
    match which {
        0 => fixtures::local_dual_numbers(),
        1 => fixtures::a2(),
        2 => fixtures::a3(),
        _ => fixtures::kronecker(),
    }
}

fn check_hom_against_brute_force<S: Scalar>(which: usize, seed: u64) {
    let alg = fixture::<S>(which);
    let mut r = rng(seed);
    let x = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
    let y = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
    let count = brute_force_hom_count(&x, &y);
    let q = S::order().unwrap();
    assert_eq!(q.pow(hom_dim(&x, &y).unwrap() as u32), count, "{x:?} {y:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_dim_counts_module_maps(which in 0usize..4, seed in any::<u64>()) {
        check_hom_against_brute_force::<F2>(which, seed);
        check_hom_against_brute_force::<F3>(which, seed);
    }

    #[test]
    fn hom_dim_invariant_under_base_change(which in 0usize..4, seed in any::<u64>()) {
        let alg = fixture::<F3>(which);
        let mut r = rng(seed);
        let x = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
        let y = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
        let (x2, y2) = (random_base_change(&x, &mut r), random_base_change(&y, &mut r));
        prop_assert_eq!(hom_dim(&x, &y).unwrap(), hom_dim(&x2, &y2).unwrap());
    }

    #[test]
    fn hom_dim_additive_on_direct_sums(which in 0usize..4, seed in any::<u64>()) {
        let alg = fixture::<F2>(which);
        let mut r = rng(seed);
        let mut pick = || random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
        let (x1, x2, y) = (pick(), pick(), pick());
        let sum = x1.direct_sum(&x2).unwrap();
        prop_assert_eq!(
            hom_dim(&sum, &y).unwrap(),
            hom_dim(&x1, &y).unwrap() + hom_dim(&x2, &y).unwrap()
        );
        prop_assert_eq!(
            hom_dim(&y, &sum).unwrap(),
            hom_dim(&y, &x1).unwrap() + hom_dim(&y, &x2).unwrap()
        );
    }

    #[test]
    fn presentation_invariant_under_base_change(which in 0usize..4, seed in any::<u64>()) {
        let alg = fixture::<F3>(which);
        let mut r = rng(seed);
        let x = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
        let x2 = random_base_change(&x, &mut r);
        let (p, p2) = (minimal_presentation(&x).unwrap(), minimal_presentation(&x2).unwrap());
        prop_assert_eq!(p.p0_multiplicities(), p2.p0_multiplicities());
        prop_assert_eq!(p.p1_multiplicities(), p2.p1_multiplicities());
        prop_assert_eq!(theta_of(&x).unwrap(), theta_of(&x2).unwrap());
    }

    #[test]
    fn stability_invariant_under_positive_scaling(
        which in 1usize..4,
        seed in any::<u64>(),
        k in 1i64..5,
    ) {
        let alg = fixture::<F2>(which);
        let mut r = rng(seed);
        let x = random_point(&alg, &random_dims(alg.rank(), 3, &mut r), &mut r);
        // A weight vanishing on dim X, so the submodule test actually runs.
        let dims: Vec<i64> = x.dims().iter().map(|&d| d as i64).collect();
        let mut theta = vec![0i64; dims.len()];
        if let Some(j) = dims.iter().position(|&d| d > 0) {
            let last = dims.len() - 1;
            if j != last && dims[last] > 0 {
                theta[j] = dims[last];
                theta[last] = -dims[j];
            }
        }
        let theta = Weight(theta);
        let a = is_theta_stable(&x, &theta, CAP).unwrap();
        let b = is_theta_stable(&x, &theta.scaled(k), CAP).unwrap();
        prop_assert_eq!(a.stable, b.stable);
    }
}
