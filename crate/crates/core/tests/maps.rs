mod common;

use common::*;
use cstar_core::drazin::{commuting_drazin_criterion, drazin_dual_check, drazin_inverse};
use cstar_core::fredholm::{exact_sequence, fredholm_report, weyl_perturbation_chain};
use cstar_core::module::{inner_product, ModuleAmbient, Submodule};
use cstar_core::random::{
    instance_rng, random_commuting_pair, random_drazin_map, random_low_rank_map, random_map,
};
use cstar_core::{AdjointableMap, AlgebraShape, K0Class};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn shape_of(i: usize) -> AlgebraShape {
    shapes()[i % shapes().len()].clone()
}

fn expected_index(shape: &AlgebraShape, domain: usize, codomain: usize) -> K0Class {
    K0Class::new(
        shape
            .blocks()
            .iter()
            .map(|&n| (domain as i64 - codomain as i64) * n as i64)
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_satisfies_inner_product_identity(seed: u64, s in 0usize..4, m in 1usize..4, k in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 10);
        let f = random_map(&mut rng, &shape, m, k).unwrap();
        let x = random_vector(&mut rng, &shape, m);
        let y = random_vector(&mut rng, &shape, k);
        let lhs = inner_product(&f.apply(&x).unwrap(), &y).unwrap();
        let rhs = inner_product(&x, &f.adjoint().apply(&y).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= TOL * (1.0 + f.norm() * lhs.norm().max(1.0)));
    }

    #[test]
    fn adjoint_reverses_composition(seed: u64, s in 0usize..4, m in 1usize..4, k in 1usize..4, l in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 11);
        let f = random_map(&mut rng, &shape, m, k).unwrap();
        let g = random_map(&mut rng, &shape, k, l).unwrap();
        let lhs = g.compose(&f).unwrap().adjoint();
        let rhs = f.adjoint().compose(&g.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= TOL * (1.0 + f.norm() * g.norm()));
    }

    #[test]
    fn orthogonal_projection_is_a_projection(seed: u64, s in 0usize..4, m in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 12);
        let amb = ModuleAmbient::new(&shape, m);
        let n = Submodule::span(&amb, &[random_vector(&mut rng, &shape, m)]).unwrap();
        let p = AdjointableMap::orthogonal_projection(&n);
        prop_assert!(p.compose(&p).unwrap().max_abs_diff(&p) <= TOL);
        prop_assert!(p.adjoint().max_abs_diff(&p) <= TOL);
        let norm = oracle_norm(p.realization());
        let expected = if n.is_zero() { 0.0 } else { 1.0 };
        prop_assert!((norm - expected).abs() <= TOL);
    }

    #[test]
    fn pseudoinverse_satisfies_penrose_identities(seed: u64, s in 0usize..4, m in 1usize..4, k in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 13);
        let f = random_map(&mut rng, &shape, m, k).unwrap();
        let x = f.pseudoinverse();
        let fx = f.compose(&x).unwrap();
        let xf = x.compose(&f).unwrap();
        let scale = 1.0 + f.norm() * x.norm();
        prop_assert!(fx.compose(&f).unwrap().max_abs_diff(&f) <= TOL * scale * f.norm().max(1.0));
        prop_assert!(xf.compose(&x).unwrap().max_abs_diff(&x) <= TOL * scale * x.norm().max(1.0));
        prop_assert!(fx.adjoint().max_abs_diff(&fx) <= TOL * scale);
        prop_assert!(xf.adjoint().max_abs_diff(&xf) <= TOL * scale);
    }

    #[test]
    fn kernel_and_image_dimensions_match_rank(seed: u64, s in 0usize..4, m in 1usize..4, k in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 14);
        let f = random_map(&mut rng, &shape, m, k).unwrap();
        let rank = oracle_rank(f.realization());
        prop_assert_eq!(f.image().dim(), rank);
        prop_assert_eq!(f.kernel().dim(), f.domain().dim() - rank);
        let r = fredholm_report(&f).unwrap();
        prop_assert_eq!(r.index, expected_index(&shape, m, k));
    }

    #[test]
    fn drazin_axioms_and_index(seed: u64, s in 0usize..4, m in 1usize..3) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 15);
        let f = random_drazin_map(&mut rng, &shape, m).unwrap();
        let r = drazin_inverse(&f).unwrap();
        prop_assume!(r.margin.kept >= 1e-6);
        prop_assert!(r.residuals.max() <= TOL);
        prop_assert_eq!(r.drazin_index, oracle_ascent(f.realization()));
        let x = &r.drazin_inverse;
        let xfx = x.compose(&f).unwrap().compose(x).unwrap();
        prop_assert!(xfx.max_abs_diff(x) <= TOL * (1.0 + x.norm()).powi(2) * (1.0 + f.norm()));
        let d = drazin_dual_check(&f).unwrap();
        prop_assert_eq!(d.index, d.adjoint_index);
        prop_assert!(d.inverse_discrepancy <= TOL);
    }

    #[test]
    fn commuting_criterion_agrees_with_direct_verdict(seed: u64, s in 0usize..4, m in 1usize..3) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 16);
        let (f, d) = random_commuting_pair(&mut rng, &shape, m).unwrap();
        let r = commuting_drazin_criterion(&f, &d).unwrap();
        prop_assert_eq!(r.verdict, r.direct_verdict);
    }

    #[test]
    fn index_is_additive_along_exact_sequence(seed: u64, m in 1usize..4, k in 1usize..4, l in 1usize..4) {
        let shape = AlgebraShape::new(vec![2, 3]).unwrap();
        let mut rng = instance_rng(seed, 17);
        let f = random_map(&mut rng, &shape, m, k).unwrap();
        let g = random_map(&mut rng, &shape, k, l).unwrap();
        let r = exact_sequence(&f, &g).unwrap();
        prop_assume!(r.margin.kept >= 1e-6);
        prop_assert_eq!(r.core.alternating_dim_sum, 0);
        prop_assert!(r.k0_alternating_sum.is_zero());
        prop_assert_eq!(&r.index_f, &expected_index(&shape, m, k));
        prop_assert_eq!(&r.index_g, &expected_index(&shape, k, l));
        prop_assert_eq!(&r.index_gf, &(&r.index_f + &r.index_g));
    }

    #[test]
    fn perturbation_chain_identity(seed: u64, m in 1usize..4) {
        let shape = AlgebraShape::new(vec![2, 3]).unwrap();
        let mut rng = instance_rng(seed, 18);
        let t = random_map(&mut rng, &shape, m, m).unwrap();
        let f = random_low_rank_map(&mut rng, &shape, m, m, 2).unwrap();
        let r = weyl_perturbation_chain(&t, &f).unwrap();
        prop_assume!(r.margin.kept >= 1e-6);
        prop_assert!(r.identity_holds);
        prop_assert_eq!(r.lhs_total, r.rhs_total);
    }
}
