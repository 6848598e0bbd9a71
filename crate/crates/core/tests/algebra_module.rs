mod common;

use common::*;
use cstar_core::module::{inner_product, ModuleAmbient, Submodule};
use cstar_core::random::instance_rng;
use cstar_core::AlgebraShape;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn shape_of(i: usize) -> AlgebraShape {
    shapes()[i % shapes().len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_matches_dense_realization(seed: u64, s in 0usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 0);
        let a = random_element(&mut rng, &shape);
        let b = random_element(&mut rng, &shape);
        let na = oracle_norm(&a.to_dense());
        prop_assert!((a.norm() - na).abs() <= TOL * na.max(1.0));
        let ab = a.mul(&b).unwrap();
        prop_assert!(oracle_norm(&ab.to_dense()) <= na * oracle_norm(&b.to_dense()) * (1.0 + TOL));
    }

    #[test]
    fn c_star_identity_and_involution(seed: u64, s in 0usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 1);
        let a = random_element(&mut rng, &shape);
        let b = random_element(&mut rng, &shape);
        let n = a.norm();
        prop_assert!((a.adjoint().mul(&a).unwrap().norm() - n * n).abs() <= TOL * n * n);
        prop_assert!(a.adjoint().adjoint().max_abs_diff(&a) == 0.0);
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= TOL * n * b.norm());
    }

    #[test]
    fn inner_product_is_hermitian(seed: u64, s in 0usize..4, rank in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 2);
        let x = random_vector(&mut rng, &shape, rank);
        let y = random_vector(&mut rng, &shape, rank);
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        prop_assert!(xy.adjoint().max_abs_diff(&yx) <= TOL * (1.0 + xy.norm()));
    }

    #[test]
    fn k0_class_matches_block_dimension_count(seed: u64, s in 0usize..4, rank in 1usize..4, k in 0usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 3);
        let amb = ModuleAmbient::new(&shape, rank);
        let vectors: Vec<_> = (0..k).map(|_| random_vector(&mut rng, &shape, rank)).collect();
        let n = Submodule::span(&amb, &vectors).unwrap();
        let class = n.k0_class().unwrap();
        prop_assert_eq!(class.ranks(), &oracle_k0(&shape, rank, n.basis())[..]);
        let perp = n.orth_complement().k0_class().unwrap();
        let full = Submodule::full(&amb).k0_class().unwrap();
        prop_assert_eq!(&class + &perp, full.clone());
        let expected: Vec<i64> = shape.blocks().iter().map(|&nb| (rank * nb) as i64).collect();
        prop_assert_eq!(full.ranks(), &expected[..]);
    }

    #[test]
    fn sum_and_intersection_dimensions(seed: u64, s in 0usize..4, rank in 1usize..4) {
        let shape = shape_of(s);
        let mut rng = instance_rng(seed, 4);
        let amb = ModuleAmbient::new(&shape, rank);
        let m = Submodule::span(&amb, &[random_vector(&mut rng, &shape, rank), random_vector(&mut rng, &shape, rank)]).unwrap();
        let n = Submodule::span(&amb, &[random_vector(&mut rng, &shape, rank)]).unwrap();
        let (sum, meet) = m.sum_and_intersection(&n).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), m.dim() + n.dim());
        prop_assert_eq!(&sum.k0_class().unwrap() + &meet.k0_class().unwrap(), &m.k0_class().unwrap() + &n.k0_class().unwrap());
        prop_assert!(sum.contains(&m) && sum.contains(&n) && m.contains(&meet) && n.contains(&meet));
    }
}
