mod common;

use common::*;
use cstar_core::banach::{
    banach_perturbation_orthogonal, generalized_weyl_banach, make_regular, make_regular_orthogonal,
};
use cstar_core::geometry::{bouldin_criterion, closed_sum_report, dixmier_angle};
use cstar_core::linalg::{max_abs, scalar, Subspace};
use cstar_core::module::{ModuleAmbient, Submodule};
use cstar_core::random::{
    instance_rng, low_rank_matrix, random_isometry, random_map, random_oblique_complement,
    random_subspace_pair,
};
use cstar_core::{AlgebraShape, CMat};
use proptest::prelude::*;

fn line_pair(theta: f64) -> (Submodule, Submodule) {
    let amb = ModuleAmbient::new(&AlgebraShape::trivial(), 2);
    let m = CMat::from_column_slice(2, 1, &[scalar(1.0), scalar(0.0)]);
    let n = CMat::from_column_slice(2, 1, &[scalar(theta.cos()), scalar(theta.sin())]);
    (
        Submodule::span_coords(&amb, &m).unwrap(),
        Submodule::span_coords(&amb, &n).unwrap(),
    )
}

#[test]
fn lines_at_angle_theta() {
    for theta in [0.3, 1e-3] {
        let (m, n) = line_pair(theta);
        let r = closed_sum_report(&m, &n, 5, 10_000).unwrap();
        let s = theta.sin();
        assert!((r.delta - s).abs() <= 1e-12);
        assert!((r.bound_c - (s + 1.0) / s).abs() <= 1e-6 * r.bound_c);
        assert_eq!(r.violations, 0);
        assert!(r.max_sampled_ratio <= r.bound_c);
    }
    let (m, n) = line_pair(1e-3);
    assert!((closed_sum_report(&m, &n, 1, 10).unwrap().bound_c - 1001.0).abs() < 1.0);
}

/// Pseudoinverse from the Gram eigendecomposition, `(T*T)⁺ T*`.
fn oracle_pinv(t: &CMat) -> CMat {
    let g = t.adjoint() * t;
    let e = g.clone().symmetric_eigen();
    let top = e.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x));
    let mut inv = CMat::zeros(g.nrows(), g.ncols());
    for (i, &lambda) in e.eigenvalues.iter().enumerate() {
        if lambda > top * 1e-14 && lambda > 0.0 {
            let v = e.eigenvectors.column(i);
            inv += v * v.adjoint() * scalar(1.0 / lambda);
        }
    }
    inv * t.adjoint()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cosine_and_modulus_are_complementary(seed: u64, n in 2usize..30) {
        let mut rng = instance_rng(seed, 20);
        let dm = 1 + (seed as usize) % (n - 1);
        let dn = 1 + (seed as usize / 7) % (n - dm);
        let (qm, qn) = random_subspace_pair(&mut rng, n, dm, dn);
        let amb = ModuleAmbient::new(&AlgebraShape::trivial(), n);
        let m = Submodule::span_coords(&amb, &qm).unwrap();
        let nn = Submodule::span_coords(&amb, &qn).unwrap();
        let a = dixmier_angle(&m, &nn).unwrap();
        let r = closed_sum_report(&m, &nn, seed, 200).unwrap();
        prop_assert!(r.pythagoras_residual() <= 1e-8);
        prop_assert!((a.c0 - a.c0_supremum).abs() <= 1e-8);
        // c0² is the top eigenvalue of Q_N* P_M Q_N.
        let pm = m.basis() * m.basis().adjoint();
        let h = nn.basis().adjoint() * pm * nn.basis();
        let top = h.symmetric_eigen().eigenvalues.iter().fold(0.0f64, |x, &y| x.max(y));
        prop_assert!((a.c0 * a.c0 - top).abs() <= 1e-8);
        prop_assert_eq!(r.violations, 0);
    }

    #[test]
    fn bouldin_margins_are_adjoint_symmetric(seed: u64, s in 0usize..4, m in 1usize..3) {
        let shape = shapes()[s].clone();
        let mut rng = instance_rng(seed, 21);
        let f = random_map(&mut rng, &shape, m, m).unwrap();
        let d = random_map(&mut rng, &shape, m, m).unwrap();
        let r = bouldin_criterion(&f, &d, seed, 50).unwrap();
        let dual = bouldin_criterion(&d.adjoint(), &f.adjoint(), seed, 50).unwrap();
        for (a, b) in [(r.margin_p, dual.margin_p), (r.margin_q, dual.margin_q)] {
            prop_assert!(a == b || (a - b).abs() <= 1e-8, "{} vs {}", a, b);
        }
        prop_assert!(r.bridge_agrees);
    }

    #[test]
    fn orthogonal_generalized_inverse_is_pseudoinverse(seed: u64, rows in 1usize..7, cols in 1usize..7) {
        let mut rng = instance_rng(seed, 22);
        let rank = (seed as usize) % (rows.min(cols) + 1);
        let t = low_rank_matrix(&mut rng, rows, cols, rank);
        let r = make_regular_orthogonal(&t).unwrap();
        let diff = max_abs(&(&r.t_prime - oracle_pinv(&t)));
        prop_assert!(diff <= 1e-9, "diff {}", diff);
        prop_assert_eq!(r.index(), cols as i64 - rows as i64);
        prop_assert_eq!(generalized_weyl_banach(&r), rows == cols);
    }

    #[test]
    fn oblique_generalized_inverse_residuals(seed: u64, rows in 2usize..7, cols in 2usize..7) {
        let mut rng = instance_rng(seed, 23);
        let rank = 1 + (seed as usize) % rows.min(cols);
        let t = low_rank_matrix(&mut rng, rows, cols, rank);
        let ker = Subspace::kernel_of(&t, 1.0);
        let im = Subspace::span(&t, 1.0);
        let kc = random_oblique_complement(&mut rng, &ker, 0.7);
        let ic = random_oblique_complement(&mut rng, &im, 0.7);
        let r = make_regular(&t, &kc, &ic).unwrap();
        prop_assume!(r.projection_norm() <= 1e4);
        prop_assert!(r.residuals.max() <= 1e-9 * r.projection_norm().max(1.0));
        let tt = &t * &r.t_prime * &t;
        prop_assert!(max_abs(&(&tt - &t)) <= 1e-9 * r.projection_norm());
    }

    #[test]
    fn finite_rank_perturbation_dimension_identity(seed: u64) {
        let mut rng = instance_rng(seed, 24);
        let t = low_rank_matrix(&mut rng, 4, 5, 3);
        let u = random_isometry(&mut rng, 4, 1);
        let v = random_isometry(&mut rng, 5, 1);
        let f = u * v.adjoint();
        let reg = make_regular_orthogonal(&t).unwrap();
        let r = banach_perturbation_orthogonal(&reg, &f).unwrap();
        prop_assert_eq!(r.f_rank, 1);
        prop_assert_eq!(r.dim_ker_sum as i64 - r.codim_im_sum as i64, 1);
        prop_assert_eq!(r.dim_ker_t as i64 - r.codim_im_t as i64, 1);
        prop_assert_eq!(r.dim_ker_sum, 5 - oracle_rank(&(&t + &f)));
    }
}
