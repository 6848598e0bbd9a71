//! Independent oracles: Hermitian eigenvalues of Gram matrices instead of
//! the SVD the library uses.

#![allow(dead_code)]

use cstar_core::algebra::{AlgebraElement, AlgebraShape};
use cstar_core::module::ModuleVector;
use cstar_core::random::{gaussian_matrix, low_rank_matrix};
use cstar_core::CMat;
use rand::Rng;

/// Squared singular values of `m`, descending.
pub fn gram_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let g = m.adjoint() * m;
    let mut ev: Vec<f64> = g.symmetric_eigen().eigenvalues.iter().map(|x| x.max(0.0)).collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

pub fn oracle_norm(m: &CMat) -> f64 {
    gram_eigenvalues(m).first().map_or(0.0, |x| x.sqrt())
}

/// Rank with singular values below `1e-7 ‖m‖` treated as zero. The random
/// generators keep nonzero singular values far above this.
pub fn oracle_rank(m: &CMat) -> usize {
    oracle_rank_scaled(m, oracle_norm(m))
}

/// Rank with singular values below `1e-7 scale` treated as zero.
pub fn oracle_rank_scaled(m: &CMat, scale: f64) -> usize {
    let floor = (scale * 1e-7).powi(2);
    gram_eigenvalues(m).iter().filter(|&&x| x > floor && x > 0.0).count()
}

/// Least `k` with `rank Fᵏ = rank Fᵏ⁺¹`, from explicit dense powers, each
/// rank-decided relative to `‖F‖ᵏ⁺¹`.
pub fn oracle_ascent(f: &CMat) -> usize {
    let n = f.nrows();
    let norm = oracle_norm(f);
    let mut power = CMat::identity(n, n);
    let mut rank = n;
    for k in 0..=n {
        let next = &power * f;
        let r = oracle_rank_scaled(&next, norm.powi(k as i32 + 1));
        if r == rank {
            return k;
        }
        rank = r;
        power = next;
    }
    n
}

pub fn random_element(rng: &mut impl Rng, shape: &AlgebraShape) -> AlgebraElement {
    let blocks = shape.blocks().iter().map(|&n| gaussian_matrix(rng, n, n)).collect();
    AlgebraElement::from_blocks(shape, blocks).unwrap()
}

/// Element whose blocks have random (possibly deficient) rank.
pub fn random_low_rank_element(rng: &mut impl Rng, shape: &AlgebraShape) -> AlgebraElement {
    let blocks = shape
        .blocks()
        .iter()
        .map(|&n| {
            let r = rng.random_range(0..=n);
            low_rank_matrix(rng, n, n, r)
        })
        .collect();
    AlgebraElement::from_blocks(shape, blocks).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, shape: &AlgebraShape, rank: usize) -> ModuleVector {
    let entries = (0..rank).map(|_| random_low_rank_element(rng, shape)).collect();
    ModuleVector::new(shape, entries).unwrap()
}

/// Per-block dimension count of a submodule basis: the rank of its rows in
/// the coordinates of block `b`, divided by `n_b`.
pub fn oracle_k0(shape: &AlgebraShape, rank: usize, basis: &CMat) -> Vec<i64> {
    let mut off = 0;
    shape
        .blocks()
        .iter()
        .map(|&n| {
            let len = rank * n * n;
            let rows = basis.rows(off, len).into_owned();
            off += len;
            // the basis is orthonormal, so its scale is 1
            let r = if rows.ncols() == 0 { 0 } else { oracle_rank_scaled(&rows, 1.0) };
            assert_eq!(r % n, 0, "block dimension {r} not divisible by {n}");
            (r / n) as i64
        })
        .collect()
}

pub fn shapes() -> Vec<AlgebraShape> {
    vec![
        AlgebraShape::trivial(),
        AlgebraShape::commutative(3),
        AlgebraShape::matrix(2),
        AlgebraShape::new(vec![2, 3]).unwrap(),
    ]
}
