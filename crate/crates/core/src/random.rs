//! Seeded generators for random test instances. Every instance draws from
//! its own ChaCha stream, `(seed, index)`, so results do not depend on the
//! order in which instances are evaluated.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::AlgebraShape;
use crate::banach::{make_regular, RegularOperator};
use crate::error::Result;
use crate::linalg::{scalar, CMat, Subspace, C64};
use crate::linmap::AdjointableMap;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Matrix with orthonormal columns, from the QR factor of a Gaussian matrix.
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    if cols == 0 {
        return CMat::zeros(rows, 0);
    }
    gaussian_matrix(rng, rows, cols).qr().q().columns(0, cols).into_owned()
}

/// `U diag(σ) V*` with singular values drawn from `[lo, hi]`.
pub fn conditioned_matrix(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize, lo: f64, hi: f64) -> CMat {
    let u = random_isometry(rng, rows, rank);
    let v = random_isometry(rng, cols, rank);
    let s = DVector::from_fn(rank, |_, _| scalar(rng.random_range(lo..=hi)));
    u * CMat::from_diagonal(&s) * v.adjoint()
}

/// Random matrix of the given rank with singular values in `[0.3, 3]`.
pub fn low_rank_matrix(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> CMat {
    conditioned_matrix(rng, rows, cols, rank.min(rows).min(cols), 0.3, 3.0)
}

/// A-linear map `A^domain → A^codomain` with the given reduced rank in each
/// block.
pub fn random_map_with_ranks(
    rng: &mut impl Rng,
    shape: &AlgebraShape,
    domain: usize,
    codomain: usize,
    ranks: &[usize],
) -> Result<AdjointableMap> {
    let reduced = shape
        .blocks()
        .iter()
        .zip(ranks)
        .map(|(&n, &r)| low_rank_matrix(rng, codomain * n, domain * n, r))
        .collect();
    AdjointableMap::from_reduced(shape, domain, codomain, reduced)
}

/// Random A-linear map whose block ranks are uniform in `[0, full]`, with a
/// bias towards rank deficiency.
pub fn random_map(rng: &mut impl Rng, shape: &AlgebraShape, domain: usize, codomain: usize) -> Result<AdjointableMap> {
    let ranks: Vec<usize> = shape
        .blocks()
        .iter()
        .map(|&n| {
            let full = domain.min(codomain) * n;
            if rng.random_bool(0.25) {
                full
            } else {
                rng.random_range(0..=full)
            }
        })
        .collect();
    random_map_with_ranks(rng, shape, domain, codomain, &ranks)
}

/// Random map whose reduced blocks have rank at most `max_rank`.
pub fn random_low_rank_map(
    rng: &mut impl Rng,
    shape: &AlgebraShape,
    domain: usize,
    codomain: usize,
    max_rank: usize,
) -> Result<AdjointableMap> {
    let ranks: Vec<usize> = shape
        .blocks()
        .iter()
        .map(|&n| rng.random_range(0..=max_rank.min(domain.min(codomain) * n)))
        .collect();
    random_map_with_ranks(rng, shape, domain, codomain, &ranks)
}

/// Nilpotent matrix of size `n` made of Jordan blocks of random sizes
/// (each at most `max_block`).
fn random_nilpotent(rng: &mut impl Rng, n: usize, max_block: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    let mut start = 0;
    while start < n {
        let size = rng.random_range(1..=max_block.min(n - start));
        for i in start..start + size - 1 {
            m[(i, i + 1)] = scalar(1.0);
        }
        start += size;
    }
    m
}

/// `(S, C ⊕ N)` with `C` well-conditioned invertible, `N` nilpotent and `S`
/// well-conditioned.
fn core_nilpotent_form(rng: &mut impl Rng, n: usize) -> (CMat, CMat) {
    let nil = if rng.random_bool(0.2) { 0 } else { rng.random_range(0..=n) };
    let core_dim = n - nil;
    let mut block = CMat::zeros(n, n);
    if core_dim > 0 {
        let c = conditioned_matrix(rng, core_dim, core_dim, core_dim, 0.5, 2.0);
        block.view_mut((0, 0), (core_dim, core_dim)).copy_from(&c);
    }
    if nil > 0 {
        let j = random_nilpotent(rng, nil, 4);
        block.view_mut((core_dim, core_dim), (nil, nil)).copy_from(&j);
    }
    (conditioned_matrix(rng, n, n, n, 0.5, 2.0), block)
}

fn conjugate(s: &CMat, b: &CMat) -> CMat {
    let s_inv = s.clone().try_inverse().expect("well-conditioned similarity");
    s * b * s_inv
}

/// `S (C ⊕ N) S⁻¹` as in [`core_nilpotent_form`].
pub fn random_drazin_matrix(rng: &mut impl Rng, n: usize) -> CMat {
    let (s, b) = core_nilpotent_form(rng, n);
    conjugate(&s, &b)
}

/// Endomorphism of `A^m` with a nontrivial core-nilpotent structure in
/// each block.
pub fn random_drazin_map(rng: &mut impl Rng, shape: &AlgebraShape, m: usize) -> Result<AdjointableMap> {
    let reduced = shape
        .blocks()
        .iter()
        .map(|&n| random_drazin_matrix(rng, m * n))
        .collect();
    AdjointableMap::from_reduced(shape, m, m, reduced)
}

/// Coefficients `c₀, …, c_d` of a polynomial of degree `d ≤ 3`; `c₀` is zero
/// half of the time so that the polynomial keeps singular arguments singular.
pub fn random_coefficients(rng: &mut impl Rng) -> Vec<C64> {
    let degree = rng.random_range(1..=3usize);
    let mut c = vec![C64::new(0.0, 0.0); degree + 1];
    if rng.random_bool(0.5) {
        c[0] = gaussian(rng);
    }
    for z in c.iter_mut().skip(1) {
        *z = gaussian(rng);
    }
    c
}

/// `Σ cₖ Bᵏ` by explicit powers.
pub fn evaluate_polynomial(coeffs: &[C64], b: &CMat) -> CMat {
    let n = b.nrows();
    let mut power = CMat::identity(n, n);
    let mut acc = CMat::zeros(n, n);
    for (k, &c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = &power * b;
        }
        acc += &power * c;
    }
    acc
}

/// Two polynomials in one random endomorphism `G = S (C ⊕ N) S⁻¹`. Both
/// are evaluated on `C ⊕ N` before conjugating, so a polynomial that
/// annihilates `N` gives an exactly vanishing nilpotent part.
pub fn random_commuting_pair(
    rng: &mut impl Rng,
    shape: &AlgebraShape,
    m: usize,
) -> Result<(AdjointableMap, AdjointableMap)> {
    let forms: Vec<(CMat, CMat)> = shape.blocks().iter().map(|&n| core_nilpotent_form(rng, m * n)).collect();
    let pf = random_coefficients(rng);
    let pd = random_coefficients(rng);
    let build = |coeffs: &[C64]| {
        let reduced = forms.iter().map(|(s, b)| conjugate(s, &evaluate_polynomial(coeffs, b))).collect();
        AdjointableMap::from_reduced(shape, m, m, reduced)
    };
    Ok((build(&pf)?, build(&pd)?))
}

/// A complement of `space` tilted towards it: the orthogonal complement
/// `C` replaced by the span of `C + Q R`, with `Q` a basis of `space` and
/// `R` Gaussian of size `skew`.
pub fn random_oblique_complement(rng: &mut impl Rng, space: &Subspace, skew: f64) -> Subspace {
    let comp = space.complement();
    if comp.dim() == 0 || space.dim() == 0 {
        return comp;
    }
    let r = gaussian_matrix(rng, space.dim(), comp.dim()) * scalar(skew);
    Subspace::span(&(comp.basis() + space.basis() * r), 1.0)
}

/// Regular operator of the given shape and rank with oblique complements.
pub fn random_regular(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize, skew: f64) -> Result<RegularOperator> {
    let t = low_rank_matrix(rng, rows, cols, rank);
    let scale = crate::linalg::spectral_norm(&t);
    let ker = Subspace::kernel_of(&t, scale);
    let im = Subspace::image_of(&t, scale);
    let kc = random_oblique_complement(rng, &ker, skew);
    let ic = random_oblique_complement(rng, &im, skew);
    make_regular(&t, &kc, &ic)
}

/// Random subspaces of `C^n` of dimensions `dm`, `dn`, in general position.
pub fn random_subspace_pair(rng: &mut impl Rng, n: usize, dm: usize, dn: usize) -> (CMat, CMat) {
    (random_isometry(rng, n, dm), random_isometry(rng, n, dn))
}

/// Picks one of the shapes `C^k` (`k ∈ 2..=5`), `M_2` or `M_2 ⊕ M_3`.
pub fn random_shape(rng: &mut impl Rng, index: u64) -> AlgebraShape {
    match index % 3 {
        0 => AlgebraShape::commutative(rng.random_range(2..=5)),
        1 => AlgebraShape::matrix(2),
        _ => AlgebraShape::new(vec![2, 3]).expect("valid shape"),
    }
}
