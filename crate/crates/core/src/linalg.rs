//! Dense complex numerics shared by every module: SVD with recorded rank
//! decisions, orthonormal subspaces, principal angles and oblique projections.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tol::tolerances;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;


/// How confidently a rank decision was made.
///
/// `kept` is the smallest retained singular value and `dropped` the largest
/// discarded one, both relative to the reference scale of the decision.
/// Aggregating margins takes the worst of each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Margin {
    pub kept: f64,
    pub dropped: f64,
}

impl Margin {
    pub const EXACT: Margin = Margin {
        kept: f64::INFINITY,
        dropped: 0.0,
    };

    pub fn worst(self, other: Margin) -> Margin {
        Margin {
            kept: self.kept.min(other.kept),
            dropped: self.dropped.max(other.dropped),
        }
    }

    pub fn worst_of<I: IntoIterator<Item = Margin>>(it: I) -> Margin {
        it.into_iter().fold(Margin::EXACT, Margin::worst)
    }
}

impl Default for Margin {
    fn default() -> Self {
        Margin::EXACT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RankDecision {
    pub rank: usize,
    pub margin: Margin,
}

/// Numerical rank of a descending list of singular values.
///
/// The threshold is `rank_tol * max(σ₁, scale) * dim`; `scale` lets callers
/// anchor the decision to the size of the inputs when the matrix itself may
/// be a roundoff-level zero.
pub fn decide_rank(svals: &[f64], scale: f64, dim: usize) -> RankDecision {
    let top = svals.first().copied().unwrap_or(0.0);
    let reference = top.max(scale);
    if reference <= 0.0 || !reference.is_finite() {
        return RankDecision {
            rank: 0,
            margin: Margin::EXACT,
        };
    }
    let threshold = tolerances().rank_tol * reference * dim.max(1) as f64;
    let rank = svals.iter().take_while(|&&s| s > threshold).count();
    let kept = if rank > 0 {
        svals[rank - 1] / reference
    } else {
        f64::INFINITY
    };
    let dropped = svals.get(rank).map_or(0.0, |s| s / reference);
    RankDecision {
        rank,
        margin: Margin { kept, dropped },
    }
}

/// Singular value decomposition with descending singular values.
///
/// `v` always holds a full unitary set of right singular vectors
/// (`ncols × ncols`), so that null spaces can be read off directly. Columns
/// of `u` are only meaningful for nonzero singular values.
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

pub fn svd(m: &CMat) -> Svd {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Svd {
            u: CMat::zeros(r, 0),
            s: Vec::new(),
            v: CMat::identity(c, c),
        };
    }
    let a = to_faer(m);
    // The thin decomposition of a tall matrix still has a square V; a wide
    // matrix needs the full one to expose its whole null space.
    let d = if r >= c { a.thin_svd() } else { a.svd() }.expect("SVD converges");
    Svd {
        u: from_faer(d.U()),
        s: d.S().column_vector().iter().map(|z| z.re).collect(),
        v: from_faer(d.V()),
    }
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("SVD converges")
}

fn to_faer(m: &CMat) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Spectral norm; zero for empty matrices.
pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Reduced minimum modulus: smallest singular value above the rank
/// threshold, `+∞` for a numerically zero matrix.
pub fn reduced_min_modulus(m: &CMat) -> f64 {
    let s = singular_values(m);
    let d = decide_rank(&s, 0.0, m.nrows().max(m.ncols()));
    if d.rank == 0 {
        f64::INFINITY
    } else {
        s[d.rank - 1]
    }
}

/// Moore–Penrose pseudoinverse through the SVD.
pub fn pinv(m: &CMat, scale: f64) -> (CMat, RankDecision) {
    let (r, c) = m.shape();
    let d = svd(m);
    let decision = decide_rank(&d.s, scale, r.max(c));
    let mut out = CMat::zeros(c, r);
    for i in 0..decision.rank {
        let ui = d.u.column(i);
        let vi = d.v.column(i);
        out += (vi * ui.adjoint()) * C64::new(1.0 / d.s[i], 0.0);
    }
    (out, decision)
}

/// Identity matrix of size n.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn scalar(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Relative difference `‖a − b‖ / max(‖a‖, ‖b‖)`, zero when both vanish.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    let num = (a - b).norm();
    let den = a.norm().max(b.norm());
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A linear subspace of `C^n`, stored as an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: CMat,
    margin: Margin,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: CMat::zeros(ambient, 0),
            margin: Margin::EXACT,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: eye(ambient),
            margin: Margin::EXACT,
        }
    }

    /// Wraps columns already known to be orthonormal.
    pub fn from_orthonormal(basis: CMat) -> Self {
        Subspace {
            basis,
            margin: Margin::EXACT,
        }
    }

    /// Column span of `vectors`.
    pub fn span(vectors: &CMat, scale: f64) -> Self {
        let n = vectors.nrows();
        if vectors.ncols() == 0 {
            return Subspace::zero(n);
        }
        let d = svd(vectors);
        let decision = decide_rank(&d.s, scale, n.max(vectors.ncols()));
        Subspace {
            basis: d.u.columns(0, decision.rank).into_owned(),
            margin: decision.margin,
        }
    }

    /// Null space of `m` (a subspace of its domain).
    pub fn kernel_of(m: &CMat, scale: f64) -> Self {
        let c = m.ncols();
        if m.nrows() == 0 {
            return Subspace::full(c);
        }
        let d = svd(m);
        let decision = decide_rank(&d.s, scale, m.nrows().max(c));
        Subspace {
            basis: d.v.columns(decision.rank, c - decision.rank).into_owned(),
            margin: decision.margin,
        }
    }

    /// Range of `m` (a subspace of its codomain).
    pub fn image_of(m: &CMat, scale: f64) -> Self {
        Subspace::span(m, scale)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn margin(&self) -> Margin {
        self.margin
    }

    pub(crate) fn with_margin(mut self, m: Margin) -> Self {
        self.margin = self.margin.worst(m);
        self
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> CMat {
        &self.basis * self.basis.adjoint()
    }

    /// Orthogonal complement in the ambient space.
    pub fn complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim());
        }
        Subspace::kernel_of(&self.basis.adjoint(), 1.0).with_margin(self.margin)
    }

    /// Image of the subspace under `m`.
    pub fn mapped(&self, m: &CMat, scale: f64) -> Subspace {
        Subspace::span(&(m * &self.basis), scale).with_margin(self.margin)
    }

    /// Vectors of `self` orthogonal to `other`, i.e. `self ∩ other^⊥`.
    pub fn minus(&self, other: &Subspace) -> Subspace {
        if other.dim() == 0 || self.dim() == 0 {
            return self.clone();
        }
        let g = other.basis.adjoint() * &self.basis;
        let k = Subspace::kernel_of(&g, 1.0);
        Subspace {
            basis: &self.basis * k.basis(),
            margin: self.margin.worst(other.margin).worst(k.margin),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.sum_and_intersection(other).0
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.sum_and_intersection(other).1
    }

    /// `(self + other, self ∩ other)` from a single SVD of `[Q₁ | −Q₂]`, so
    /// that `dim(sum) + dim(intersection) = dim self + dim other` exactly.
    pub fn sum_and_intersection(&self, other: &Subspace) -> (Subspace, Subspace) {
        let n = self.ambient_dim();
        assert_eq!(n, other.ambient_dim(), "subspaces of different spaces");
        let (d1, d2) = (self.dim(), other.dim());
        if d1 == 0 || d2 == 0 {
            let s = if d1 == 0 { other.clone() } else { self.clone() };
            return (s, Subspace::zero(n));
        }
        let mut stacked = CMat::zeros(n, d1 + d2);
        stacked.columns_mut(0, d1).copy_from(&self.basis);
        stacked
            .columns_mut(d1, d2)
            .copy_from(&(-other.basis.clone()));
        let d = svd(&stacked);
        let decision = decide_rank(&d.s, 1.0, n.max(d1 + d2));
        let inherited = self.margin.worst(other.margin).worst(decision.margin);
        let rank = decision.rank.min(n);
        let sum = Subspace {
            basis: d.u.columns(0, rank).into_owned(),
            margin: inherited,
        };
        let null = d.v.columns(decision.rank, d1 + d2 - decision.rank);
        let raw = (&self.basis * null.rows(0, d1)) * scalar(std::f64::consts::SQRT_2);
        // The kernel vectors are orthonormal up to the √2 scaling; polar
        // re-orthonormalisation keeps every column.
        let inter = if raw.ncols() == 0 {
            Subspace::zero(n)
        } else {
            let dd = svd(&raw);
            Subspace {
                basis: &dd.u.columns(0, raw.ncols()) * dd.v.adjoint(),
                margin: inherited,
            }
        };
        (sum, inter)
    }

    /// Cosines of the principal angles, descending.
    pub fn cosines(&self, other: &Subspace) -> Vec<f64> {
        singular_values(&(self.basis.adjoint() * &other.basis))
            .into_iter()
            .map(|c| c.min(1.0))
            .collect()
    }

    /// Principal angles in radians, ascending.
    pub fn principal_angles(&self, other: &Subspace) -> Vec<f64> {
        self.cosines(other).into_iter().map(f64::acos).collect()
    }

    /// Largest distance from a unit vector of `other` to `self`, i.e. the
    /// sine of the largest principal angle when `other` lies within a
    /// space of the same dimension. Computed from sines to stay accurate for
    /// tiny angles.
    pub fn gap_from(&self, other: &Subspace) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        let resid = &other.basis - &self.basis * (self.basis.adjoint() * &other.basis);
        spectral_norm(&resid).min(1.0)
    }

    /// Sine of the largest principal angle, `1` when dimensions differ.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() {
            return 1.0;
        }
        self.gap_from(other).max(other.gap_from(self))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.gap_from(other) <= tolerances().angle_tol.sin()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.distance(other) <= tolerances().angle_tol.sin()
    }

    /// Residual of `vectors` outside the subspace, Frobenius.
    pub fn residual_of(&self, vectors: &CMat) -> f64 {
        (vectors - &self.basis * (self.basis.adjoint() * vectors)).norm()
    }
}

/// Idempotent onto one subspace along a complementary one.
#[derive(Clone, Debug)]
pub struct ObliqueProjector {
    pub matrix: CMat,
    /// Operator norm of the idempotent; `1` for orthogonal splittings.
    pub norm: f64,
}

/// Projection onto `onto` along `along`; the two must be algebraic
/// complements of each other.
pub fn oblique_projection(onto: &Subspace, along: &Subspace) -> Result<ObliqueProjector> {
    let n = onto.ambient_dim();
    if along.ambient_dim() != n {
        return Err(Error::ShapeMismatch(format!(
            "projection spaces live in C^{} and C^{}",
            n,
            along.ambient_dim()
        )));
    }
    if onto.dim() + along.dim() != n {
        return Err(Error::UnmetHypothesis(format!(
            "dimensions {} + {} do not fill C^{}",
            onto.dim(),
            along.dim(),
            n
        )));
    }
    if onto.dim() == 0 {
        return Ok(ObliqueProjector {
            matrix: CMat::zeros(n, n),
            norm: 0.0,
        });
    }
    let w = along.complement();
    let g = w.basis().adjoint() * onto.basis();
    let s = singular_values(&g);
    let smin = s.last().copied().unwrap_or(0.0);
    if smin <= tolerances().rank_tol * n as f64 {
        return Err(Error::UnmetHypothesis(format!(
            "subspaces intersect nontrivially (cosine gap {smin:.3e})"
        )));
    }
    let ginv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::UnmetHypothesis("singular splitting".into()))?;
    Ok(ObliqueProjector {
        matrix: onto.basis() * ginv * w.basis().adjoint(),
        norm: 1.0 / smin,
    })
}

/// Whether `a ⊕̃ b` fills the ambient space (trivial intersection, full sum).
pub fn is_algebraic_complement(a: &Subspace, b: &Subspace) -> bool {
    if a.dim() + b.dim() != a.ambient_dim() {
        return false;
    }
    let (sum, inter) = a.sum_and_intersection(b);
    inter.dim() == 0 && sum.dim() == a.ambient_dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[f64]) -> CMat {
        CMat::from_iterator(v.len(), 1, v.iter().map(|&x| scalar(x)))
    }

    #[test]
    fn kernel_of_wide_matrix_is_complete() {
        let m = CMat::from_row_slice(1, 3, &[scalar(1.0), scalar(1.0), scalar(0.0)]);
        let k = Subspace::kernel_of(&m, 0.0);
        assert_eq!(k.dim(), 2);
        assert!((m * k.basis()).norm() < 1e-14);
    }

    #[test]
    fn dimension_identity_for_sum_and_intersection() {
        let a = Subspace::span(&CMat::from_columns(&[col(&[1., 0., 0.]).column(0), col(&[0., 1., 0.]).column(0)]), 1.0);
        let b = Subspace::span(&CMat::from_columns(&[col(&[0., 1., 0.]).column(0), col(&[0., 0., 1.]).column(0)]), 1.0);
        let (s, i) = a.sum_and_intersection(&b);
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert!(i.basis()[(1, 0)].norm() > 1.0 - 1e-12);
    }

    #[test]
    fn tiny_angles_are_resolved_by_sines() {
        let t = 1e-9_f64;
        let a = Subspace::span(&col(&[1., 0.]), 1.0);
        let b = Subspace::span(&col(&[t.cos(), t.sin()]), 1.0);
        assert!((a.distance(&b) - t.sin()).abs() < 1e-20);
        assert!(a.same_as(&b));
    }

    #[test]
    fn oblique_projection_is_idempotent() {
        let onto = Subspace::span(&col(&[1., 0.]), 1.0);
        let along = Subspace::span(&col(&[1., 1.]), 1.0);
        let e = oblique_projection(&onto, &along).unwrap();
        assert!((&e.matrix * &e.matrix - &e.matrix).norm() < 1e-14);
        assert!((e.norm - 2f64.sqrt()).abs() < 1e-12);
        assert!(oblique_projection(&onto, &onto).is_err());
    }

    #[test]
    fn pinv_of_rank_deficient_diagonal() {
        let m = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![scalar(1.0), scalar(0.0)]));
        let (p, d) = pinv(&m, 0.0);
        assert_eq!(d.rank, 1);
        assert!((p - m).norm() < 1e-15);
    }
}
