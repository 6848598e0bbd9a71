//! Adjointable A-linear maps `A^m → A^n`.
//!
//! A map is an `n × m` matrix of algebra elements acting by left
//! multiplication. On block `b` it is a single complex matrix `F_b` of size
//! `(n·n_b) × (m·n_b)` acting on the stacked matrices `X_b`, and on
//! coordinates it is `blockdiag_b(I_{n_b} ⊗ F_b)`. Spectral questions are
//! answered blockwise, which keeps kernels and images exactly invariant.

use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::{decide_rank, pinv, singular_values, svd, CMat, Margin, Subspace, C64};
use crate::module::{ModuleAmbient, ModuleVector, Submodule};

/// Relative residual above which a dense matrix is not A-linear.
const LINEARITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct AdjointableMap {
    shape: AlgebraShape,
    domain: usize,
    codomain: usize,
    reduced: Vec<CMat>,
    dense: OnceLock<CMat>,
}

/// Singular values of the coordinate realization and the derived rank data.
#[derive(Clone, Debug, Serialize)]
pub struct SingularData {
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// Smallest singular value above the rank threshold; `+∞` for zero.
    pub gamma: f64,
    pub margin: Margin,
}

impl PartialEq for AdjointableMap {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && self.domain == other.domain
            && self.codomain == other.codomain
            && self.reduced == other.reduced
    }
}

impl AdjointableMap {
    /// `entries[i][j]` is the `(i, j)` entry; `codomain` rows of `domain`
    /// elements each.
    pub fn new(
        shape: &AlgebraShape,
        domain: usize,
        codomain: usize,
        entries: &[Vec<AlgebraElement>],
    ) -> Result<Self> {
        if entries.len() != codomain || entries.iter().any(|r| r.len() != domain) {
            return Err(Error::ShapeMismatch(format!(
                "expected {codomain}x{domain} entries"
            )));
        }
        if entries.iter().flatten().any(|e| e.shape() != shape) {
            return Err(Error::ShapeMismatch("entries over a different algebra".into()));
        }
        let reduced = (0..shape.num_blocks())
            .map(|b| {
                let n = shape.block(b);
                let mut f = CMat::zeros(codomain * n, domain * n);
                for (i, row) in entries.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        f.view_mut((i * n, j * n), (n, n)).copy_from(e.block(b));
                    }
                }
                f
            })
            .collect();
        Ok(Self::from_reduced_unchecked(shape, domain, codomain, reduced))
    }

    /// Builds a map from its per-block matrices `F_b`.
    pub fn from_reduced(
        shape: &AlgebraShape,
        domain: usize,
        codomain: usize,
        reduced: Vec<CMat>,
    ) -> Result<Self> {
        if reduced.len() != shape.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "{} block matrices for shape {shape}",
                reduced.len()
            )));
        }
        for (b, f) in reduced.iter().enumerate() {
            let n = shape.block(b);
            if f.shape() != (codomain * n, domain * n) {
                return Err(Error::ShapeMismatch(format!(
                    "block {b} matrix is {:?}, expected {}x{}",
                    f.shape(),
                    codomain * n,
                    domain * n
                )));
            }
        }
        Ok(Self::from_reduced_unchecked(shape, domain, codomain, reduced))
    }

    fn from_reduced_unchecked(
        shape: &AlgebraShape,
        domain: usize,
        codomain: usize,
        reduced: Vec<CMat>,
    ) -> Self {
        AdjointableMap {
            shape: shape.clone(),
            domain,
            codomain,
            reduced,
            dense: OnceLock::new(),
        }
    }

    /// Recovers a map from a coordinate matrix, rejecting matrices that do
    /// not commute with the right action.
    pub fn from_realization(
        shape: &AlgebraShape,
        domain: usize,
        codomain: usize,
        dense: &CMat,
    ) -> Result<Self> {
        let dom = ModuleAmbient::new(shape, domain);
        let cod = ModuleAmbient::new(shape, codomain);
        if dense.shape() != (cod.dim(), dom.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "realization is {:?}, expected {}x{}",
                dense.shape(),
                cod.dim(),
                dom.dim()
            )));
        }
        let reduced = (0..shape.num_blocks())
            .map(|b| {
                let n = shape.block(b);
                let (rs, cs) = (codomain * n, domain * n);
                let mut f = CMat::zeros(rs, cs);
                for c in 0..n {
                    f += dense.view(
                        (cod.block_offset(b) + c * rs, dom.block_offset(b) + c * cs),
                        (rs, cs),
                    );
                }
                f / C64::new(n as f64, 0.0)
            })
            .collect();
        let map = Self::from_reduced_unchecked(shape, domain, codomain, reduced);
        let resid = (map.realization() - dense).norm();
        let scale = dense.norm();
        if resid > LINEARITY_TOL * scale.max(f64::MIN_POSITIVE) && resid > 0.0 {
            return Err(Error::InvarianceViolation(format!(
                "matrix is not A-linear (relative residual {:.3e})",
                resid / scale
            )));
        }
        Ok(map)
    }

    pub fn identity(shape: &AlgebraShape, m: usize) -> Self {
        let reduced = shape
            .blocks()
            .iter()
            .map(|&n| CMat::identity(m * n, m * n))
            .collect();
        Self::from_reduced_unchecked(shape, m, m, reduced)
    }

    pub fn zero(shape: &AlgebraShape, domain: usize, codomain: usize) -> Self {
        let reduced = shape
            .blocks()
            .iter()
            .map(|&n| CMat::zeros(codomain * n, domain * n))
            .collect();
        Self::from_reduced_unchecked(shape, domain, codomain, reduced)
    }

    /// Left multiplication by `a` on `A¹`.
    pub fn from_element(a: &AlgebraElement) -> Self {
        Self::from_reduced_unchecked(a.shape(), 1, 1, a.blocks().to_vec())
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn domain_rank(&self) -> usize {
        self.domain
    }

    pub fn codomain_rank(&self) -> usize {
        self.codomain
    }

    pub fn domain(&self) -> ModuleAmbient {
        ModuleAmbient::new(&self.shape, self.domain)
    }

    pub fn codomain(&self) -> ModuleAmbient {
        ModuleAmbient::new(&self.shape, self.codomain)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// Per-block matrices `F_b`.
    pub fn reduced(&self) -> &[CMat] {
        &self.reduced
    }

    pub fn entry(&self, i: usize, j: usize) -> AlgebraElement {
        let blocks = self
            .reduced
            .iter()
            .enumerate()
            .map(|(b, f)| {
                let n = self.shape.block(b);
                f.view((i * n, j * n), (n, n)).into_owned()
            })
            .collect();
        AlgebraElement::from_blocks(&self.shape, blocks).expect("blocks conform")
    }

    pub fn entries(&self) -> Vec<Vec<AlgebraElement>> {
        (0..self.codomain)
            .map(|i| (0..self.domain).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Coordinate matrix `blockdiag_b(I_{n_b} ⊗ F_b)`, computed once.
    pub fn realization(&self) -> &CMat {
        self.dense.get_or_init(|| {
            let dom = self.domain();
            let cod = self.codomain();
            let mut out = CMat::zeros(cod.dim(), dom.dim());
            for (b, f) in self.reduced.iter().enumerate() {
                let n = self.shape.block(b);
                let (rs, cs) = f.shape();
                for c in 0..n {
                    out.view_mut(
                        (cod.block_offset(b) + c * rs, dom.block_offset(b) + c * cs),
                        (rs, cs),
                    )
                    .copy_from(f);
                }
            }
            out
        })
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "maps over {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let reduced = self.reduced.iter().map(|f| f.adjoint()).collect();
        Self::from_reduced_unchecked(&self.shape, self.codomain, self.domain, reduced)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        if self.domain != other.codomain {
            return Err(Error::RankMismatch(format!(
                "cannot compose A^{} → A^{} after A^{} → A^{}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        let reduced = self.reduced.iter().zip(&other.reduced).map(|(f, g)| f * g).collect();
        Ok(Self::from_reduced_unchecked(&self.shape, other.domain, self.codomain, reduced))
    }

    fn check_same_type(&self, other: &Self) -> Result<()> {
        self.same_algebra(other)?;
        if (self.domain, self.codomain) != (other.domain, other.codomain) {
            return Err(Error::RankMismatch(format!(
                "maps A^{} → A^{} and A^{} → A^{}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        let reduced = self.reduced.iter().zip(&other.reduced).map(|(f, g)| f + g).collect();
        Ok(Self::from_reduced_unchecked(&self.shape, self.domain, self.codomain, reduced))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: C64) -> Self {
        let reduced = self.reduced.iter().map(|f| f * z).collect();
        Self::from_reduced_unchecked(&self.shape, self.domain, self.codomain, reduced)
    }

    /// `F^k` for an endomorphism; `F^0` is the identity.
    pub fn power(&self, k: u32) -> Result<Self> {
        if !self.is_endomorphism() {
            return Err(Error::RankMismatch("powers need an endomorphism".into()));
        }
        let mut acc = Self::identity(&self.shape, self.domain);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        if x.shape() != &self.shape || x.rank() != self.domain {
            return Err(Error::ShapeMismatch(format!(
                "vector of {} fed to a map on {}",
                x.ambient(),
                self.domain()
            )));
        }
        let y = self.realization() * x.to_coords();
        ModuleVector::from_coords(&self.codomain(), &y)
    }

    /// Operator norm, the largest singular value over the blocks.
    pub fn norm(&self) -> f64 {
        self.reduced
            .iter()
            .map(|f| singular_values(f).first().copied().unwrap_or(0.0))
            .fold(0.0, f64::max)
    }

    fn dense_dim(&self) -> usize {
        self.domain().dim().max(self.codomain().dim())
    }

    /// Kernel with the rank decision anchored at `‖F‖` (or `scale` if larger).
    pub fn kernel_scaled(&self, scale: f64) -> Submodule {
        let reference = self.norm().max(scale);
        let dim = self.dense_dim();
        let spaces: Vec<Subspace> = self
            .reduced
            .iter()
            .map(|f| {
                let d = svd(f);
                let decision = decide_rank(&d.s, reference, dim);
                let c = f.ncols();
                Subspace::from_orthonormal(d.v.columns(decision.rank, c - decision.rank).into_owned())
                    .with_margin(decision.margin)
            })
            .collect();
        Submodule::from_block_spaces(&self.domain(), &spaces)
    }

    pub fn image_scaled(&self, scale: f64) -> Submodule {
        let reference = self.norm().max(scale);
        let dim = self.dense_dim();
        let spaces: Vec<Subspace> = self
            .reduced
            .iter()
            .map(|f| {
                let d = svd(f);
                let decision = decide_rank(&d.s, reference, dim);
                Subspace::from_orthonormal(d.u.columns(0, decision.rank).into_owned())
                    .with_margin(decision.margin)
            })
            .collect();
        Submodule::from_block_spaces(&self.codomain(), &spaces)
    }

    pub fn kernel(&self) -> Submodule {
        self.kernel_scaled(0.0)
    }

    pub fn image(&self) -> Submodule {
        self.image_scaled(0.0)
    }

    /// `F(N)` for a submodule `N` of the domain.
    pub fn image_of(&self, n: &Submodule) -> Result<Submodule> {
        self.image_of_scaled(n, self.norm())
    }

    /// `F(N)` with rank decisions relative to `max(‖F‖, scale)`.
    pub fn image_of_scaled(&self, n: &Submodule, scale: f64) -> Result<Submodule> {
        let reference = self.norm().max(scale);
        if n.ambient() != &self.domain() {
            return Err(Error::ShapeMismatch(format!(
                "submodule of {} mapped by a map on {}",
                n.ambient(),
                self.domain()
            )));
        }
        let spaces: Vec<Subspace> = (0..self.shape.num_blocks())
            .map(|b| {
                let v = n.block_space(b);
                let img = &self.reduced[b] * v.basis();
                let d = svd(&img);
                let decision = decide_rank(&d.s, reference, self.dense_dim());
                Subspace::from_orthonormal(d.u.columns(0, decision.rank).into_owned())
                    .with_margin(decision.margin.worst(v.margin()))
            })
            .collect();
        Ok(Submodule::from_block_spaces(&self.codomain(), &spaces))
    }

    /// `F` restricted to `N`, as a matrix from an orthonormal basis of `N`
    /// into codomain coordinates.
    pub fn restricted_to(&self, n: &Submodule) -> CMat {
        self.realization() * n.basis()
    }

    pub fn singular_data(&self) -> SingularData {
        let mut all = Vec::new();
        for (b, f) in self.reduced.iter().enumerate() {
            let n = self.shape.block(b);
            for s in singular_values(f) {
                all.extend(std::iter::repeat_n(s, n));
            }
        }
        all.sort_by(|a, b| b.total_cmp(a));
        // Pad with the structural zeros of a rectangular realization.
        let full = self.domain().dim().min(self.codomain().dim());
        all.resize(full, 0.0);
        let decision = decide_rank(&all, 0.0, self.dense_dim());
        let gamma = if decision.rank == 0 {
            f64::INFINITY
        } else {
            all[decision.rank - 1]
        };
        SingularData {
            singular_values: all,
            rank: decision.rank,
            gamma,
            margin: decision.margin,
        }
    }

    /// Reduced minimum modulus `γ(F)`.
    pub fn reduced_min_modulus(&self) -> f64 {
        self.singular_data().gamma
    }

    pub fn pseudoinverse(&self) -> Self {
        let reference = self.norm();
        let reduced = self.reduced.iter().map(|f| pinv(f, reference).0).collect();
        Self::from_reduced_unchecked(&self.shape, self.codomain, self.domain, reduced)
    }

    /// Orthogonal projection onto a submodule, as an A-linear map.
    pub fn orthogonal_projection(n: &Submodule) -> Self {
        let amb = n.ambient();
        let reduced = (0..amb.shape.num_blocks())
            .map(|b| n.block_space(b).projector())
            .collect();
        Self::from_reduced_unchecked(&amb.shape, amb.rank, amb.rank, reduced)
    }

    /// Largest entrywise difference between realizations.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.reduced
            .iter()
            .zip(&other.reduced)
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖` in operator norm.
    pub fn distance(&self, other: &Self) -> f64 {
        self.reduced
            .iter()
            .zip(&other.reduced)
            .map(|(a, b)| singular_values(&(a - b)).first().copied().unwrap_or(0.0))
            .fold(0.0, f64::max)
    }
}
