//! Free Hilbert modules `A^m`, their submodules and K₀ bookkeeping.
//!
//! A vector of `A^m` has, for each block `b`, a stacked `(m·n_b) × n_b`
//! complex matrix `X_b` (the block-`b` parts of its m entries on top of each
//! other). The underlying coordinate space concatenates the column-major
//! vectorisations of the `X_b`, so the trace inner product `tr⟨x, y⟩` is the
//! standard inner product of coordinates and the right action of `a ∈ A`
//! is `X_b ↦ X_b a_b`.
//!
//! Submodules are right-invariant complex subspaces of that coordinate
//! space. For a single block, invariant subspaces are exactly the matrices
//! whose columns lie in a fixed subspace `V_b ⊆ ℂ^{m n_b}`, so the K₀ class
//! of a submodule is the vector `(dim V_b)_b`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::{CMat, Margin, Subspace, C64};
use crate::tol::tolerances;

/// Residual above which a subspace is rejected as not right-invariant.
const INVARIANCE_TOL: f64 = 1e-6;

/// The free module `A^m` over a given algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleAmbient {
    pub shape: AlgebraShape,
    pub rank: usize,
}

impl ModuleAmbient {
    pub fn new(shape: &AlgebraShape, rank: usize) -> Self {
        ModuleAmbient {
            shape: shape.clone(),
            rank,
        }
    }

    /// Complex dimension of the coordinate space.
    pub fn dim(&self) -> usize {
        self.rank * self.shape.dim()
    }

    pub(crate) fn block_offset(&self, b: usize) -> usize {
        self.rank * self.shape.blocks()[..b].iter().map(|n| n * n).sum::<usize>()
    }

    /// Coordinate of entry `(r, col)` of block `b` of the `i`-th component.
    pub(crate) fn coord(&self, b: usize, i: usize, r: usize, col: usize) -> usize {
        let n = self.shape.block(b);
        self.block_offset(b) + col * self.rank * n + i * n + r
    }

    /// Matrix of right multiplication by `a` on coordinates.
    pub fn right_action(&self, a: &AlgebraElement) -> CMat {
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for b in 0..self.shape.num_blocks() {
            let n = self.shape.block(b);
            let stack = self.rank * n;
            let ab = a.block(b);
            for t in 0..n {
                for s in 0..n {
                    let z = ab[(s, t)];
                    if z == C64::new(0.0, 0.0) {
                        continue;
                    }
                    // column t of X a gets z · column s of X
                    let dst = self.block_offset(b) + t * stack;
                    let src = self.block_offset(b) + s * stack;
                    for k in 0..stack {
                        out[(dst + k, src + k)] += z;
                    }
                }
            }
        }
        out
    }

    /// Right action of every matrix unit, applied to `v`.
    fn unit_translates(&self, v: &CMat) -> Vec<CMat> {
        let mut out = Vec::new();
        for b in 0..self.shape.num_blocks() {
            let n = self.shape.block(b);
            let stack = self.rank * n;
            for s in 0..n {
                for t in 0..n {
                    let mut w = CMat::zeros(v.nrows(), v.ncols());
                    let dst = self.block_offset(b) + t * stack;
                    let src = self.block_offset(b) + s * stack;
                    w.rows_mut(dst, stack).copy_from(&v.rows(src, stack));
                    out.push(w);
                }
            }
        }
        out
    }
}

impl fmt::Display for ModuleAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A^{} over A = {}", self.rank, self.shape)
    }
}

/// An element `(x_1, …, x_m)` of `A^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    shape: AlgebraShape,
    entries: Vec<AlgebraElement>,
}

impl ModuleVector {
    pub fn new(shape: &AlgebraShape, entries: Vec<AlgebraElement>) -> Result<Self> {
        if entries.iter().any(|e| e.shape() != shape) {
            return Err(Error::ShapeMismatch("module vector entries must share the algebra".into()));
        }
        Ok(ModuleVector {
            shape: shape.clone(),
            entries,
        })
    }

    /// `(0, …, 1_A, …, 0)` with the unit in position `i`.
    pub fn generator(shape: &AlgebraShape, rank: usize, i: usize) -> Self {
        let entries = (0..rank)
            .map(|j| {
                if j == i {
                    AlgebraElement::identity(shape)
                } else {
                    AlgebraElement::zero(shape)
                }
            })
            .collect();
        ModuleVector {
            shape: shape.clone(),
            entries,
        }
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn ambient(&self) -> ModuleAmbient {
        ModuleAmbient::new(&self.shape, self.rank())
    }

    pub fn to_coords(&self) -> CMat {
        let amb = self.ambient();
        let mut out = CMat::zeros(amb.dim(), 1);
        for (i, e) in self.entries.iter().enumerate() {
            for b in 0..self.shape.num_blocks() {
                let m = e.block(b);
                let n = self.shape.block(b);
                for col in 0..n {
                    for r in 0..n {
                        out[(amb.coord(b, i, r, col), 0)] = m[(r, col)];
                    }
                }
            }
        }
        out
    }

    pub fn from_coords(amb: &ModuleAmbient, v: &CMat) -> Result<Self> {
        if v.nrows() != amb.dim() || v.ncols() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "coordinate vector {:?} for {amb}",
                v.shape()
            )));
        }
        let shape = &amb.shape;
        let entries = (0..amb.rank)
            .map(|i| {
                let blocks = (0..shape.num_blocks())
                    .map(|b| {
                        let n = shape.block(b);
                        CMat::from_fn(n, n, |r, col| v[(amb.coord(b, i, r, col), 0)])
                    })
                    .collect();
                AlgebraElement::from_blocks(shape, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleVector::new(shape, entries)
    }

    /// Right multiplication `x · a`.
    pub fn right_mul(&self, a: &AlgebraElement) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(a))
            .collect::<Result<Vec<_>>>()?;
        ModuleVector::new(&self.shape, entries)
    }
}

/// A-valued inner product `⟨x, y⟩ = Σ x_i* y_i`.
pub fn inner_product(x: &ModuleVector, y: &ModuleVector) -> Result<AlgebraElement> {
    if x.shape != y.shape || x.rank() != y.rank() {
        return Err(Error::ShapeMismatch(format!(
            "inner product of vectors in {} and {}",
            x.ambient(),
            y.ambient()
        )));
    }
    let mut acc = AlgebraElement::zero(&x.shape);
    for (a, b) in x.entries.iter().zip(&y.entries) {
        acc = acc.add(&a.adjoint().mul(b)?)?;
    }
    Ok(acc)
}

/// Class in `K₀(A) ≅ ℤ^k`, one integer per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct K0Class {
    ranks: Vec<i64>,
}

impl K0Class {
    pub fn new(ranks: Vec<i64>) -> Self {
        K0Class { ranks }
    }

    pub fn zero(blocks: usize) -> Self {
        K0Class {
            ranks: vec![0; blocks],
        }
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.ranks.iter().all(|&r| r >= 0)
    }

    /// Componentwise `max(0, ·)`.
    pub fn positive_part(&self) -> Self {
        K0Class {
            ranks: self.ranks.iter().map(|&r| r.max(0)).collect(),
        }
    }

    /// Sum of a list of classes with the given block count.
    pub fn total<'a, I: IntoIterator<Item = &'a K0Class>>(blocks: usize, it: I) -> K0Class {
        it.into_iter().fold(K0Class::zero(blocks), |acc, c| &acc + c)
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        assert_eq!(self.ranks.len(), rhs.ranks.len(), "K0 classes of different algebras");
        K0Class {
            ranks: self.ranks.iter().zip(&rhs.ranks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        self + &(-rhs)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class {
            ranks: self.ranks.iter().map(|r| -r).collect(),
        }
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.ranks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// A right-invariant subspace of `A^m`.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: ModuleAmbient,
    space: Subspace,
}

impl Submodule {
    /// Wraps a subspace after checking right invariance.
    pub fn new(ambient: &ModuleAmbient, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != ambient.dim() {
            return Err(Error::ShapeMismatch(format!(
                "subspace of C^{} in {ambient} (dimension {})",
                space.ambient_dim(),
                ambient.dim()
            )));
        }
        let sm = Submodule {
            ambient: ambient.clone(),
            space,
        };
        let r = sm.invariance_residual();
        if r > INVARIANCE_TOL {
            return Err(Error::InvarianceViolation(format!(
                "subspace of {ambient} is not right-invariant (residual {r:.3e})"
            )));
        }
        Ok(sm)
    }

    pub(crate) fn trusted(ambient: &ModuleAmbient, space: Subspace) -> Self {
        Submodule {
            ambient: ambient.clone(),
            space,
        }
    }

    pub fn zero(ambient: &ModuleAmbient) -> Self {
        Submodule::trusted(ambient, Subspace::zero(ambient.dim()))
    }

    pub fn full(ambient: &ModuleAmbient) -> Self {
        Submodule::trusted(ambient, Subspace::full(ambient.dim()))
    }

    /// Smallest submodule containing the vectors.
    pub fn span(ambient: &ModuleAmbient, vectors: &[ModuleVector]) -> Result<Self> {
        if vectors.iter().any(|v| &v.ambient() != ambient) {
            return Err(Error::ShapeMismatch(format!("spanning vectors outside {ambient}")));
        }
        if vectors.is_empty() {
            return Ok(Submodule::zero(ambient));
        }
        let cols: Vec<CMat> = vectors.iter().map(|v| v.to_coords()).collect();
        let mut m = CMat::zeros(ambient.dim(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, &c.column(0));
        }
        Submodule::span_coords(ambient, &m)
    }

    /// Smallest submodule containing the columns of a coordinate matrix.
    pub fn span_coords(ambient: &ModuleAmbient, coords: &CMat) -> Result<Self> {
        let translates = ambient.unit_translates(coords);
        let total: usize = translates.iter().map(|t| t.ncols()).sum();
        let mut all = CMat::zeros(ambient.dim(), total);
        let mut j = 0;
        for t in &translates {
            all.columns_mut(j, t.ncols()).copy_from(t);
            j += t.ncols();
        }
        let scale = coords.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
        Submodule::new(ambient, Subspace::span(&all, scale))
    }

    /// The full `i`-th coordinate `A e_i`.
    pub fn coordinate(ambient: &ModuleAmbient, i: usize) -> Self {
        let g = ModuleVector::generator(&ambient.shape, ambient.rank, i);
        Submodule::span(ambient, &[g]).expect("generator lies in the ambient module")
    }

    /// Submodule whose block-`b` part is `{X_b : columns of X_b ∈ V_b}`,
    /// with `V_b ⊆ ℂ^{m n_b}` given per block.
    pub(crate) fn from_block_spaces(ambient: &ModuleAmbient, spaces: &[Subspace]) -> Self {
        let shape = &ambient.shape;
        let dim: usize = spaces
            .iter()
            .enumerate()
            .map(|(b, v)| v.dim() * shape.block(b))
            .sum();
        let mut basis = CMat::zeros(ambient.dim(), dim);
        let mut j = 0;
        for (b, v) in spaces.iter().enumerate() {
            let n = shape.block(b);
            let stack = ambient.rank * n;
            debug_assert_eq!(v.ambient_dim(), stack);
            for c in 0..n {
                let row = ambient.block_offset(b) + c * stack;
                basis
                    .view_mut((row, j), (stack, v.dim()))
                    .copy_from(v.basis());
                j += v.dim();
            }
        }
        let margin = Margin::worst_of(spaces.iter().map(|v| v.margin()));
        Submodule::trusted(ambient, Subspace::from_orthonormal(basis).with_margin(margin))
    }

    /// The column space `V_b ⊆ ℂ^{m n_b}` describing block `b`.
    pub(crate) fn block_space(&self, b: usize) -> Subspace {
        let n = self.ambient.shape.block(b);
        let stack = self.ambient.rank * n;
        let rows = self.basis().rows(self.ambient.block_offset(b), stack).into_owned();
        Subspace::span(&rows, 1.0).with_margin(self.margin())
    }

    pub fn ambient(&self) -> &ModuleAmbient {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &CMat {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn margin(&self) -> Margin {
        self.space.margin()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    /// Largest residual of a basis vector translated by a matrix unit.
    pub fn invariance_residual(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        self.ambient
            .unit_translates(self.space.basis())
            .iter()
            .map(|w| self.space.residual_of(w))
            .fold(0.0, f64::max)
    }

    /// K₀ class `(dim_ℂ(block-b part) / n_b)_b`.
    pub fn k0_class(&self) -> Result<K0Class> {
        let shape = &self.ambient.shape;
        let q = self.space.basis();
        let mut ranks = Vec::with_capacity(shape.num_blocks());
        let mut total = 0i64;
        for b in 0..shape.num_blocks() {
            let n = shape.block(b);
            let rows = self.ambient.rank * n * n;
            let off = self.ambient.block_offset(b);
            // For an invariant subspace the projector commutes with the
            // central block projection, so this trace is the block dimension.
            let tr = q.rows(off, rows).norm_squared();
            let d = tr.round();
            if (tr - d).abs() > INVARIANCE_TOL {
                return Err(Error::InvarianceViolation(format!(
                    "block {b} carries fractional dimension {tr:.6}"
                )));
            }
            let d = d as i64;
            if d % n as i64 != 0 {
                return Err(Error::InvarianceViolation(format!(
                    "block {b} dimension {d} is not a multiple of {n}"
                )));
            }
            total += d;
            ranks.push(d / n as i64);
        }
        if total != self.dim() as i64 {
            return Err(Error::InvarianceViolation(format!(
                "block dimensions sum to {total}, subspace has dimension {}",
                self.dim()
            )));
        }
        Ok(K0Class::new(ranks))
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::ShapeMismatch(format!(
                "submodules of {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Orthogonal complement; invariant because the trace inner product
    /// satisfies `tr⟨xa, y⟩ = tr⟨x, ya*⟩`.
    pub fn orth_complement(&self) -> Submodule {
        Submodule::trusted(&self.ambient, self.space.complement())
    }

    pub fn sum_and_intersection(&self, other: &Submodule) -> Result<(Submodule, Submodule)> {
        self.check_ambient(other)?;
        let (s, i) = self.space.sum_and_intersection(&other.space);
        Ok((
            Submodule::trusted(&self.ambient, s),
            Submodule::trusted(&self.ambient, i),
        ))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        Ok(self.sum_and_intersection(other)?.0)
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        Ok(self.sum_and_intersection(other)?.1)
    }

    /// `self ∩ other^⊥`.
    pub fn minus(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        Ok(Submodule::trusted(&self.ambient, self.space.minus(&other.space)))
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.space.contains(&other.space)
    }

    /// Equality up to the configured principal-angle tolerance.
    pub fn same_as(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.space.same_as(&other.space)
    }

    /// Orthonormal basis vectors as module vectors.
    pub fn basis_vectors(&self) -> Vec<ModuleVector> {
        (0..self.dim())
            .map(|j| {
                ModuleVector::from_coords(&self.ambient, &self.basis().columns(j, 1).into_owned())
                    .expect("basis lives in the ambient coordinates")
            })
            .collect()
    }
}

impl Serialize for Submodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Submodule", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("k0", &self.k0_class().ok())?;
        st.serialize_field("margin", &self.margin())?;
        st.end()
    }
}

/// Two submodules whose algebraic direct sum is a stated target.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionWitness {
    pub first: Submodule,
    pub second: Submodule,
    pub orthogonal: bool,
}

/// Whether `target = a ⊕̃ b`, and whether the sum is orthogonal.
pub fn decomposes(a: &Submodule, b: &Submodule, target: &Submodule) -> Result<Option<bool>> {
    let (sum, inter) = a.sum_and_intersection(b)?;
    if inter.dim() != 0 || !sum.same_as(target) {
        return Ok(None);
    }
    let cross = (a.basis().adjoint() * b.basis()).norm();
    Ok(Some(cross <= tolerances().residual_tol.sqrt()))
}

/// Given `M1 ⊆ M2` and an algebraic complement `M1c` of `M1` in the ambient
/// module, returns the splitting `M2 = M1 ⊕̃ (M1c ∩ M2)`.
pub fn split_nested(m1: &Submodule, m2: &Submodule, m1c: &Submodule) -> Result<DecompositionWitness> {
    m1.check_ambient(m2)?;
    m1.check_ambient(m1c)?;
    if !m2.contains(m1) {
        return Err(Error::UnmetHypothesis("first submodule is not contained in the second".into()));
    }
    let full = Submodule::full(m1.ambient());
    if decomposes(m1, m1c, &full)?.is_none() {
        return Err(Error::UnmetHypothesis(
            "supplied complement does not split the ambient module".into(),
        ));
    }
    let second = m1c.intersection(m2)?;
    match decomposes(m1, &second, m2)? {
        Some(orthogonal) => Ok(DecompositionWitness {
            first: m1.clone(),
            second,
            orthogonal,
        }),
        None => Err(Error::IdentityViolation(
            "complement intersection fails to split the larger submodule".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    fn shape(b: &[usize]) -> AlgebraShape {
        AlgebraShape::new(b.to_vec()).unwrap()
    }

    #[test]
    fn inner_product_of_unit_generator() {
        let s = shape(&[2, 3]);
        let e = ModuleVector::generator(&s, 2, 0);
        assert_eq!(inner_product(&e, &e).unwrap(), AlgebraElement::identity(&s));
        let f = ModuleVector::generator(&s, 2, 1);
        assert_eq!(inner_product(&e, &f).unwrap(), AlgebraElement::zero(&s));
    }

    #[test]
    fn coords_round_trip_and_trace_inner_product() {
        let s = shape(&[2, 1]);
        let a = AlgebraElement::from_blocks(
            &s,
            vec![
                CMat::from_row_slice(2, 2, &[scalar(1.), scalar(2.), scalar(3.), scalar(4.)]),
                CMat::from_element(1, 1, C64::new(0.0, 5.0)),
            ],
        )
        .unwrap();
        let x = ModuleVector::new(&s, vec![a.clone(), AlgebraElement::identity(&s)]).unwrap();
        let c = x.to_coords();
        assert_eq!(ModuleVector::from_coords(&x.ambient(), &c).unwrap(), x);
        let ip = inner_product(&x, &x).unwrap();
        let tr: C64 = ip.blocks().iter().map(|m| m.trace()).sum();
        assert!((tr - (c.adjoint() * &c)[(0, 0)]).norm() < 1e-12);
        // right action matrix agrees with entrywise multiplication
        let amb = x.ambient();
        let xa = x.right_mul(&a).unwrap();
        assert!((amb.right_action(&a) * c - xa.to_coords()).norm() < 1e-12);
    }

    #[test]
    fn span_of_identity_generator_fills_first_coordinate() {
        let s = shape(&[2]);
        let amb = ModuleAmbient::new(&s, 2);
        let m = Submodule::span(&amb, &[ModuleVector::generator(&s, 2, 0)]).unwrap();
        assert_eq!(m.k0_class().unwrap(), K0Class::new(vec![2]));
        assert_eq!(Submodule::span(&amb, &[]).unwrap().k0_class().unwrap(), K0Class::zero(1));
    }

    #[test]
    fn full_module_class_is_rank_times_block_size() {
        let s = shape(&[2, 3]);
        let amb = ModuleAmbient::new(&s, 2);
        let gens: Vec<_> = (0..2).map(|i| ModuleVector::generator(&s, 2, i)).collect();
        let full = Submodule::span(&amb, &gens).unwrap();
        assert_eq!(full.dim(), amb.dim());
        assert_eq!(full.k0_class().unwrap(), K0Class::new(vec![4, 6]));
        let a1 = Submodule::full(&ModuleAmbient::new(&s, 1));
        assert_eq!(a1.k0_class().unwrap(), K0Class::new(vec![2, 3]));
    }

    #[test]
    fn rank_one_projection_module() {
        let s = shape(&[2, 3]);
        let p = AlgebraElement::matrix_unit(&s, 0, 0, 0);
        let v = ModuleVector::new(&s, vec![p]).unwrap();
        let m = Submodule::span(&ModuleAmbient::new(&s, 1), &[v]).unwrap();
        assert_eq!(m.k0_class().unwrap(), K0Class::new(vec![1, 0]));
    }

    #[test]
    fn non_invariant_subspace_is_rejected() {
        let s = shape(&[2]);
        let amb = ModuleAmbient::new(&s, 1);
        let mut v = CMat::zeros(4, 1);
        v[(0, 0)] = scalar(1.0);
        assert!(matches!(
            Submodule::new(&amb, Subspace::from_orthonormal(v)),
            Err(Error::InvarianceViolation(_))
        ));
    }

    #[test]
    fn complement_of_coordinates() {
        let s = shape(&[2, 3]);
        let amb = ModuleAmbient::new(&s, 2);
        let first = Submodule::coordinate(&amb, 0);
        let second = Submodule::coordinate(&amb, 1);
        assert!(first.orth_complement().same_as(&second));
        assert!(Submodule::zero(&amb).orth_complement().same_as(&Submodule::full(&amb)));
        let (sum, inter) = first.sum_and_intersection(&second).unwrap();
        assert!(sum.same_as(&Submodule::full(&amb)));
        assert!(inter.is_zero());
        let (s2, i2) = first.sum_and_intersection(&first).unwrap();
        assert!(s2.same_as(&first) && i2.same_as(&first));
    }

    #[test]
    fn nested_split_trivial_cases() {
        let s = shape(&[2]);
        let amb = ModuleAmbient::new(&s, 2);
        let first = Submodule::coordinate(&amb, 0);
        let full = Submodule::full(&amb);
        let zero = Submodule::zero(&amb);
        let w = split_nested(&first, &first, &first.orth_complement()).unwrap();
        assert!(w.second.is_zero());
        let w = split_nested(&zero, &first, &full).unwrap();
        assert!(w.second.same_as(&first));
        assert!(matches!(
            split_nested(&full, &first, &zero),
            Err(Error::UnmetHypothesis(_))
        ));
    }

    #[test]
    fn k0_arithmetic() {
        let a = K0Class::new(vec![1, -2]);
        let b = K0Class::new(vec![3, 4]);
        assert_eq!(&a + &b, K0Class::new(vec![4, 2]));
        assert_eq!(&a - &b, K0Class::new(vec![-2, -6]));
        assert_eq!(a.positive_part(), K0Class::new(vec![1, 0]));
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,-2]");
    }
}
