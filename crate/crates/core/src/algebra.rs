//! Finite-dimensional C*-algebras `A = ⊕_b M_{n_b}(ℂ)` and their elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eye, spectral_norm, CMat, C64};

/// Block sizes `(n_1, …, n_k)` of a block-diagonal matrix algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AlgebraShape {
    blocks: Vec<usize>,
}

impl AlgebraShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput("an algebra needs at least one block".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidInput("block sizes must be positive".into()));
        }
        Ok(AlgebraShape { blocks })
    }

    /// The scalars, `ℂ`.
    pub fn trivial() -> Self {
        AlgebraShape { blocks: vec![1] }
    }

    /// `ℂ^k`: k one-dimensional blocks.
    pub fn commutative(k: usize) -> Self {
        AlgebraShape {
            blocks: vec![1; k.max(1)],
        }
    }

    /// A single full matrix block `M_n(ℂ)`.
    pub fn matrix(n: usize) -> Self {
        AlgebraShape {
            blocks: vec![n.max(1)],
        }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: usize) -> usize {
        self.blocks[b]
    }

    /// `dim_ℂ A = Σ n_b²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }
}

impl TryFrom<Vec<usize>> for AlgebraShape {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        AlgebraShape::new(v)
    }
}

impl From<AlgebraShape> for Vec<usize> {
    fn from(s: AlgebraShape) -> Self {
        s.blocks
    }
}

impl fmt::Display for AlgebraShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Element of a block algebra, stored blockwise dense.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    shape: AlgebraShape,
    blocks: Vec<CMat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    /// Adjoint of the first operand; the second is ignored.
    AdjointOfA,
}

impl AlgebraElement {
    pub fn from_blocks(shape: &AlgebraShape, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != shape.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks supplied for shape {shape}",
                blocks.len()
            )));
        }
        for (b, m) in blocks.iter().enumerate() {
            let n = shape.block(b);
            if m.shape() != (n, n) {
                return Err(Error::ShapeMismatch(format!(
                    "block {b} is {:?}, expected {n}x{n}",
                    m.shape()
                )));
            }
        }
        Ok(AlgebraElement {
            shape: shape.clone(),
            blocks,
        })
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        AlgebraElement {
            shape: shape.clone(),
            blocks: shape.blocks().iter().map(|&n| CMat::zeros(n, n)).collect(),
        }
    }

    pub fn identity(shape: &AlgebraShape) -> Self {
        AlgebraElement {
            shape: shape.clone(),
            blocks: shape.blocks().iter().map(|&n| eye(n)).collect(),
        }
    }

    pub fn scalar(shape: &AlgebraShape, z: C64) -> Self {
        let mut e = Self::identity(shape);
        for m in &mut e.blocks {
            *m *= z;
        }
        e
    }

    /// Matrix unit `E_{st}` in block `b`.
    pub fn matrix_unit(shape: &AlgebraShape, b: usize, s: usize, t: usize) -> Self {
        let mut e = Self::zero(shape);
        e.blocks[b][(s, t)] = C64::new(1.0, 0.0);
        e
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &CMat {
        &self.blocks[b]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "elements of {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::AdjointOfA => Ok(self.adjoint()),
        }
    }

    /// C*-norm: the largest spectral norm over the blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(spectral_norm).fold(0.0, f64::max)
    }

    /// The block-diagonal matrix realising the element.
    pub fn to_dense(&self) -> CMat {
        let total: usize = self.shape.blocks().iter().sum();
        let mut out = CMat::zeros(total, total);
        let mut off = 0;
        for m in &self.blocks {
            let n = m.nrows();
            out.view_mut((off, off), (n, n)).copy_from(m);
            off += n;
        }
        out
    }

    /// Largest entrywise difference, for tolerance comparisons.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}
