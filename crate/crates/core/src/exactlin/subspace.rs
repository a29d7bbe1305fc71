use std::fmt;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{mismatch, Result};

/// A linear subspace of Q^d held as a canonical basis.
///
/// The basis columns are in column-reduced echelon form with unit pivots, so
/// two values describing the same set compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the columns of `spanning`.
    pub fn span(spanning: &Matrix) -> Self {
        let ambient_dim = spanning.rows();
        let (r, pivots) = spanning.transpose().rref();
        let k = pivots.len();
        Self {
            ambient_dim,
            basis: r.submatrix(0, 0, k, ambient_dim).transpose(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut cols = Matrix::zeros(ambient_dim, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(mismatch("Subspace::from_vectors", ambient_dim, v.len()));
            }
            for (i, x) in v.iter().enumerate() {
                cols.set(i, j, x.clone());
            }
        }
        Ok(Self::span(&cols))
    }

    /// Coordinate subspace spanned by the standard basis vectors `indices`.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let idx: Vec<usize> = indices.into_iter().collect();
        let m = Matrix::from_fn(ambient_dim, idx.len(), |i, j| {
            if idx[j] == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Self::span(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(mismatch("Subspace::contains", self.ambient_dim, v.len()));
        }
        let stacked = self.basis.hstack(&Matrix::column_vector(v.to_vec()))?;
        Ok(stacked.rank() == self.dim())
    }

    /// Matrix whose rows span the orthogonal complement, so `x` lies in the
    /// subspace iff `annihilator * x = 0`.
    pub fn annihilator(&self) -> Matrix {
        kernel_basis(&self.basis.transpose()).basis.transpose()
    }

    fn check_same_ambient(&self, other: &Subspace, op: &'static str) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(mismatch(op, self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other, "Subspace::sum")?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)?))
    }

    /// V ∩ W from the kernel of `[V  -W]`: each kernel vector `(a, b)` gives
    /// the common element `V a = W b`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other, "Subspace::intersect")?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let joint = self.basis.hstack(&-&other.basis)?;
        let coeffs = kernel_basis(&joint);
        let a = coeffs.basis.submatrix(0, 0, self.dim(), coeffs.dim());
        Ok(Subspace::span(&(&self.basis * &a)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other, "Subspace::is_subspace_of")?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(other.basis.hstack(&self.basis)?.rank() == other.dim())
    }

    /// Image under `map`.
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient_dim {
            return Err(mismatch("Subspace::image_under", self.ambient_dim, map.cols()));
        }
        Ok(Subspace::span(&(map * &self.basis)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) {:?}", self.dim(), self.ambient_dim, self.basis)
    }
}

/// Null space of `m` as a canonical subspace of Q^{cols(m)}.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Rational::one());
        for (row, &p) in pivots.iter().enumerate() {
            basis.set(p, k, -r.get(row, f).clone());
        }
    }
    Subspace::span(&basis)
}

/// Column space of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// `{x : a x ∈ v}`, computed as the kernel of `N_v a` where the rows of
/// `N_v` annihilate `v`.
pub fn preimage(a: &Matrix, v: &Subspace) -> Result<Subspace> {
    if a.rows() != v.ambient_dim() {
        return Err(mismatch("preimage", v.ambient_dim(), a.rows()));
    }
    let ann = v.annihilator();
    Ok(kernel_basis(&(&ann * a)))
}

pub fn intersect(v: &Subspace, w: &Subspace) -> Result<Subspace> {
    v.intersect(w)
}

pub fn sum(v: &Subspace, w: &Subspace) -> Result<Subspace> {
    v.sum(w)
}

pub fn is_subspace_of(v: &Subspace, w: &Subspace) -> Result<bool> {
    v.is_subspace_of(w)
}
