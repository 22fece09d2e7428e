//! Subspaces of `Q^n` in canonical form.
//!
//! The stored basis is the list of nonzero rows of the reduced row echelon
//! form of the spanning vectors (equivalently, the reduced column echelon
//! form of the basis-as-columns matrix). Two subspaces are equal iff their
//! canonical bases are equal, so `PartialEq` is derived.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::canonical(RationalMatrix::identity(ambient_dim))
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let n = vectors.len();
        let entries = vectors.into_iter().flatten().collect();
        Ok(Self::canonical(RationalMatrix::new(n, ambient_dim, entries)?))
    }

    pub(crate) fn from_independent(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        Self::span(ambient_dim, vectors).expect("vectors have the ambient length")
    }

    fn canonical(rows: RationalMatrix) -> Self {
        let ambient_dim = rows.cols();
        let r = rows.rref();
        let basis = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Re-derives the canonical basis from the current one.
    pub fn canonicalize(&self) -> Self {
        Self::span(self.ambient_dim, self.basis.clone()).expect("same ambient")
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient_dim, &self.basis).expect("same ambient")
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        let mut vectors = self.basis.clone();
        vectors.push(v.to_vec());
        Ok(Self::span(self.ambient_dim, vectors)?.dim() == self.dim())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, vectors)
    }

    /// Intersection via the kernel of `[A | -B]`: each kernel vector `(x, y)`
    /// yields the common element `A x = B y`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut columns = self.basis.clone();
        columns.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let stacked = RationalMatrix::from_columns(self.ambient_dim, &columns)?;
        let a = self.basis_matrix();
        let k = self.dim();
        let common = stacked
            .kernel()
            .basis()
            .iter()
            .map(|v| a.apply(&v[..k]))
            .collect();
        Self::span(self.ambient_dim, common)
    }

    /// `M(self)` for a linear map `M : Q^ambient -> Q^rows(M)`.
    pub fn image_under(&self, map: &RationalMatrix) -> Result<Self> {
        if map.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied to a subspace of Q^{}",
                map.cols(),
                self.ambient_dim
            )));
        }
        Self::span(map.rows(), self.basis.iter().map(|v| map.apply(v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn equal_subspaces_sum_and_intersect_to_themselves() {
        let a = Subspace::span(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert!(a.contains(&a).unwrap());
    }

    #[test]
    fn complementary_coordinate_planes() {
        let a = Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let b = Subspace::span(4, vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersection(&b).unwrap().is_zero());
        assert!(!a.contains(&b).unwrap());
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[1, -1, 0])]).unwrap();
        let b = Subspace::span(3, vec![v(&[2, 0, 0]), v(&[0, 5, 0]), v(&[3, 3, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonicalize(), a);
    }

    #[test]
    fn intersection_of_planes_is_a_line() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, vec![v(&[1, 1, 1]), v(&[0, 0, 1])]).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c, Subspace::span(3, vec![v(&[1, 1, 0])]).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.intersection(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.contains(&b), Err(Error::DimensionMismatch(_))));
    }
}
