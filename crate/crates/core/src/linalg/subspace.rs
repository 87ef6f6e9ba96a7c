use num_traits::Zero;

use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two subspaces are equal iff their stored bases agree
/// entry-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        Ok(Subspace::row_space(&Matrix::from_rows(vectors, ambient)))
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<_> = indices.iter().map(|&i| super::unit(ambient, i)).collect();
        Subspace::span(ambient, &vectors).expect("unit vectors have the ambient length")
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = Matrix::from_fn(k, m.cols(), |i, j| r[(i, j)].clone());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical (reduced row-echelon) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Column indices that are not pivots. The coordinate vectors at these
    /// indices span a complement of `self`.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// `v` minus its component along `self`, normalized so that every pivot
    /// coordinate of the result is zero.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let k = out[p].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *o -= &k * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn try_contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coordinates`].
    pub fn vector_from_coordinates(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![Rational::zero(); self.ambient];
        for (c, row) in coords.iter().zip(0..self.dim()) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in v.iter_mut().zip(self.basis.row(row)) {
                *o += c * b;
            }
        }
        v
    }

    /// Coordinates of the class of `v` in the quotient `Q^n / self`, with
    /// respect to the images of the complement coordinate vectors.
    pub fn quotient_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i].clone()).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&Matrix::vstack(
            &[&self.basis, &other.basis],
            self.ambient,
        )))
    }

    /// Intersection by the kernel method: solve `x A = y B` over the two
    /// stacked bases and map the solutions back through `A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let a = self.dim();
        let stacked = Matrix::vstack(&[&self.basis, &(-&other.basis)], self.ambient).transpose();
        let kernel = stacked.kernel();
        let vectors: Vec<Vec<Rational>> = kernel
            .basis_vectors()
            .into_iter()
            .map(|k| self.vector_from_coordinates(&k[..a]))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..self.dim()).all(|r| other.contains(self.basis.row(r))))
    }

    /// Image of the subspace under a square matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vectors: Vec<_> = (0..self.dim()).map(|r| m.mul_vec(self.basis.row(r))).collect();
        Subspace::span(m.rows(), &vectors).expect("image vectors have the matrix row count")
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|r| self.contains(&m.mul_vec(self.basis.row(r))))
    }

    /// Matrix of `m` restricted to an invariant subspace, in canonical-basis
    /// coordinates; `None` if the subspace is not invariant.
    pub fn restrict(&self, m: &Matrix) -> Option<Matrix> {
        let k = self.dim();
        let mut out = Matrix::zeros(k, k);
        for j in 0..k {
            let image = m.mul_vec(self.basis.row(j));
            let coords = self.coordinates(&image)?;
            for (i, c) in coords.into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        Some(out)
    }

    /// Matrix of the map induced by `m` on `Q^n / self` (with respect to the
    /// complement coordinate vectors); `None` if the subspace is not invariant.
    pub fn induced_on_quotient(&self, m: &Matrix) -> Option<Matrix> {
        if !self.is_invariant(m) {
            return None;
        }
        let comp = self.complement_indices();
        let q = comp.len();
        let mut out = Matrix::zeros(q, q);
        for (j, &c) in comp.iter().enumerate() {
            let image = m.column(c);
            for (i, x) in self.quotient_coordinates(&image).into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Some(out)
    }

    /// Matrix `C` with `v in self <=> C v = 0`.
    pub fn constraint_matrix(&self) -> Matrix {
        let perp = self.basis.kernel();
        perp.basis.clone()
    }

    /// Greedily extends a basis of `self` by vectors of `larger`, returning only
    /// the added vectors (canonical rows of `larger` in order).
    pub fn extension_within(&self, larger: &Subspace) -> Result<Vec<Vec<Rational>>> {
        self.check_ambient(larger)?;
        let mut current = self.clone();
        let mut added = Vec::new();
        for row in larger.basis_vectors() {
            if !current.contains(&row) {
                current = current.sum(&Subspace::span(self.ambient, &[row.clone()])?)?;
                added.push(row);
            }
        }
        Ok(added)
    }

    /// First canonical basis vector, normalized with a leading one.
    pub fn first_vector(&self) -> Option<Vec<Rational>> {
        (self.dim() > 0).then(|| self.basis.row(0).to_vec())
    }
}

/// True iff the subspaces together span their sum directly.
pub fn is_direct_sum(parts: &[Subspace], ambient: usize) -> bool {
    let total: usize = parts.iter().map(Subspace::dim).sum();
    let rows: Vec<&Matrix> = parts.iter().map(|p| p.basis()).collect();
    Matrix::vstack(&rows, ambient).rank() == total
}
