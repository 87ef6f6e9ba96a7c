//! Leibniz algebras given by structure constants.
//!
//! A basis `b_0..b_{d-1}` and a tensor `c[i][j][k]` define the angle bracket
//! `<b_i, b_j> = sum_k c[i][j][k] b_k`. The right Leibniz identity
//! `<<x,y>,z> = <x,<y,z>> + <<x,z>,y>` is only checked on request.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{combine, unit, zero_vec, Matrix, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    labels: Vec<String>,
    constants: Vec<Rational>,
}

impl LeibnizAlgebra {
    /// Raw constructor. The constants are indexed `(i * d + j) * d + k`.
    /// The Leibniz identity is not checked here; see [`LeibnizAlgebra::verify_leibniz`].
    pub fn new(labels: Vec<String>, constants: Vec<Rational>) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Validation("algebra must have positive dimension".into()));
        }
        if constants.len() != d * d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d * d,
                found: constants.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Validation(format!("duplicate label '{l}'")));
            }
        }
        Ok(LeibnizAlgebra { labels, constants })
    }

    /// Algebra with all brackets zero.
    pub fn abelian(labels: Vec<String>) -> Result<Self> {
        let d = labels.len();
        LeibnizAlgebra::new(labels, zero_vec(d * d * d))
    }

    /// Builds an algebra from `bracket(i, j)`, the coordinates of `<b_i, b_j>`.
    pub fn from_brackets(
        labels: Vec<String>,
        mut bracket: impl FnMut(usize, usize) -> Vec<Rational>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut constants = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let v = bracket(i, j);
                if v.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: v.len(),
                    });
                }
                constants.extend(v);
            }
        }
        LeibnizAlgebra::new(labels, constants)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        LeibnizAlgebra::new(self.labels, self.constants)
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    /// Coordinates of `<b_i, b_j>`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let d = self.dim();
        &self.constants[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let d = self.dim();
        for v in [x, y] {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
        }
        Ok(self.br(x, y))
    }

    pub(crate) fn br(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = zero_vec(d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `a -> <x, a>`.
    pub fn left_mult(&self, x: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<_> = (0..d).map(|a| self.br(x, &unit(d, a))).collect();
        Matrix::from_columns(&cols, d)
    }

    /// Matrix of `a -> <a, x>`.
    pub fn right_mult(&self, x: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<_> = (0..d).map(|a| self.br(&unit(d, a), x)).collect();
        Matrix::from_columns(&cols, d)
    }

    /// Checks the right Leibniz identity on all basis triples, which suffices
    /// by trilinearity. Returns the first failing `(i, j, k)` in
    /// lexicographic order.
    pub fn leibniz_counterexample(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let rights: Vec<Matrix> = (0..d).map(|k| self.right_mult(&unit(d, k))).collect();
        let lefts: Vec<Matrix> = (0..d).map(|i| self.left_mult(&unit(d, i))).collect();
        for i in 0..d {
            for j in 0..d {
                let xy = self.basis_bracket(i, j);
                for k in 0..d {
                    let lhs = rights[k].mul_vec(xy);
                    let a = lefts[i].mul_vec(self.basis_bracket(j, k));
                    let b = rights[j].mul_vec(self.basis_bracket(i, k));
                    let ok = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .all(|(l, (p, q))| *l == p + q);
                    if !ok {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn verify_leibniz(&self) -> bool {
        self.leibniz_counterexample().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                self.basis_bracket(i, j)
                    .iter()
                    .zip(self.basis_bracket(j, i))
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }

    /// Span of `<a, b>` over basis vectors `a` of `left` and `b` of `right`.
    pub fn bracket_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let lb = left.basis_vectors();
        let rb = right.basis_vectors();
        let mut vectors = Vec::with_capacity(lb.len() * rb.len());
        for a in &lb {
            for b in &rb {
                vectors.push(self.br(a, b));
            }
        }
        Subspace::span(self.dim(), &vectors).expect("bracket vectors have the algebra dimension")
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        self.bracket_span(s, s).is_subspace_of(s)
    }

    /// Induced algebra on a subalgebra, in the canonical basis of `s`.
    /// Basis vectors that are coordinate vectors keep their labels.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LeibnizAlgebra> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotClosed);
        }
        let basis = s.basis_vectors();
        let labels = basis
            .iter()
            .enumerate()
            .map(|(i, v)| self.describe_vector(v).unwrap_or_else(|| format!("s{i}")))
            .collect();
        LeibnizAlgebra::from_brackets(labels, |i, j| {
            s.coordinates(&self.br(&basis[i], &basis[j]))
                .expect("subalgebra is closed")
        })
    }

    /// Quotient by an ideal, using the complement coordinate vectors of the
    /// ideal's canonical basis as a section. Returns the quotient algebra, the
    /// projection (`dim/I x dim`) and the section (`dim x dim/I`).
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LeibnizAlgebra, Matrix, Matrix)> {
        if !crate::structure::is_ideal(self, ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let d = self.dim();
        let comp = ideal.complement_indices();
        let q = comp.len();
        if q == 0 {
            return Err(Error::Validation("quotient by the whole algebra is zero-dimensional".into()));
        }
        let projection = Matrix::from_columns(
            &(0..d)
                .map(|j| ideal.quotient_coordinates(&unit(d, j)))
                .collect::<Vec<_>>(),
            q,
        );
        let section = Matrix::from_fn(d, q, |r, c| {
            if r == comp[c] {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        });
        let labels = comp.iter().map(|&i| self.labels[i].clone()).collect();
        let algebra = LeibnizAlgebra::from_brackets(labels, |i, j| {
            ideal.quotient_coordinates(self.basis_bracket(comp[i], comp[j]))
        })?;
        Ok((algebra, projection, section))
    }

    /// Re-expresses the algebra in the basis whose `j`-th vector is column `j`
    /// of `p` (old coordinates). Labels are kept.
    pub fn change_basis(&self, p: &Matrix) -> Result<LeibnizAlgebra> {
        let d = self.dim();
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse()?;
        // <p_i, p_j> = (sum_a p_ai l_a) p_j, then back to new coordinates.
        let lefts: Vec<Matrix> = (0..d).map(|a| self.left_mult(&unit(d, a))).collect();
        let mut constants = Vec::with_capacity(d * d * d);
        for i in 0..d {
            let mut left = Matrix::zeros(d, d);
            for (a, la) in lefts.iter().enumerate() {
                if !p[(a, i)].is_zero() {
                    left = &left + &la.scale(&p[(a, i)]);
                }
            }
            let images = &inv * &(&left * p);
            for j in 0..d {
                constants.extend(images.column(j));
            }
        }
        LeibnizAlgebra::new(self.labels.clone(), constants)
    }

    /// Same structure constants, ignoring labels.
    pub fn same_constants(&self, other: &LeibnizAlgebra) -> bool {
        self.constants == other.constants
    }

    /// Direct sum with a second algebra (brackets between the two parts vanish).
    pub fn direct_sum(&self, other: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LeibnizAlgebra::from_brackets(labels, |i, j| {
            let mut v = zero_vec(d);
            if i < d1 && j < d1 {
                v[..d1].clone_from_slice(self.basis_bracket(i, j));
            } else if i >= d1 && j >= d1 {
                v[d1..].clone_from_slice(other.basis_bracket(i - d1, j - d1));
            }
            v
        })
    }

    /// Label of `v` if it is a basis vector.
    fn describe_vector(&self, v: &[Rational]) -> Option<String> {
        let mut nz = v.iter().enumerate().filter(|(_, x)| !x.is_zero());
        let (i, x) = nz.next()?;
        (nz.next().is_none() && *x == Rational::from_integer(1.into())).then(|| self.labels[i].clone())
    }

    /// Vector from a sparse list of `(label, coefficient)` pairs.
    pub fn vector(&self, terms: &[(&str, Rational)]) -> Result<Vec<Rational>> {
        let mut v = zero_vec(self.dim());
        for (label, c) in terms {
            let i = self
                .label_index(label)
                .ok_or_else(|| Error::Validation(format!("unknown label '{label}'")))?;
            v[i] += c;
        }
        Ok(v)
    }

    /// Coordinate subspace spanned by the named basis vectors.
    pub fn span_of_labels(&self, labels: &[&str]) -> Result<Subspace> {
        let idx = labels
            .iter()
            .map(|l| {
                self.label_index(l)
                    .ok_or_else(|| Error::Validation(format!("unknown label '{l}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::coordinate(self.dim(), &idx))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit(self.dim(), i)
    }

    pub(crate) fn combine_basis(&self, coeffs: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
        combine(coeffs, basis, self.dim())
    }
}

#[cfg(test)]
pub(crate) fn labels_from(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
