//! Simplicity and standardness.
//!
//! `is_simple` decides simplicity through four clauses:
//!
//! (a) `<L^ann, L> != 0`;
//! (b) the Lie factor is a simple Lie algebra (nondegenerate Killing form and
//!     one-dimensional centroid);
//! (c) `L^ann` is an irreducible module over the Lie factor;
//! (d) `<L, L> = L`.
//!
//! Soundness: let `I` be an ideal. `I ∩ L^ann` is a submodule of `L^ann`, so
//! by (c) it is `0` or `L^ann`; the image of `I` in the Lie factor is an ideal,
//! so by (b) it is `0` or everything. If the image is `0` then `I ⊆ L^ann` and
//! `I` is `0` or `L^ann`. If the image is everything and `I ⊇ L^ann` then
//! `I = L`. The remaining case `I ∩ L^ann = 0` with full image makes `I` a
//! complement of `L^ann` with `<L^ann, I> ⊆ I ∩ L^ann = 0`; together with
//! `<L^ann, L^ann> = 0` this gives `<L^ann, L> = 0`, contradicting (a).
//!
//! The clauses are stronger than "no ideals besides 0, L^ann, L" only in that
//! (b) excludes a one-dimensional (abelian) Lie factor; every algebra with an
//! sl2 factor is decided exactly.
//!
//! Irreducibility in (c) uses Schur's lemma: once (b) holds the factor is
//! semisimple, `L^ann` is completely reducible (Weyl), and it is irreducible
//! over an algebraically closed field iff its commutant is one-dimensional.
//! The commutant is cut out by linear equations, so its dimension over the
//! rationals is the same as over the closure.

use num_traits::Zero;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank_lower_bound, simultaneous_fitting, Matrix, Rational, Subspace};
use crate::structure::{annihilator, lie_factor, lie_factor_action_on_ann, saturate};

/// Gram matrix of `(x, y) -> tr(ad_x ad_y)` with `ad_x = <x, ->`.
pub fn killing_form(k: &LeibnizAlgebra) -> Matrix {
    let d = k.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| k.left_mult(&k.basis_vector(i))).collect();
    Matrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
}

pub fn killing_value(k: &LeibnizAlgebra, x: &[Rational], y: &[Rational]) -> Rational {
    (&k.left_mult(x) * &k.left_mult(y)).trace()
}

/// A Lie algebra with nondegenerate Killing form.
pub fn is_semisimple_lie(k: &LeibnizAlgebra) -> bool {
    k.is_antisymmetric()
        && k.verify_leibniz()
        && killing_form(k)
            .determinant()
            .is_ok_and(|det| !det.is_zero())
}

/// Linear equations `XA - AX = 0` in the entries of `X`, which sit at
/// column `p * n + q`.
fn commutant_system(ops: &[Matrix], n: usize) -> Matrix {
    let mut rows = Vec::new();
    for a in ops {
        for i in 0..n {
            for j in 0..n {
                // (XA - AX)[i][j] = sum_k X[i][k] A[k][j] - A[i][k] X[k][j]
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += &a[(k, j)];
                    row[k * n + j] -= &a[(i, k)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(&rows, n * n)
}

/// Basis of `{X : X A = A X for every A in ops}`.
pub fn commutant_basis(ops: &[Matrix], n: usize) -> Vec<Matrix> {
    if n == 0 {
        return Vec::new();
    }
    commutant_system(ops, n)
        .kernel()
        .basis_vectors()
        .iter()
        .map(|x| Matrix::from_fn(n, n, |p, q| x[p * n + q].clone()))
        .collect()
}

/// The identity always commutes, so a modular rank of `n^2 - 1` pins the
/// dimension to 1 without exact elimination.
pub fn commutant_dim(ops: &[Matrix], n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let system = commutant_system(ops, n);
    if rank_lower_bound(&system) == n * n - 1 {
        return 1;
    }
    n * n - system.rank()
}

/// Simple Lie algebra over the algebraic closure: semisimple with a
/// one-dimensional centroid.
pub fn is_simple_lie(k: &LeibnizAlgebra) -> bool {
    if !is_semisimple_lie(k) {
        return false;
    }
    let ads: Vec<Matrix> = (0..k.dim()).map(|i| k.left_mult(&k.basis_vector(i))).collect();
    commutant_dim(&ads, k.dim()) == 1
}

/// Irreducibility of a completely reducible representation, by Schur.
pub fn irreducible_by_commutant(ops: &[Matrix], n: usize) -> bool {
    n > 0 && commutant_dim(ops, n) == 1
}

/// Irreducibility when a family of commuting `toral` operators has only
/// one-dimensional joint generalized eigenspaces: every invariant subspace
/// is then a sum of those lines, so it suffices that each line generates the
/// whole space. `toral` must be contained in the span of `ops`.
pub fn irreducible_by_weight_lines(toral: &[Matrix], ops: &[Matrix], n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let pieces = simultaneous_fitting(toral, n).map_err(|e| Error::Undecidable(e.to_string()))?;
    if pieces.iter().any(|p| p.space.dim() != 1) {
        return Err(Error::Undecidable(
            "toral action has a weight space of dimension > 1".into(),
        ));
    }
    Ok(pieces.iter().all(|p| saturate(&p.space, ops).is_full()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicityClause {
    /// (a) `<L^ann, L> != 0`.
    AnnihilatorActs,
    /// (b) the Lie factor is simple.
    FactorSimple,
    /// (c) `L^ann` is an irreducible Lie-factor module.
    AnnihilatorIrreducible,
    /// (d) `<L, L> = L`.
    Perfect,
}

impl SimplicityClause {
    pub fn name(self) -> &'static str {
        match self {
            SimplicityClause::AnnihilatorActs => "a: <L^ann, L> != 0",
            SimplicityClause::FactorSimple => "b: Lie factor simple",
            SimplicityClause::AnnihilatorIrreducible => "c: L^ann irreducible",
            SimplicityClause::Perfect => "d: <L, L> = L",
        }
    }
}

/// Outcome of each clause; clauses after the first failure are not evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub annihilator_dim: usize,
    pub annihilator_acts: bool,
    pub factor_dim: usize,
    pub factor_simple: Option<bool>,
    pub annihilator_irreducible: Option<bool>,
    pub perfect: Option<bool>,
    pub failed: Option<SimplicityClause>,
}

impl SimplicityCertificate {
    pub fn is_simple(&self) -> bool {
        self.failed.is_none()
    }
}

pub fn simplicity_certificate(l: &LeibnizAlgebra) -> Result<SimplicityCertificate> {
    let d = l.dim();
    let ann = annihilator(l)?;
    let mut cert = SimplicityCertificate {
        annihilator_dim: ann.dim(),
        annihilator_acts: !l.bracket_span(&ann, &Subspace::full(d)).is_zero(),
        factor_dim: d - ann.dim(),
        factor_simple: None,
        annihilator_irreducible: None,
        perfect: None,
        failed: None,
    };
    if !cert.annihilator_acts {
        cert.failed = Some(SimplicityClause::AnnihilatorActs);
        return Ok(cert);
    }
    let factor_simple = cert.factor_dim > 0 && is_simple_lie(&lie_factor(l)?.algebra);
    cert.factor_simple = Some(factor_simple);
    if !factor_simple {
        cert.failed = Some(SimplicityClause::FactorSimple);
        return Ok(cert);
    }
    let view = lie_factor_action_on_ann(l)?;
    let irreducible = irreducible_by_commutant(&view.actions, view.dim());
    cert.annihilator_irreducible = Some(irreducible);
    if !irreducible {
        cert.failed = Some(SimplicityClause::AnnihilatorIrreducible);
        return Ok(cert);
    }
    let full = Subspace::full(d);
    let perfect = l.bracket_span(&full, &full).is_full();
    cert.perfect = Some(perfect);
    if !perfect {
        cert.failed = Some(SimplicityClause::Perfect);
    }
    Ok(cert)
}

pub fn is_simple(l: &LeibnizAlgebra) -> Result<bool> {
    Ok(simplicity_certificate(l)?.is_simple())
}

/// A Lie subalgebra complementary to `L^ann`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSplitting {
    /// Lifts of the Lie-factor basis: `lifts[i]` projects to factor basis
    /// vector `i`, and their span is closed under the bracket.
    pub lifts: Vec<Vec<Rational>>,
    pub complement: Subspace,
}

/// Looks for annihilator corrections `a_i` such that `x_i = s_i + a_i` span a
/// Lie subalgebra, where `s_i` are the section lifts of the factor basis. The
/// conditions `<x_i, x_j> = sum_k c_ij^k x_k` are linear in the corrections
/// because `<L, L^ann> = 0`. Returns `None` when the system is inconsistent.
pub fn is_standard(l: &LeibnizAlgebra) -> Result<Option<StandardSplitting>> {
    let d = l.dim();
    let factor = lie_factor(l)?;
    let ann = factor.annihilator.clone();
    let m = factor.algebra.dim();
    let a = ann.dim();
    let lifts0: Vec<Vec<Rational>> = (0..m).map(|i| factor.section.column(i)).collect();
    let ann_basis = ann.basis_vectors();
    // Unknown u[i][t] (coefficient of ann basis vector t in a_i) at column i * a + t.
    let cols = m * a;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let kappa = factor.algebra.basis_bracket(i, j);
            // gamma = <s_i, s_j> - sum_k kappa_k s_k  (lies in L^ann)
            let mut gamma = l.br(&lifts0[i], &lifts0[j]);
            for (k, c) in kappa.iter().enumerate() {
                if !c.is_zero() {
                    for (g, s) in gamma.iter_mut().zip(&lifts0[k]) {
                        *g -= c * s;
                    }
                }
            }
            // <a_i, s_j> - sum_k kappa_k a_k + gamma = 0
            let acts: Vec<Vec<Rational>> = ann_basis.iter().map(|w| l.br(w, &lifts0[j])).collect();
            for coord in 0..d {
                let mut row = vec![Rational::zero(); cols];
                for t in 0..a {
                    row[i * a + t] += &acts[t][coord];
                    for (k, c) in kappa.iter().enumerate() {
                        if !c.is_zero() {
                            row[k * a + t] -= c * &ann_basis[t][coord];
                        }
                    }
                }
                if row.iter().all(Zero::is_zero) && gamma[coord].is_zero() {
                    continue;
                }
                rows.push(row);
                rhs.push(-gamma[coord].clone());
            }
        }
    }
    let solution = if rows.is_empty() {
        Some(vec![Rational::zero(); cols])
    } else {
        Matrix::from_rows(&rows, cols).solve(&rhs)
    };
    let Some(u) = solution else {
        return Ok(None);
    };
    let lifts: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let correction = l.combine_basis(&u[i * a..(i + 1) * a], &ann_basis);
            crate::linalg::add_vec(&lifts0[i], &correction)
        })
        .collect();
    let complement = Subspace::span(d, &lifts)?;
    let sub = l.subalgebra(&complement).map_err(|_| {
        Error::InternalMismatch("solved lifts do not span a subalgebra".into())
    })?;
    if !sub.is_antisymmetric() || !complement.intersect(&ann)?.is_zero() {
        return Err(Error::InternalMismatch(
            "solved complement is not a Lie algebra complementary to L^ann".into(),
        ));
    }
    Ok(Some(StandardSplitting { lifts, complement }))
}
