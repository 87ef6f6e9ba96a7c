//! Algebra-level structure: annihilator, Lie factor, ideals and the derived
//! and right central series.

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_vec, Matrix, Rational, Subspace};

/// Span of the symmetrized brackets `<b_i,b_j> + <b_j,b_i>` for `i <= j`.
/// Re-checks that the result is an ideal with `<L, ann> = 0`, which fails
/// only when the input violates the Leibniz identity.
pub fn annihilator(l: &LeibnizAlgebra) -> Result<Subspace> {
    let ann = annihilator_unchecked(l);
    if !l.bracket_span(&Subspace::full(l.dim()), &ann).is_zero() {
        return Err(Error::IdentityViolation("<L, L^ann> is not zero".into()));
    }
    if !is_ideal(l, &ann)? {
        return Err(Error::IdentityViolation("L^ann is not an ideal".into()));
    }
    Ok(ann)
}

pub(crate) fn annihilator_unchecked(l: &LeibnizAlgebra) -> Subspace {
    let d = l.dim();
    let mut vectors = Vec::new();
    for i in 0..d {
        for j in i..d {
            vectors.push(add_vec(l.basis_bracket(i, j), l.basis_bracket(j, i)));
        }
    }
    Subspace::span(d, &vectors).expect("bracket vectors have the algebra dimension")
}

/// Span of the squares `<x, x>` for `x` ranging over `b_i` and `b_i + b_j`,
/// which spans all squares by polarization.
pub fn annihilator_from_squares(l: &LeibnizAlgebra) -> Subspace {
    let d = l.dim();
    let mut vectors = Vec::new();
    for i in 0..d {
        let bi = l.basis_vector(i);
        vectors.push(l.br(&bi, &bi));
        for j in i + 1..d {
            let x = add_vec(&bi, &l.basis_vector(j));
            vectors.push(l.br(&x, &x));
        }
    }
    Subspace::span(d, &vectors).expect("bracket vectors have the algebra dimension")
}

pub fn is_ideal(l: &LeibnizAlgebra, s: &Subspace) -> Result<bool> {
    l.check_subspace(s)?;
    let full = Subspace::full(l.dim());
    Ok(l.bracket_span(s, &full).is_subspace_of(s)? && l.bracket_span(&full, s).is_subspace_of(s)?)
}

/// Smallest ideal containing `s`: saturate under left and right brackets with
/// basis vectors until the dimension stops growing.
pub fn ideal_closure(l: &LeibnizAlgebra, s: &Subspace) -> Result<Subspace> {
    l.check_subspace(s)?;
    let d = l.dim();
    let lefts: Vec<Matrix> = (0..d).map(|i| l.left_mult(&l.basis_vector(i))).collect();
    let rights: Vec<Matrix> = (0..d).map(|i| l.right_mult(&l.basis_vector(i))).collect();
    let ops: Vec<Matrix> = lefts.into_iter().chain(rights).collect();
    Ok(saturate(s, &ops))
}

/// Smallest subspace containing `s` and invariant under every operator.
pub(crate) fn saturate(s: &Subspace, ops: &[Matrix]) -> Subspace {
    let mut current = s.clone();
    loop {
        let mut next = current.clone();
        for op in ops {
            next = next.sum(&current.image(op)).expect("operators preserve the ambient dimension");
        }
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

/// Lie factor `L / L^ann` with its projection and section matrices.
#[derive(Clone, Debug)]
pub struct LieFactor {
    pub algebra: LeibnizAlgebra,
    pub annihilator: Subspace,
    /// `dim L^lie x dim L`.
    pub projection: Matrix,
    /// `dim L x dim L^lie`; column `i` lifts the `i`-th factor basis vector.
    pub section: Matrix,
}

impl LieFactor {
    pub fn lift(&self, x: &[Rational]) -> Vec<Rational> {
        self.section.mul_vec(x)
    }

    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.projection.mul_vec(v)
    }
}

/// Quotient by the annihilator. When the annihilator is the whole algebra the
/// factor is zero-dimensional and this returns a validation error.
pub fn lie_factor(l: &LeibnizAlgebra) -> Result<LieFactor> {
    let ann = annihilator(l)?;
    let (algebra, projection, section) = l.quotient(&ann)?;
    Ok(LieFactor {
        algebra,
        annihilator: ann,
        projection,
        section,
    })
}

/// A module over a Lie algebra, realized on a subspace: one matrix per basis
/// vector of the Lie algebra, in the canonical-basis coordinates of `space`.
#[derive(Clone, Debug)]
pub struct LieModuleView {
    pub lie: LeibnizAlgebra,
    pub space: Subspace,
    pub actions: Vec<Matrix>,
}

impl LieModuleView {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Checks `rho([x, y]) = [rho(x), rho(y)]` on basis pairs.
    pub fn homomorphism_counterexample(&self) -> Option<(usize, usize)> {
        let m = self.lie.dim();
        let n = self.dim();
        for i in 0..m {
            for j in 0..m {
                let coeffs = self.lie.basis_bracket(i, j);
                let mut lhs = Matrix::zeros(n, n);
                for (c, a) in coeffs.iter().zip(&self.actions) {
                    lhs = &lhs + &a.scale(c);
                }
                if lhs != self.actions[i].commutator(&self.actions[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Action `x̄ · a = -<a, x>` of the Lie factor on `L^ann`, checked to be
/// independent of the chosen lift and to be a Lie-module structure.
pub fn lie_factor_action_on_ann(l: &LeibnizAlgebra) -> Result<LieModuleView> {
    let ann = annihilator(l)?;
    if ann.is_full() {
        return Err(Error::Validation("Lie factor is zero-dimensional".into()));
    }
    let factor = lie_factor(l)?;
    // Lift independence: every annihilator element must act as zero.
    for w in ann.basis_vectors() {
        let r = l.right_mult(&w);
        if ann.restrict(&r).is_none_or(|m| !m.is_zero()) {
            return Err(Error::WellDefinednessFailure(
                "annihilator does not act trivially on itself".into(),
            ));
        }
    }
    let mut actions = Vec::with_capacity(factor.algebra.dim());
    for i in 0..factor.algebra.dim() {
        let x = factor.section.column(i);
        let op = -&l.right_mult(&x);
        let restricted = ann.restrict(&op).ok_or_else(|| {
            Error::WellDefinednessFailure("right multiplication leaves L^ann".into())
        })?;
        actions.push(restricted);
    }
    let view = LieModuleView {
        lie: factor.algebra,
        space: ann,
        actions,
    };
    if let Some((i, j)) = view.homomorphism_counterexample() {
        return Err(Error::WellDefinednessFailure(format!(
            "Lie-module axiom fails on factor basis pair ({i}, {j})"
        )));
    }
    Ok(view)
}

/// `D^1 = L`, `D^{n+1} = <D^n, D^n>`, stopping at zero or when the series
/// stabilizes. The last entry is therefore either zero or a repeat-free
/// fixed point.
pub fn derived_series(l: &LeibnizAlgebra) -> Vec<Subspace> {
    series(l, |cur| l.bracket_span(cur, cur))
}

pub fn is_solvable(l: &LeibnizAlgebra) -> bool {
    derived_series(l).last().is_some_and(Subspace::is_zero)
}

/// `C^1 = L`, `C^{n+1} = <C^n, L>`.
pub fn right_central_series(l: &LeibnizAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(l.dim());
    series(l, |cur| l.bracket_span(cur, &full))
}

pub fn is_right_nilpotent(l: &LeibnizAlgebra) -> bool {
    right_central_series(l).last().is_some_and(Subspace::is_zero)
}

fn series(l: &LeibnizAlgebra, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![Subspace::full(l.dim())];
    loop {
        let cur = out.last().expect("series is nonempty");
        if cur.is_zero() {
            return out;
        }
        let next = step(cur);
        if next == *cur {
            return out;
        }
        out.push(next);
    }
}
