use super::{char_poly, is_direct_sum, Matrix, Rational, Subspace};
use crate::error::{Error, Result};

/// Rational eigenvalues with algebraic multiplicities, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalues {
    pub values: Vec<(Rational, usize)>,
    /// True iff the multiplicities add up to the matrix size, i.e. the
    /// characteristic polynomial splits over the rationals.
    pub complete: bool,
}

pub fn rational_eigenvalues(m: &Matrix) -> Result<Eigenvalues> {
    let p = char_poly(m)?;
    let (roots, _) = p.rational_roots();
    let values: Vec<(Rational, usize)> = roots
        .into_iter()
        .map(|r| {
            let k = p.multiplicity(&r);
            (r, k)
        })
        .collect();
    let total: usize = values.iter().map(|(_, k)| k).sum();
    Ok(Eigenvalues {
        complete: total == m.rows(),
        values,
    })
}

/// `ker (m - lambda I)^n` with `n` the matrix size.
pub fn generalized_eigenspace(m: &Matrix, lambda: &Rational) -> Result<Subspace> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.shift(lambda).pow(m.rows()).kernel())
}

/// One joint generalized eigenspace of a family of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingPiece {
    /// One eigenvalue per input operator.
    pub functional: Vec<Rational>,
    pub space: Subspace,
}

/// Common refinement of the generalized eigenspace decompositions of every
/// operator. Pieces come back sorted by their eigenvalue tuples.
pub fn simultaneous_fitting(ops: &[Matrix], dim: usize) -> Result<Vec<FittingPiece>> {
    for op in ops {
        if !op.is_square() {
            return Err(Error::NotSquare {
                rows: op.rows(),
                cols: op.cols(),
            });
        }
        if op.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.rows(),
            });
        }
    }
    let mut pieces = vec![FittingPiece {
        functional: Vec::new(),
        space: Subspace::full(dim),
    }];
    for (idx, op) in ops.iter().enumerate() {
        let eig = rational_eigenvalues(op)?;
        if !eig.complete {
            return Err(Error::SplittingFailure(format!(
                "operator {idx} has eigenvalues outside the rationals"
            )));
        }
        let spaces: Vec<(Rational, Subspace)> = eig
            .values
            .into_iter()
            .map(|(lambda, _)| {
                let s = generalized_eigenspace(op, &lambda)?;
                Ok((lambda, s))
            })
            .collect::<Result<_>>()?;
        let mut refined = Vec::new();
        for piece in &pieces {
            for (lambda, s) in &spaces {
                let meet = piece.space.intersect(s)?;
                if meet.is_zero() {
                    continue;
                }
                let mut functional = piece.functional.clone();
                functional.push(lambda.clone());
                refined.push(FittingPiece {
                    functional,
                    space: meet,
                });
            }
        }
        pieces = refined;
    }
    let spaces: Vec<Subspace> = pieces.iter().map(|p| p.space.clone()).collect();
    let total: usize = spaces.iter().map(Subspace::dim).sum();
    if total != dim || !is_direct_sum(&spaces, dim) {
        return Err(Error::NotADecomposition(format!(
            "pieces have total dimension {total} in a {dim}-dimensional space"
        )));
    }
    for piece in &pieces {
        if let Some(i) = ops.iter().position(|op| !piece.space.is_invariant(op)) {
            return Err(Error::NotADecomposition(format!(
                "piece {:?} is not invariant under operator {i}",
                piece.functional
            )));
        }
    }
    pieces.sort_by(|a, b| a.functional.cmp(&b.functional));
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn eigenvalue_examples() {
        let d = Matrix::diagonal(&[int(1), int(1), int(3)]);
        let e = rational_eigenvalues(&d).unwrap();
        assert_eq!(e.values, vec![(int(1), 2), (int(3), 1)]);
        assert!(e.complete);
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        let e = rational_eigenvalues(&rot).unwrap();
        assert!(e.values.is_empty());
        assert!(!e.complete);
    }

    #[test]
    fn generalized_eigenspace_examples() {
        assert!(generalized_eigenspace(&Matrix::identity(3), &int(1)).unwrap().is_full());
        let jordan = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(generalized_eigenspace(&jordan, &int(0)).unwrap().dim(), 2);
        assert_eq!(jordan.kernel().dim(), 1);
        // Blocks J2(2) and (5): the explicit power (m - 2I)^3 kills exactly e0, e1.
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 5]]);
        let shifted_cube = m.shift(&int(2)).pow(3);
        assert_eq!(shifted_cube, Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 27]]));
        let g = generalized_eigenspace(&m, &int(2)).unwrap();
        assert_eq!(g, Subspace::coordinate(3, &[0, 1]));
        assert!(generalized_eigenspace(&m, &int(7)).unwrap().is_zero());
    }

    #[test]
    fn fitting_examples() {
        let pieces = simultaneous_fitting(&[Matrix::identity(3)], 3).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].functional, vec![int(1)]);
        assert!(pieces[0].space.is_full());

        let a = Matrix::diagonal(&[int(1), int(2)]);
        let b = Matrix::diagonal(&[int(3), int(3)]);
        let pieces = simultaneous_fitting(&[a, b], 2).unwrap();
        let functionals: Vec<_> = pieces.iter().map(|p| p.functional.clone()).collect();
        assert_eq!(functionals, vec![vec![int(1), int(3)], vec![int(2), int(3)]]);
    }

    #[test]
    fn fitting_reports_splitting_failure() {
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(matches!(
            simultaneous_fitting(&[rot], 2),
            Err(Error::SplittingFailure(_))
        ));
    }

    #[test]
    fn fitting_rejects_incompatible_family() {
        // Two non-commuting diagonalizable operators whose eigenlines differ.
        let a = Matrix::diagonal(&[int(1), int(2)]);
        let b = Matrix::from_i64(&[&[1, 0], &[1, 2]]);
        assert!(matches!(
            simultaneous_fitting(&[a, b], 2),
            Err(Error::NotADecomposition(_))
        ));
    }
}
