//! Cartan subalgebras and root space decompositions.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rational_eigenvalues, Matrix, Rational, Subspace};
use crate::module::{adjoint_module, flag_basis, restrict, weight_decomposition, FlagBasis};
use crate::simple::is_semisimple_lie;
use crate::structure::{annihilator, is_right_nilpotent, lie_factor};

pub const CARTAN_ATTEMPTS: usize = 64;

/// `{x : <x, h> ∈ H for all h ∈ H}`.
pub fn right_normalizer(l: &LeibnizAlgebra, h: &Subspace) -> Result<Subspace> {
    l.check_subspace(h)?;
    let c = h.constraint_matrix();
    let blocks: Vec<Matrix> = h.basis_vectors().iter().map(|y| &c * &l.right_mult(y)).collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::vstack(&refs, l.dim()).kernel())
}

/// Right nilpotent and equal to its right normalizer.
pub fn is_cartan(l: &LeibnizAlgebra, h: &Subspace) -> Result<bool> {
    if h.is_zero() {
        return Ok(right_normalizer(l, h)?.is_zero());
    }
    let sub = l.subalgebra(h)?;
    Ok(is_right_nilpotent(&sub) && right_normalizer(l, h)? == *h)
}

/// Generalized null space of `r_x`.
pub fn fitting_null_component(l: &LeibnizAlgebra, x: &[Rational]) -> Result<Subspace> {
    if x.len() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: x.len(),
        });
    }
    Ok(l.right_mult(x).pow(l.dim()).kernel())
}

/// Whether every `r_h`, `h ∈ H`, has rational eigenvalues only.
fn splits(l: &LeibnizAlgebra, h: &Subspace) -> Result<bool> {
    for y in h.basis_vectors() {
        if !rational_eigenvalues(&l.right_mult(&y))?.complete {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Candidate elements: basis vectors in a seed-dependent order, then sparse
/// random vectors with small integer entries.
fn candidates(d: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(&mut rng);
    let mut out: Vec<Vec<Rational>> = order.iter().map(|&i| crate::linalg::unit(d, i)).collect();
    while out.len() < CARTAN_ATTEMPTS {
        let mut v = vec![Rational::zero(); d];
        let support = rng.random_range(2..=d.max(2));
        for _ in 0..support {
            let i = rng.random_range(0..d);
            v[i] = Rational::from_integer(rng.random_range(-3i64..=3).into());
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out.truncate(CARTAN_ATTEMPTS);
    out
}

/// Searches Fitting null components of `r_x` for a Cartan subalgebra on which
/// every right multiplication splits over the rationals. A Cartan that does
/// not split is remembered and reported if nothing better turns up.
pub fn find_cartan(l: &LeibnizAlgebra, seed: u64) -> Result<Subspace> {
    let mut non_split: Option<Subspace> = None;
    let mut best: Option<Subspace> = None;
    for x in candidates(l.dim(), seed) {
        let h = fitting_null_component(l, &x)?;
        if !l.is_subalgebra(&h)? {
            continue;
        }
        if is_cartan(l, &h)? {
            if splits(l, &h)? {
                return Ok(h);
            }
            non_split.get_or_insert(h);
        } else if best.as_ref().is_none_or(|b| h.dim() < b.dim()) {
            best = Some(h);
        }
    }
    if let Some(h) = non_split {
        return Err(Error::SplittingFailure(format!(
            "found a {}-dimensional Cartan subalgebra whose action does not split over the rationals",
            h.dim()
        )));
    }
    Err(Error::NotFound {
        attempts: CARTAN_ATTEMPTS,
        best: best.map_or("none".to_string(), |b| format!("dimension {}", b.dim())),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Values on the canonical basis of the Cartan subalgebra.
    pub functional: Vec<Rational>,
    pub space: Subspace,
    pub parity: Parity,
    /// `L^ann ∩ space`.
    pub ann_part: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub cartan: Subspace,
    pub roots: Vec<Root>,
}

impl RootDatum {
    pub fn count(&self, parity: Parity) -> usize {
        self.roots.iter().filter(|r| r.parity == parity).count()
    }
}

/// Weight decomposition of `L` under `-r(H)`; the zero-weight piece must be
/// `H`, and a root is odd iff its space lies in `L^ann`.
pub fn root_decomposition(l: &LeibnizAlgebra, h: &Subspace) -> Result<RootDatum> {
    if !is_cartan(l, h)? {
        return Err(Error::NotCartan("subspace is not a Cartan subalgebra".into()));
    }
    let m = restrict(&adjoint_module(l)?, h)?;
    let weights = weight_decomposition(&m)?;
    let ann = annihilator(l)?;
    let mut roots = Vec::new();
    let mut zero_seen = false;
    for w in weights {
        if w.is_zero_weight() {
            if w.space != *h {
                return Err(Error::ZeroWeightMismatch);
            }
            zero_seen = true;
            continue;
        }
        let ann_part = ann.intersect(&w.space)?;
        let parity = if ann_part == w.space {
            Parity::Odd
        } else {
            Parity::Even
        };
        roots.push(Root {
            functional: w.functional,
            space: w.space,
            parity,
            ann_part,
        });
    }
    if !zero_seen && !h.is_zero() {
        return Err(Error::ZeroWeightMismatch);
    }
    Ok(RootDatum {
        cartan: h.clone(),
        roots,
    })
}

/// Verified structure of one root space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootStructure {
    pub functional: Vec<Rational>,
    pub parity: Parity,
    /// Odd roots: a basis of the root space. Even roots: the annihilator lines.
    pub ann_lines: Vec<Vec<Rational>>,
    /// Even roots only.
    pub v_phi: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub cartan_abelian: bool,
    pub annihilator_decomposes: bool,
    pub roots: Vec<RootStructure>,
    pub clauses: Vec<String>,
}

/// For an algebra with semisimple Lie factor: `H` is abelian,
/// `L^ann = (H ∩ L^ann) ⊕ ⊕ (L^phi)^ann`, odd root spaces have a basis with
/// `-r_h v = phi(h) v` and `l_h v = 0`, and even root spaces have annihilator
/// lines plus one `v^phi` with `l_h v^phi ≡ phi(h) v^phi` modulo those lines.
pub fn structure_checks(l: &LeibnizAlgebra, rd: &RootDatum) -> Result<StructureReport> {
    let factor = lie_factor(l).map_err(|_| Error::SemisimplicityNotEstablished)?;
    if !is_semisimple_lie(&factor.algebra) {
        return Err(Error::SemisimplicityNotEstablished);
    }
    let h = &rd.cartan;
    let hb = h.basis_vectors();
    let clause = |name: &str, detail: String| Error::ClauseFailure {
        clause: name.to_string(),
        detail,
    };
    let mut clauses = Vec::new();

    if !l.bracket_span(h, h).is_zero() {
        return Err(clause("i", "<H, H> != 0".into()));
    }
    clauses.push("i: <H, H> = 0".to_string());

    let ann = annihilator(l)?;
    let mut parts = vec![h.intersect(&ann)?];
    parts.extend(rd.roots.iter().map(|r| r.ann_part.clone()));
    let total: usize = parts.iter().map(Subspace::dim).sum();
    let mut sum = Subspace::zero(l.dim());
    for p in &parts {
        sum = sum.sum(p)?;
    }
    if total != ann.dim() || sum != ann {
        return Err(clause(
            "i",
            "L^ann is not the direct sum of its Cartan and root parts".into(),
        ));
    }
    clauses.push("i: L^ann = (H ∩ L^ann) ⊕ sum of (L^phi)^ann".to_string());

    let m = restrict(&adjoint_module(l)?, h)?;
    let mut roots = Vec::new();
    for r in &rd.roots {
        let datum = crate::module::WeightDatum {
            functional: r.functional.clone(),
            space: r.space.clone(),
            flag: None,
        };
        match r.parity {
            Parity::Odd => {
                // ann_part = space, so ℓ_h vanishes and -r_h acts by phi on a
                // basis exactly when the space is an eigenspace.
                let basis = r.space.basis_vectors();
                for (y, p) in hb.iter().zip(&r.functional) {
                    let minus_r = -&l.right_mult(y);
                    let left = l.left_mult(y);
                    for v in &basis {
                        let expect: Vec<Rational> = v.iter().map(|x| x * p).collect();
                        if minus_r.mul_vec(v) != expect {
                            return Err(clause(
                                "ii",
                                format!("-r_h is not diagonal on odd root {:?}", r.functional),
                            ));
                        }
                        if left.mul_vec(v).iter().any(|x| !x.is_zero()) {
                            return Err(clause(
                                "ii",
                                format!("l_h v != 0 on odd root {:?}", r.functional),
                            ));
                        }
                    }
                }
                roots.push(RootStructure {
                    functional: r.functional.clone(),
                    parity: Parity::Odd,
                    ann_lines: basis,
                    v_phi: None,
                });
            }
            Parity::Even => {
                let flag: FlagBasis = flag_basis(&m, &datum)
                    .map_err(|e| clause("iii", format!("flag construction failed: {e}")))?;
                let [block] = flag.blocks.as_slice() else {
                    return Err(clause(
                        "iii",
                        format!("even root {:?} needs more than one flag block", r.functional),
                    ));
                };
                let Some(v) = block.eigen_vector.clone() else {
                    return Err(clause(
                        "iii",
                        format!("even root {:?} has no eigenvector", r.functional),
                    ));
                };
                let lines = Subspace::span(l.dim(), &block.ann_vectors)?;
                for (y, p) in hb.iter().zip(&r.functional) {
                    let left = l.left_mult(y).mul_vec(&v);
                    let diff: Vec<Rational> = left.iter().zip(&v).map(|(a, b)| a - b * p).collect();
                    if !lines.contains(&diff) {
                        return Err(clause(
                            "iii",
                            format!("l_h v^phi ≢ phi(h) v^phi on even root {:?}", r.functional),
                        ));
                    }
                }
                roots.push(RootStructure {
                    functional: r.functional.clone(),
                    parity: Parity::Even,
                    ann_lines: block.ann_vectors.clone(),
                    v_phi: Some(v),
                });
            }
        }
    }
    clauses.push("ii: odd root spaces have a basis with -r_h v = phi(h) v and l_h v = 0".to_string());
    clauses.push("iii: even root spaces are annihilator lines plus one v^phi with l_h v^phi ≡ phi(h) v^phi".to_string());
    Ok(StructureReport {
        cartan_abelian: true,
        annihilator_decomposes: true,
        roots,
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::labels_from;
    use crate::linalg::int;
    use crate::sl2::{construct_sl22, construct_sl2n};

    #[test]
    fn normalizer_examples() {
        let l = construct_sl2n(4, &int(1), &int(1)).unwrap();
        assert!(right_normalizer(&l, &Subspace::full(8)).unwrap().is_full());
        assert!(right_normalizer(&l, &Subspace::zero(8)).unwrap().is_full());
        let h = l.span_of_labels(&["h", "v2"]).unwrap();
        assert_eq!(right_normalizer(&l, &h).unwrap(), h);
        assert!(is_cartan(&l, &h).unwrap());
        assert!(!is_cartan(&l, &Subspace::full(8)).unwrap());
    }

    #[test]
    fn fitting_component_of_regular_element() {
        let l = construct_sl2n(4, &int(1), &int(1)).unwrap();
        let x = l.vector(&[("h", int(1)), ("v0", int(1))]).unwrap();
        assert_eq!(
            fitting_null_component(&l, &x).unwrap(),
            l.span_of_labels(&["h", "v2"]).unwrap()
        );
    }

    #[test]
    fn cartan_search() {
        let l = construct_sl22(&int(0), &int(0));
        let h = find_cartan(&l, 0).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(is_cartan(&l, &h).unwrap());
        let a = LeibnizAlgebra::abelian(labels_from(&["a", "b"])).unwrap();
        assert!(find_cartan(&a, 7).unwrap().is_full());
    }

    #[test]
    fn parities_of_sl2_4() {
        let l = construct_sl2n(4, &int(1), &int(1)).unwrap();
        let h = l.span_of_labels(&["h", "v2"]).unwrap();
        let rd = root_decomposition(&l, &h).unwrap();
        assert_eq!(rd.count(Parity::Even), 2);
        assert_eq!(rd.count(Parity::Odd), 2);
        let report = structure_checks(&l, &rd).unwrap();
        assert_eq!(report.roots.len(), 4);
    }
}
