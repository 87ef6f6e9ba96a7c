//! Modules `(V, f, g)` over a Leibniz algebra: `f` and `g` assign to each
//! algebra element a linear map of `V`, subject to
//!
//! 1. `f(<x, y>) = [f(x), f(y)]`,
//! 2. `g(<x, y>) = [g(x), f(y)]`,
//! 3. `g(x) g(y) = g(x) f(y)`.

use num_traits::Zero;

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{simultaneous_fitting, Matrix, Rational, Subspace};
use crate::simple::{commutant_basis, irreducible_by_commutant, is_semisimple_lie, killing_form};
use crate::structure::{derived_series, is_right_nilpotent, is_solvable, lie_factor, saturate, LieModuleView};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizModule {
    algebra: LeibnizAlgebra,
    dim_v: usize,
    f: Vec<Matrix>,
    g: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleAxiom {
    /// `f(<x, y>) = [f(x), f(y)]`
    RightHomomorphism,
    /// `g(<x, y>) = [g(x), f(y)]`
    MixedCommutator,
    /// `g(x) g(y) = g(x) f(y)`
    LeftAbsorption,
}

impl ModuleAxiom {
    pub fn number(self) -> u8 {
        match self {
            ModuleAxiom::RightHomomorphism => 1,
            ModuleAxiom::MixedCommutator => 2,
            ModuleAxiom::LeftAbsorption => 3,
        }
    }
}

/// First failing axiom on a pair of algebra basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleViolation {
    pub axiom: ModuleAxiom,
    pub i: usize,
    pub j: usize,
}

impl LeibnizModule {
    /// One `f` and one `g` matrix per algebra basis element.
    pub fn new(algebra: LeibnizAlgebra, f: Vec<Matrix>, g: Vec<Matrix>) -> Result<Self> {
        let d = algebra.dim();
        for mats in [&f, &g] {
            if mats.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: mats.len(),
                });
            }
        }
        let dim_v = f.first().map(Matrix::rows).unwrap_or(0);
        if dim_v == 0 {
            return Err(Error::Validation("module dimension must be positive".into()));
        }
        for m in f.iter().chain(&g) {
            if m.rows() != dim_v || m.cols() != dim_v {
                return Err(Error::DimensionMismatch {
                    expected: dim_v,
                    found: if m.rows() != dim_v { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(LeibnizModule { algebra, dim_v, f, g })
    }

    pub fn zero(algebra: LeibnizAlgebra, dim_v: usize) -> Result<Self> {
        let d = algebra.dim();
        let z = vec![Matrix::zeros(dim_v, dim_v); d];
        LeibnizModule::new(algebra, z.clone(), z)
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim_v
    }

    pub fn f_mats(&self) -> &[Matrix] {
        &self.f
    }

    pub fn g_mats(&self) -> &[Matrix] {
        &self.g
    }

    fn combine(&self, mats: &[Matrix], x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.algebra.dim(), "algebra vector length mismatch");
        let mut out = Matrix::zeros(self.dim_v, self.dim_v);
        for (c, m) in x.iter().zip(mats) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn f_of(&self, x: &[Rational]) -> Matrix {
        self.combine(&self.f, x)
    }

    pub fn g_of(&self, x: &[Rational]) -> Matrix {
        self.combine(&self.g, x)
    }

    /// Every `f` and `g` matrix, for saturation.
    fn all_ops(&self) -> Vec<Matrix> {
        self.f.iter().chain(&self.g).cloned().collect()
    }
}

/// Checks the three axioms on all basis pairs, which suffices by bilinearity.
pub fn verify_module(m: &LeibnizModule) -> Option<ModuleViolation> {
    let d = m.algebra.dim();
    for i in 0..d {
        for j in 0..d {
            let bracket = m.algebra.basis_bracket(i, j);
            let (fi, fj, gi, gj) = (&m.f[i], &m.f[j], &m.g[i], &m.g[j]);
            if m.f_of(bracket) != fi.commutator(fj) {
                return Some(ModuleViolation {
                    axiom: ModuleAxiom::RightHomomorphism,
                    i,
                    j,
                });
            }
            if m.g_of(bracket) != &(gi * fj) - &(fj * gi) {
                return Some(ModuleViolation {
                    axiom: ModuleAxiom::MixedCommutator,
                    i,
                    j,
                });
            }
            if gi * gj != gi * fj {
                return Some(ModuleViolation {
                    axiom: ModuleAxiom::LeftAbsorption,
                    i,
                    j,
                });
            }
        }
    }
    None
}

/// `(L, -r, l)`: `f(x) a = -<a, x>`, `g(x) a = <x, a>`.
pub fn adjoint_module(l: &LeibnizAlgebra) -> Result<LeibnizModule> {
    if let Some((i, j, k)) = l.leibniz_counterexample() {
        return Err(Error::IdentityViolation(format!(
            "Leibniz identity fails on basis triple ({i}, {j}, {k})"
        )));
    }
    let d = l.dim();
    let f = (0..d).map(|i| -&l.right_mult(&l.basis_vector(i))).collect();
    let g = (0..d).map(|i| l.left_mult(&l.basis_vector(i))).collect();
    LeibnizModule::new(l.clone(), f, g)
}

fn check_space(m: &LeibnizModule, u: &Subspace) -> Result<()> {
    if u.ambient_dim() != m.dim_v {
        return Err(Error::DimensionMismatch {
            expected: m.dim_v,
            found: u.ambient_dim(),
        });
    }
    Ok(())
}

pub fn is_submodule(m: &LeibnizModule, u: &Subspace) -> Result<bool> {
    check_space(m, u)?;
    Ok(m.f.iter().chain(&m.g).all(|op| u.is_invariant(op)))
}

pub fn submodule_closure(m: &LeibnizModule, u: &Subspace) -> Result<Subspace> {
    check_space(m, u)?;
    Ok(saturate(u, &m.all_ops()))
}

/// Span of `(g(y) - f(y)) v` over basis vectors `y` and `v`, checked to be a
/// submodule.
pub fn module_annihilator(m: &LeibnizModule) -> Result<Subspace> {
    let mut vectors = Vec::new();
    for (f, g) in m.f.iter().zip(&m.g) {
        let diff = g - f;
        vectors.extend((0..m.dim_v).map(|c| diff.column(c)));
    }
    let ann = Subspace::span(m.dim_v, &vectors)?;
    if !is_submodule(m, &ann)? {
        return Err(Error::IdentityViolation("module annihilator is not a submodule".into()));
    }
    Ok(ann)
}

/// Action `x̄ · v = f(x) v` of the Lie factor on the module annihilator.
pub fn lie_action_on_module_ann(m: &LeibnizModule) -> Result<LieModuleView> {
    let ann = module_annihilator(m)?;
    let factor = lie_factor(&m.algebra)?;
    for a in factor.annihilator.basis_vectors() {
        if ann.restrict(&m.f_of(&a)).is_none_or(|r| !r.is_zero()) {
            return Err(Error::WellDefinednessFailure(
                "f of an algebra annihilator element is nonzero on V^ann".into(),
            ));
        }
    }
    let actions = (0..factor.algebra.dim())
        .map(|i| {
            ann.restrict(&m.f_of(&factor.section.column(i))).ok_or_else(|| {
                Error::WellDefinednessFailure("f does not preserve V^ann".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
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

/// Module over a subalgebra, indexed by the canonical basis of `s`.
pub fn restrict(m: &LeibnizModule, s: &Subspace) -> Result<LeibnizModule> {
    let sub = m.algebra.subalgebra(s)?;
    let basis = s.basis_vectors();
    let f = basis.iter().map(|x| m.f_of(x)).collect();
    let g = basis.iter().map(|x| m.g_of(x)).collect();
    LeibnizModule::new(sub, f, g)
}

/// The submodule `u` as a module in its canonical-basis coordinates.
pub fn submodule(m: &LeibnizModule, u: &Subspace) -> Result<LeibnizModule> {
    check_space(m, u)?;
    let lift = |ops: &[Matrix]| -> Result<Vec<Matrix>> {
        ops.iter()
            .map(|op| u.restrict(op).ok_or(Error::Validation("subspace is not a submodule".into())))
            .collect()
    };
    LeibnizModule::new(m.algebra.clone(), lift(&m.f)?, lift(&m.g)?)
}

/// `V / u` in the complement coordinates of `u`.
pub fn quotient_module(m: &LeibnizModule, u: &Subspace) -> Result<LeibnizModule> {
    check_space(m, u)?;
    let push = |ops: &[Matrix]| -> Result<Vec<Matrix>> {
        ops.iter()
            .map(|op| {
                u.induced_on_quotient(op)
                    .ok_or(Error::Validation("subspace is not a submodule".into()))
            })
            .collect()
    };
    LeibnizModule::new(m.algebra.clone(), push(&m.f)?, push(&m.g)?)
}

/// Largest subspace of `start` invariant under every operator.
fn largest_invariant_within(start: &Subspace, ops: &[Matrix]) -> Result<Subspace> {
    let mut current = start.clone();
    loop {
        let mut next = current.clone();
        for op in ops {
            // {v in next : op v in current}
            let pre = (&current.constraint_matrix() * op).kernel();
            next = next.intersect(&pre)?;
        }
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// Irreducibility of a Lie-algebra module. Semisimple algebras use Schur's
/// lemma directly. Otherwise let `R` be the radical: on an irreducible
/// module `[g, R]` acts by zero and `R` by commuting operators, so a nonzero
/// action of `[g, R]` or a proper rational eigenspace of some `r in R` is a
/// submodule. Once `R` acts by scalars the module is completely reducible
/// (Weyl, for a Levi factor), and Schur's lemma applies again; a commutant
/// element with a rational eigenvalue and a proper kernel exhibits a
/// submodule. What remains (no rational eigenvalues) is undecidable here.
fn lie_module_irreducible(view: &LieModuleView) -> Result<bool> {
    let n = view.dim();
    if n <= 1 {
        return Ok(n == 1);
    }
    let lie = &view.lie;
    if is_semisimple_lie(lie) {
        return Ok(irreducible_by_commutant(&view.actions, n));
    }
    let act = |x: &[Rational]| -> Matrix {
        let mut out = Matrix::zeros(n, n);
        for (c, a) in x.iter().zip(&view.actions) {
            if !c.is_zero() {
                out = &out + &a.scale(c);
            }
        }
        out
    };
    let full = Subspace::full(lie.dim());
    let derived = lie.bracket_span(&full, &full);
    let kappa = killing_form(lie);
    let constraints: Vec<Vec<Rational>> = derived.basis_vectors().iter().map(|b| kappa.mul_vec(b)).collect();
    let radical = Matrix::from_rows(&constraints, lie.dim()).kernel();
    for j in lie.bracket_span(&full, &radical).basis_vectors() {
        if !act(&j).is_zero() {
            return Ok(false);
        }
    }
    let undecidable = || Error::Undecidable("no rational eigenvalue separates a submodule".into());
    for r in radical.basis_vectors() {
        let op = act(&r);
        match proper_eigenspace(&op)? {
            Some(_) => return Ok(false),
            None if is_scalar(&op) => {}
            None => return Err(undecidable()),
        }
    }
    let commutant = commutant_basis(&view.actions, n);
    if commutant.len() == 1 {
        return Ok(true);
    }
    for c in &commutant {
        if proper_eigenspace(c)?.is_some() {
            return Ok(false);
        }
    }
    Err(undecidable())
}

fn is_scalar(m: &Matrix) -> bool {
    let c = &m[(0, 0)];
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == if i == j { c.clone() } else { Rational::zero() }))
}

/// `ker(m - lambda)` for the first rational eigenvalue whose eigenspace is
/// proper.
fn proper_eigenspace(m: &Matrix) -> Result<Option<Subspace>> {
    for (lambda, _) in crate::linalg::rational_eigenvalues(m)?.values {
        let k = m.shift(&lambda).kernel();
        if !k.is_full() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `V^ann != 0` and the only submodules are `0`, `V^ann` and `V`.
///
/// `g` vanishes on `V^ann` and agrees with `f` on `V / V^ann`, so submodules
/// inside `V^ann` and above it are Lie-factor submodules. A remaining
/// submodule `U` meets `V^ann` trivially, hence lies in
/// `W = ∩ ker(g(x) - f(x))`; such `U` are exactly the nonzero `f`-invariant
/// subspaces of `W`, and the largest one must be `0` or `V^ann`.
pub fn is_3_irreducible(m: &LeibnizModule) -> Result<bool> {
    let ann = module_annihilator(m)?;
    if ann.is_zero() {
        return Ok(false);
    }
    let view = lie_action_on_module_ann(m)?;
    if !lie_module_irreducible(&view)? {
        return Ok(false);
    }
    if !ann.is_full() {
        let factor = lie_factor(&m.algebra)?;
        let top = quotient_module(m, &ann)?;
        let actions = (0..factor.algebra.dim())
            .map(|i| top.f_of(&factor.section.column(i)))
            .collect();
        let top_view = LieModuleView {
            lie: factor.algebra,
            space: Subspace::full(top.dim()),
            actions,
        };
        if !lie_module_irreducible(&top_view)? {
            return Ok(false);
        }
    }
    let constraints: Vec<Matrix> = m.f.iter().zip(&m.g).map(|(f, g)| g - f).collect();
    let refs: Vec<&Matrix> = constraints.iter().collect();
    let w = Matrix::vstack(&refs, m.dim_v).kernel();
    let s = largest_invariant_within(&w, &m.f)?;
    Ok(s.is_zero() || s == ann)
}

/// Eigenvector of the solvable family `rho(L)` inside the `rho`-invariant
/// subspace `start`. Works down the derived series: the weight space of an
/// ideal is invariant (Lie's lemma), and the next term acts on it by
/// commuting operators. The largest rational eigenvalue is taken at each
/// step. Returns the full joint eigenspace in `start` and the functional on
/// the algebra basis.
pub(crate) fn solvable_joint_eigenspace(
    l: &LeibnizAlgebra,
    rho: &dyn Fn(&[Rational]) -> Matrix,
    start: &Subspace,
) -> Result<(Subspace, Vec<Rational>)> {
    let mut current = start.clone();
    for term in derived_series(l).iter().rev() {
        for x in term.basis_vectors() {
            let op = rho(&x);
            let restricted = current.restrict(&op).ok_or_else(|| {
                Error::TheoremViolation("derived-series weight space is not invariant".into())
            })?;
            let eig = crate::linalg::rational_eigenvalues(&restricted)?;
            let Some((lambda, _)) = eig.values.last() else {
                return Err(Error::SplittingFailure(
                    "operator has no rational eigenvalue on the current weight space".into(),
                ));
            };
            current = current.intersect(&op.shift(lambda).kernel())?;
        }
    }
    let v = current
        .first_vector()
        .ok_or_else(|| Error::TheoremViolation("joint eigenspace is empty".into()))?;
    let d = l.dim();
    let phi: Vec<Rational> = (0..d)
        .map(|i| eigenvalue_on(&rho(&l.basis_vector(i)), &v))
        .collect::<Result<_>>()?;
    let mut joint = start.clone();
    for (i, p) in phi.iter().enumerate() {
        joint = joint.intersect(&rho(&l.basis_vector(i)).shift(p).kernel())?;
    }
    Ok((joint, phi))
}

/// `lambda` with `m v = lambda v`.
fn eigenvalue_on(m: &Matrix, v: &[Rational]) -> Result<Rational> {
    let image = m.mul_vec(v);
    let p = v
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::TheoremViolation("zero eigenvector".into()))?;
    let lambda = &image[p] / &v[p];
    if image.iter().zip(v).any(|(a, b)| *a != &lambda * b) {
        return Err(Error::TheoremViolation("vector is not an eigenvector".into()));
    }
    Ok(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiBranch {
    /// `psi = phi`
    Equal,
    /// `psi = 0`
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedLieVector {
    pub phi: Vec<Rational>,
    pub psi: Vec<Rational>,
    pub branch: PsiBranch,
    pub vector: Vec<Rational>,
}

/// Common eigenvector `v` with `f(z) v = phi(z) v` and `g(z) v = psi(z) v`,
/// `psi` in `{phi, 0}`, for a module over a solvable algebra. Inside the
/// joint `phi`-eigenspace `E` of `f`, a vector of `E ∩ ∩ ker(g - phi)` is
/// preferred, then one of `E ∩ ∩ ker g`; if both are zero the search moves
/// into `V^ann`, where `g` vanishes.
pub fn extended_lie_eigenvector(m: &LeibnizModule) -> Result<ExtendedLieVector> {
    let l = &m.algebra;
    if !is_solvable(l) {
        return Err(Error::NotSolvable);
    }
    let d = l.dim();
    let rho = |x: &[Rational]| m.f_of(x);
    let (e, phi) = solvable_joint_eigenspace(l, &rho, &Subspace::full(m.dim_v))?;
    let mut w1 = e.clone();
    let mut w0 = e;
    for i in 0..d {
        w1 = w1.intersect(&m.g[i].shift(&phi[i]).kernel())?;
        w0 = w0.intersect(&m.g[i].kernel())?;
    }
    let zero = vec![Rational::zero(); d];
    let (phi, psi, branch, vector) = if let Some(v) = w1.first_vector() {
        (phi.clone(), phi, PsiBranch::Equal, v)
    } else if let Some(v) = w0.first_vector() {
        (phi, zero, PsiBranch::Zero, v)
    } else {
        let ann = module_annihilator(m)?;
        if ann.is_zero() {
            return Err(Error::TheoremViolation(
                "no common eigenvector with psi in {phi, 0}".into(),
            ));
        }
        let (e, phi) = solvable_joint_eigenspace(l, &rho, &ann)?;
        let v = e.first_vector().expect("joint eigenspace is nonzero");
        (phi, zero, PsiBranch::Zero, v)
    };
    for i in 0..d {
        let fv = m.f[i].mul_vec(&vector);
        let gv = m.g[i].mul_vec(&vector);
        let ok = fv.iter().zip(&vector).all(|(a, b)| *a == &phi[i] * b)
            && gv.iter().zip(&vector).all(|(a, b)| *a == &psi[i] * b);
        if !ok {
            return Err(Error::TheoremViolation(format!(
                "eigenvector check fails for algebra basis element {i}"
            )));
        }
    }
    Ok(ExtendedLieVector {
        phi,
        psi,
        branch,
        vector,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagBlock {
    pub ann_vectors: Vec<Vec<Rational>>,
    pub eigen_vector: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagBasis {
    pub blocks: Vec<FlagBlock>,
}

impl FlagBasis {
    /// All vectors in flag order.
    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(b.ann_vectors.iter().cloned());
            out.extend(b.eigen_vector.iter().cloned());
        }
        out
    }

    /// Whether the last block has no eigenvector.
    pub fn ends_with_ann_block(&self) -> bool {
        self.blocks.last().is_some_and(|b| b.eigen_vector.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDatum {
    /// Value of the weight on each algebra basis element.
    pub functional: Vec<Rational>,
    pub space: Subspace,
    pub flag: Option<FlagBasis>,
}

impl WeightDatum {
    pub fn is_zero_weight(&self) -> bool {
        self.functional.iter().all(Zero::is_zero)
    }
}

/// Annihilator of the submodule `w`: span of `(g - f)(b) w`.
fn annihilator_of_subspace(m: &LeibnizModule, w: &Subspace) -> Result<Subspace> {
    let mut vectors = Vec::new();
    for (f, g) in m.f.iter().zip(&m.g) {
        let diff = g - f;
        vectors.extend(w.basis_vectors().iter().map(|v| diff.mul_vec(v)));
    }
    Subspace::span(m.dim_v, &vectors)
}

/// Joint generalized eigenspaces of `f(L)` for a right nilpotent algebra.
/// Each piece is checked to be a submodule, and for nonzero weights
/// `V^ann ∩ V^phi` is checked against the annihilator of `V^phi`.
pub fn weight_decomposition(m: &LeibnizModule) -> Result<Vec<WeightDatum>> {
    if !is_right_nilpotent(&m.algebra) {
        return Err(Error::NotRightNilpotent);
    }
    let pieces = simultaneous_fitting(&m.f, m.dim_v)?;
    let ann = module_annihilator(m)?;
    let mut out = Vec::with_capacity(pieces.len());
    for piece in pieces {
        if !is_submodule(m, &piece.space)? {
            return Err(Error::TheoremViolation(format!(
                "weight space {:?} is not g-invariant",
                piece.functional
            )));
        }
        let datum = WeightDatum {
            functional: piece.functional,
            space: piece.space,
            flag: None,
        };
        if !datum.is_zero_weight() {
            let lhs = ann.intersect(&datum.space)?;
            let rhs = annihilator_of_subspace(m, &datum.space)?;
            if lhs != rhs {
                return Err(Error::TheoremViolation(format!(
                    "V^ann ∩ V^phi differs from (V^phi)^ann for weight {:?}",
                    datum.functional
                )));
            }
        }
        out.push(datum);
    }
    Ok(out)
}

/// Triangular basis of a weight space. The first block is a basis of the
/// weight space's annihilator. Afterwards, with `F` the span of the flag so
/// far, block `i` extends `F` to `N = {w : g(x) w ∈ F for all x}` (a
/// submodule) and then adds one joint eigenvector of `W / N`, on which `g`
/// and `f` agree. The flag ends when `N = W`.
pub fn flag_basis(m: &LeibnizModule, w: &WeightDatum) -> Result<FlagBasis> {
    let space = &w.space;
    check_space(m, space)?;
    if w.functional.len() != m.algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.algebra.dim(),
            found: w.functional.len(),
        });
    }
    if !is_submodule(m, space)? {
        return Err(Error::Validation("weight space is not a submodule".into()));
    }
    let zero = Subspace::zero(m.dim_v);
    let mut blocks = Vec::new();
    let mut flag = zero.clone();
    let mut first = true;
    loop {
        let n_space = if first {
            first = false;
            annihilator_of_subspace(m, space)?
        } else {
            let mut n_space = space.clone();
            for g in &m.g {
                let pre = (&flag.constraint_matrix() * g).kernel();
                n_space = n_space.intersect(&pre)?;
            }
            n_space
        };
        if !flag.is_subspace_of(&n_space)? {
            return Err(Error::TheoremViolation("flag is not contained in the next term".into()));
        }
        let ann_vectors = flag.extension_within(&n_space)?;
        if n_space == *space {
            blocks.push(FlagBlock {
                ann_vectors,
                eigen_vector: None,
            });
            break;
        }
        let v = quotient_eigenvector(m, space, &n_space, &w.functional)?;
        blocks.push(FlagBlock {
            ann_vectors,
            eigen_vector: Some(v.clone()),
        });
        flag = n_space.sum(&Subspace::span(m.dim_v, &[v])?)?;
        if flag == *space {
            break;
        }
    }
    let basis = FlagBasis { blocks };
    check_flag(m, space, &w.functional, &basis)?;
    Ok(basis)
}

/// Lift of the first canonical vector of `∩ ker(f(x) - phi(x))` on `W / N`.
fn quotient_eigenvector(
    m: &LeibnizModule,
    space: &Subspace,
    n_space: &Subspace,
    phi: &[Rational],
) -> Result<Vec<Rational>> {
    let k = space.dim();
    let n_coords: Vec<Vec<Rational>> = n_space
        .basis_vectors()
        .iter()
        .map(|v| space.coordinates(v).expect("N lies in W"))
        .collect();
    let n_local = Subspace::span(k, &n_coords)?;
    let comp = n_local.complement_indices();
    let mut joint = Subspace::full(comp.len());
    for (f, p) in m.f.iter().zip(phi) {
        let on_w = space.restrict(f).expect("weight space is invariant");
        let on_q = n_local
            .induced_on_quotient(&on_w)
            .ok_or_else(|| Error::TheoremViolation("flag term is not f-invariant".into()))?;
        joint = joint.intersect(&on_q.shift(p).kernel())?;
    }
    let q = joint.first_vector().ok_or_else(|| {
        Error::TheoremViolation("no joint eigenvector on the quotient weight space".into())
    })?;
    let mut local = vec![Rational::zero(); k];
    for (x, &c) in q.into_iter().zip(&comp) {
        local[c] = x;
    }
    Ok(space.vector_from_coordinates(&local))
}

/// Verifies the triangularity congruences of a flag basis against the
/// cumulative flag, and that the flag vectors form a basis of `space`.
pub fn check_flag(m: &LeibnizModule, space: &Subspace, phi: &[Rational], flag: &FlagBasis) -> Result<()> {
    let vectors = flag.vectors();
    if vectors.len() != space.dim() || Subspace::span(m.dim_v, &vectors)? != *space {
        return Err(Error::TheoremViolation("flag vectors are not a basis of the weight space".into()));
    }
    let fail = |what: &str| Err(Error::TheoremViolation(format!("flag congruence fails: {what}")));
    let mut before = Subspace::zero(m.dim_v);
    for (bi, block) in flag.blocks.iter().enumerate() {
        for v in &block.ann_vectors {
            for g in &m.g {
                if !before.contains(&g.mul_vec(v)) {
                    return fail(&format!("g(x) v ≡ 0 in block {bi}"));
                }
            }
        }
        let with_ann = if block.ann_vectors.is_empty() {
            before.clone()
        } else {
            before.sum(&Subspace::span(m.dim_v, &block.ann_vectors)?)?
        };
        if let Some(v) = &block.eigen_vector {
            for (i, p) in phi.iter().enumerate() {
                let scaled: Vec<Rational> = v.iter().map(|x| x * p).collect();
                let fv = crate::linalg::sub_vec(&m.f[i].mul_vec(v), &scaled);
                let gv = crate::linalg::sub_vec(&m.g[i].mul_vec(v), &scaled);
                if !with_ann.contains(&fv) {
                    return fail(&format!("f(x) v ≡ phi(x) v in block {bi}"));
                }
                if !with_ann.contains(&gv) {
                    return fail(&format!("g(x) v ≡ phi(x) v in block {bi}"));
                }
            }
            before = with_ann.sum(&Subspace::span(m.dim_v, &[v.clone()])?)?;
        } else {
            before = with_ann;
        }
    }
    Ok(())
}
