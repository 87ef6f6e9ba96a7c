//! Acceptance criteria 1-10; prints one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use leibniz::algebra::LeibnizAlgebra;
use leibniz::cartan::{find_cartan, root_decomposition, structure_checks, Parity};
use leibniz::linalg::Subspace;
use leibniz::module::{
    adjoint_module, check_flag, extended_lie_eigenvector, flag_basis, is_3_irreducible, module_annihilator,
    restrict, verify_module, weight_decomposition, LeibnizModule, PsiBranch,
};
use leibniz::simple::{is_simple, is_standard, simplicity_certificate, SimplicityClause};
use leibniz::sl2::{classify, construct_standard, template, Variant};
use leibniz::structure::{annihilator, is_solvable, lie_factor};
use leibniz::Error;
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn tag(n: i64, a: &Q, b: &Q) -> String {
    format!("n={n} alpha={a} beta={b}")
}

fn c1_template_validity() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    let mut elapsed = Duration::ZERO;
    for (n, a, b, l) in &grid {
        let start = Instant::now();
        let ok = l.verify_leibniz() && l.leibniz_counterexample().is_none();
        elapsed += start.elapsed();
        ensure!(ok, "{}: Leibniz identity fails", tag(*n, a, b));
        // independent triple check on the raw constants
        let d = l.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit(d, i), unit(d, j), unit(d, k));
                    let lhs = bracket(l, &bracket(l, &x, &y), &z);
                    let r1 = bracket(l, &x, &bracket(l, &y, &z));
                    let r2 = bracket(l, &bracket(l, &x, &z), &y);
                    let rhs: Vec<Q> = r1.iter().zip(&r2).map(|(p, q)| p + q).collect();
                    ensure!(lhs == rhs, "{}: oracle finds a violation at ({i},{j},{k})", tag(*n, a, b));
                }
            }
        }
    }
    ensure!(elapsed < Duration::from_secs(30), "verification took {elapsed:?}");
    Ok(format!("{} algebras, verification time {:.2?}", grid.len(), elapsed))
}

fn c2_annihilator() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    for (n, a, b, l) in &grid {
        let d = l.dim();
        let ann = annihilator(l).map_err(|e| e.to_string())?;
        let expected = Subspace::coordinate(d, &(3..d).collect::<Vec<_>>());
        ensure!(ann == expected, "{}: annihilator differs from span(v0..vn)", tag(*n, a, b));
        ensure!(ann.dim() as i64 == n + 1, "{}: dimension {}", tag(*n, a, b), ann.dim());
        let oracle = annihilator_oracle(l);
        ensure!(same_span(&oracle, &ann.basis_vectors()), "{}: oracle disagrees", tag(*n, a, b));
    }
    Ok(format!("{} algebras, L^ann = span(v0..vn)", grid.len()))
}

fn sl2_lie() -> LeibnizAlgebra {
    lie_factor(&construct_standard(1).unwrap()).unwrap().algebra
}

fn c3_simplicity() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    for (n, a, b, l) in &grid {
        let c = simplicity_certificate(l).map_err(|e| e.to_string())?;
        let full = c.annihilator_acts
            && c.factor_dim == 3
            && c.factor_simple == Some(true)
            && c.annihilator_irreducible == Some(true)
            && c.perfect == Some(true)
            && c.failed.is_none();
        ensure!(full, "{}: certificate {c:?}", tag(*n, a, b));
        ensure!(is_simple(l).unwrap(), "{}: is_simple false", tag(*n, a, b));
    }
    let sl2 = sl2_lie();
    ensure!(sl2.dim() == 3 && sl2.is_antisymmetric(), "sl2 is not a 3-dimensional Lie algebra");
    let c = simplicity_certificate(&sl2).map_err(|e| e.to_string())?;
    ensure!(!c.annihilator_acts, "sl2: annihilator reported as acting");
    ensure!(c.failed == Some(SimplicityClause::AnnihilatorActs), "sl2: {c:?}");
    ensure!(!is_simple(&sl2).unwrap(), "sl2 reported simple");
    Ok(format!("{} full certificates; sl2 rejected by clause a", grid.len()))
}

/// Brute-force generalized eigenspaces of `m` over integer candidates.
fn generalized_eigenspaces(m: &Mat, bound: i64) -> Vec<(Q, Vec<Vec<Q>>)> {
    let d = m.len();
    (-bound..=bound)
        .filter_map(|lam| {
            let space = null_space(&power(&shifted(m, &q(lam)), d), d);
            (!space.is_empty()).then(|| (q(lam), space))
        })
        .collect()
}

fn c4_root_census() -> Outcome {
    let mut checked = 0;
    for (n, a, b, l) in grid(&[2, 4]) {
        let d = l.dim();
        let t = tag(n, &a, &b);
        let h_cartan = find_cartan(&l, 0).map_err(|e| format!("{t}: {e}"))?;
        let rd = root_decomposition(&l, &h_cartan).map_err(|e| format!("{t}: {e}"))?;
        let hb = h_cartan.basis_vectors();
        let ann = annihilator_oracle(&l);

        // oracle eigenspaces of -r_h, over a range that covers all weights
        let minus_rh: Mat = right_mult(&l, &unit(d, 1)).iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let spaces = generalized_eigenspaces(&minus_rh, 2 * n + 4);
        let total: usize = spaces.iter().map(|(_, s)| s.len()).sum();
        ensure!(total == d, "{t}: -r_h does not split over the integer range");

        let mut census = Vec::new();
        for root in &rd.roots {
            let rs = root.space.basis_vectors();
            // h-value: the oracle eigenspace containing the root space
            let hit = spaces.iter().find(|(_, s)| rs.iter().all(|v| in_span(s, v)));
            let Some((lam, _)) = hit else { return Err(format!("{t}: root space not in an h-eigenspace")) };
            // functional values against each Cartan basis element
            for (x, val) in hb.iter().zip(&root.functional) {
                let op: Mat = right_mult(&l, x).iter().map(|r| r.iter().map(|y| -y).collect()).collect();
                let gen = null_space(&power(&shifted(&op, val), d), d);
                ensure!(rs.iter().all(|v| in_span(&gen, v)), "{t}: functional value {val} not confirmed");
            }
            let odd = rs.iter().all(|v| in_span(&ann, v));
            let parity = if odd { Parity::Odd } else { Parity::Even };
            ensure!(parity == root.parity, "{t}: parity disagrees with the oracle");
            census.push((lam.clone(), rs.len(), parity));
        }
        // every nonzero oracle eigenspace is the sum of the roots with that value
        for (lam, s) in &spaces {
            let parts: Vec<Vec<Q>> = rd
                .roots
                .iter()
                .zip(&census)
                .filter(|(_, c)| &c.0 == lam)
                .flat_map(|(r, _)| r.space.basis_vectors())
                .collect();
            if lam.is_zero() {
                ensure!(same_span(s, &hb), "{t}: zero eigenspace of -r_h is not H");
            } else {
                ensure!(same_span(s, &parts), "{t}: eigenspace {lam} not covered by roots");
            }
        }
        census.sort_by(|x, y| x.0.cmp(&y.0));
        let expected = if n == 4 {
            vec![(q(-4), 1, Parity::Odd), (q(-2), 2, Parity::Even), (q(2), 2, Parity::Even), (q(4), 1, Parity::Odd)]
        } else {
            vec![(q(-2), 2, Parity::Even), (q(2), 2, Parity::Even)]
        };
        ensure!(census == expected, "{t}: census {census:?}");
        checked += 1;
    }
    Ok(format!("{checked} algebras (n = 2, 4) match the brute-force oracle"))
}

fn c5_structure() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    for (n, a, b, l) in &grid {
        let t = tag(*n, a, b);
        let h = find_cartan(l, 0).map_err(|e| format!("{t}: {e}"))?;
        let rd = root_decomposition(l, &h).map_err(|e| format!("{t}: {e}"))?;
        let rep = structure_checks(l, &rd).map_err(|e| format!("{t}: {e}"))?;
        ensure!(rep.cartan_abelian && rep.annihilator_decomposes, "{t}: {rep:?}");
        let hb = h.basis_vectors();
        for x in &hb {
            for y in &hb {
                ensure!(bracket(l, x, y).iter().all(Zero::is_zero), "{t}: <H, H> != 0");
            }
        }
        // L^ann = (H ∩ L^ann) ⊕ sum of the root annihilator parts
        let ann = annihilator_oracle(l);
        let ann_dim = ann.len();
        let h_ann_dim = hb.len() + ann_dim - rank(&hb.iter().chain(&ann).cloned().collect::<Vec<_>>());
        let mut pieces: Vec<Vec<Q>> = null_space(
            &(0..l.dim())
                .map(|r| hb.iter().map(|v| v[r].clone()).chain(ann.iter().map(|v| -v[r].clone())).collect())
                .collect(),
            hb.len() + ann_dim,
        )
        .iter()
        .map(|c| {
            (0..l.dim())
                .map(|r| hb.iter().zip(c).fold(Q::zero(), |s, (v, k)| s + &v[r] * k))
                .collect()
        })
        .collect();
        ensure!(rank(&pieces) == h_ann_dim, "{t}: H ∩ L^ann mismatch");
        let mut total = h_ann_dim;
        for root in &rd.roots {
            let part = root.ann_part.basis_vectors();
            total += part.len();
            pieces.extend(part);
        }
        ensure!(total == ann_dim && rank(&pieces) == ann_dim, "{t}: annihilator does not decompose");
        for rs in &rep.roots {
            for (x, val) in hb.iter().zip(&rs.functional) {
                let lx = left_mult(l, x);
                let rx = right_mult(l, x);
                match rs.parity {
                    Parity::Odd => {
                        for v in &rs.ann_lines {
                            ensure!(apply(&lx, v).iter().all(Zero::is_zero), "{t}: l_h v != 0 on an odd root");
                            let want: Vec<Q> = v.iter().map(|c| -(c * val)).collect();
                            ensure!(apply(&rx, v) == want, "{t}: odd root vector is not an eigenvector");
                        }
                    }
                    Parity::Even => {
                        let v = rs.v_phi.as_ref().ok_or(format!("{t}: even root without v_phi"))?;
                        let diff: Vec<Q> = apply(&lx, v).iter().zip(v).map(|(p, c)| p - c * val).collect();
                        ensure!(
                            rs.ann_lines.is_empty() && diff.iter().all(Zero::is_zero) || in_span(&rs.ann_lines, &diff),
                            "{t}: even congruence fails"
                        );
                    }
                }
            }
        }
    }
    Ok(format!("{} algebras: H abelian, annihilator splits, odd/even congruences hold", grid.len()))
}

fn resubstitute(m: &LeibnizModule) -> Result<(), String> {
    let r = extended_lie_eigenvector(m).map_err(|e| e.to_string())?;
    ensure!(r.vector.iter().any(|x| !x.is_zero()), "zero vector");
    let zero = vec![Q::zero(); r.phi.len()];
    ensure!(r.psi == r.phi || r.psi == zero, "psi not in {{phi, 0}}");
    ensure!(
        (r.branch == PsiBranch::Equal && r.psi == r.phi) || (r.branch == PsiBranch::Zero && r.psi == zero),
        "branch label disagrees with psi"
    );
    for i in 0..m.algebra().dim() {
        let f = to_mat(&m.f_mats()[i]);
        let g = to_mat(&m.g_mats()[i]);
        let fv: Vec<Q> = r.vector.iter().map(|x| x * &r.phi[i]).collect();
        let gv: Vec<Q> = r.vector.iter().map(|x| x * &r.psi[i]).collect();
        ensure!(apply(&f, &r.vector) == fv, "f equation fails at {i}");
        ensure!(apply(&g, &r.vector) == gv, "g equation fails at {i}");
    }
    Ok(())
}

fn c6_extended_lie() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    for (n, a, b, l) in &grid {
        let t = tag(*n, a, b);
        let d = l.dim();
        let borel = Subspace::coordinate(d, &(1..d).collect::<Vec<_>>());
        let m = restrict(&adjoint_module(l).unwrap(), &borel).map_err(|e| format!("{t}: {e}"))?;
        ensure!(is_solvable(m.algebra()), "{t}: Borel part not solvable");
        resubstitute(&m).map_err(|e| format!("{t}: {e}"))?;
    }
    let mut rng = rng(0x1e1b);
    let (mut accepted, mut attempts) = (0, 0);
    while accepted < 50 {
        attempts += 1;
        ensure!(attempts <= 1000, "only {accepted} random instances accepted in 1000 attempts");
        let (l, m) = random_solvable_with_module(&mut rng);
        if !is_solvable(&l) || verify_module(&m).is_some() {
            continue;
        }
        match extended_lie_eigenvector(&m) {
            Err(Error::SplittingFailure(_)) | Err(Error::Undecidable(_)) => continue,
            _ => {}
        }
        resubstitute(&m).map_err(|e| format!("random instance {accepted}: {e}"))?;
        accepted += 1;
    }
    Ok(format!("{} Borel restrictions and {accepted} random instances ({attempts} sampled)", grid.len()))
}

fn cartan_module(l: &LeibnizAlgebra) -> Result<LeibnizModule, String> {
    let h = find_cartan(l, 0).map_err(|e| e.to_string())?;
    restrict(&adjoint_module(l).map_err(|e| e.to_string())?, &h).map_err(|e| e.to_string())
}

fn c7_flag_basis() -> Outcome {
    let grid = grid(&[2, 4, 6, 8]);
    let mut spaces = 0;
    for (n, a, b, l) in &grid {
        let t = tag(*n, a, b);
        let m = cartan_module(l).map_err(|e| format!("{t}: {e}"))?;
        for w in weight_decomposition(&m).map_err(|e| format!("{t}: {e}"))? {
            let flag = flag_basis(&m, &w).map_err(|e| format!("{t}: {e}"))?;
            check_flag(&m, &w.space, &w.functional, &flag).map_err(|e| format!("{t}: {e}"))?;
            let basis = flag.vectors();
            ensure!(same_span(&basis, &w.space.basis_vectors()), "{t}: flag does not span the weight space");
            ensure!(rank(&basis) == basis.len(), "{t}: flag vectors dependent");
            // block-triangular shape in flag coordinates
            let mut pos = 0;
            for block in &flag.blocks {
                let start = pos;
                pos += block.ann_vectors.len();
                for i in 0..m.algebra().dim() {
                    let f = to_mat(&m.f_mats()[i]);
                    let g = to_mat(&m.g_mats()[i]);
                    for v in &block.ann_vectors {
                        let c = coordinates(&basis, &apply(&g, v)).ok_or(format!("{t}: not invariant"))?;
                        ensure!(c[start..].iter().all(Zero::is_zero), "{t}: g on an annihilator line");
                    }
                    if let Some(v) = &block.eigen_vector {
                        let phi = &w.functional[i];
                        for op in [&f, &g] {
                            let img: Vec<Q> = apply(op, v).iter().zip(v).map(|(x, y)| x - y * phi).collect();
                            let c = coordinates(&basis, &img).ok_or(format!("{t}: not invariant"))?;
                            ensure!(c[pos..].iter().all(Zero::is_zero), "{t}: eigenvector congruence");
                        }
                    }
                }
                if block.eigen_vector.is_some() {
                    pos += 1;
                }
            }
            spaces += 1;
        }
    }
    Ok(format!("{spaces} weight spaces over {} algebras", grid.len()))
}

fn c8_classification() -> Outcome {
    let mut rng = rng(0xc1a55);
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for (n, a, b, l) in grid(&[2, 4, 6, 8]) {
        let t = tag(n, &a, &b);
        let base = classify(&l).map_err(|e| format!("{t}: {e}"))?;
        let p0 = base.basis_change.clone().ok_or(format!("{t}: no basis change"))?;
        let p0_inv = p0.inverse().unwrap();
        for s_i in 0..5 {
            let s = scramble(&mut rng, l.dim());
            ensure!(det_oracle(&to_mat(&s)).abs() == q(1) && max_abs_entry(&s) <= q(3), "bad scramble");
            let scrambled = l.change_basis(&s).unwrap();
            let start = Instant::now();
            let r = classify(&scrambled).map_err(|e| format!("{t} scramble {s_i}: {e}"))?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            ensure!(took < Duration::from_secs(10), "{t} scramble {s_i}: {took:?}");
            ensure!(r.variant == Variant::Template && r.verified, "{t} scramble {s_i}: {:?}", r.variant);
            let p = r.basis_change.as_ref().unwrap();
            let (ra, rb) = (r.alpha.clone().unwrap(), r.beta.clone().unwrap());
            let moved = scrambled.change_basis(p).unwrap();
            ensure!(moved.same_constants(&template(n as usize, &ra, &rb).unwrap()), "{t}: template mismatch");
            // composing with the unscrambled classification recovers the input parameters
            let back = scrambled.change_basis(&(p * &p0_inv)).unwrap();
            ensure!(back.same_constants(&l), "{t}: composed basis change does not reproduce the input");
            count += 1;
        }
    }
    for n in [1usize, 3, 5] {
        let l = construct_standard(n).unwrap();
        let start = Instant::now();
        let r = classify(&l).map_err(|e| format!("standard n={n}: {e}"))?;
        slowest = slowest.max(start.elapsed());
        ensure!(r.variant == Variant::Standard && r.verified, "standard n={n}: {:?}", r.variant);
        let moved = l.change_basis(r.basis_change.as_ref().unwrap()).unwrap();
        ensure!(moved.same_constants(&l), "standard n={n}: constants differ");
        let split = is_standard(&l).unwrap().ok_or(format!("standard n={n}: no splitting"))?;
        let c = split.complement.basis_vectors();
        for x in &c {
            for y in &c {
                ensure!(in_span(&c, &bracket(&l, x, y)), "standard n={n}: complement not closed");
            }
        }
        let all: Vec<Vec<Q>> = c.iter().chain(&annihilator_oracle(&l)).cloned().collect();
        ensure!(rank(&all) == l.dim() && c.len() == 3, "standard n={n}: not complementary");
        count += 1;
    }
    Ok(format!("{count} instances, slowest {slowest:.2?}"))
}

fn c9_cross_identities() -> Outcome {
    let mut cases: Vec<(String, LeibnizAlgebra)> =
        grid(&[2, 4, 6, 8]).into_iter().map(|(n, a, b, l)| (tag(n, &a, &b), l)).collect();
    cases.push(("sl2".into(), sl2_lie()));
    let l = construct_standard(2).unwrap();
    cases.push(("sl2 + V(2) + trivial".into(), l.direct_sum(&LeibnizAlgebra::abelian(vec!["z".into()]).unwrap()).unwrap()));
    let borel = Subspace::coordinate(6, &[1, 2, 3, 4, 5]);
    cases.push(("Borel part".into(), grid(&[2])[5].3.subalgebra(&borel).unwrap()));
    for (t, l) in &cases {
        let m = adjoint_module(l).map_err(|e| format!("{t}: {e}"))?;
        let ma = module_annihilator(&m).map_err(|e| format!("{t}: {e}"))?;
        ensure!(ma == annihilator(l).unwrap(), "{t}: module annihilator differs");
        ensure!(same_span(&ma.basis_vectors(), &annihilator_oracle(l)), "{t}: oracle disagrees");
        let three = is_3_irreducible(&m).map_err(|e| format!("{t}: {e}"))?;
        ensure!(three == is_simple(l).unwrap(), "{t}: 3-irreducibility {three} vs simplicity");
    }
    Ok(format!("{} algebras, including 3 non-simple controls", cases.len()))
}

fn c10_weights() -> Outcome {
    let mut corpus: Vec<(String, LeibnizAlgebra)> =
        grid(&[2, 4, 6, 8]).into_iter().map(|(n, a, b, l)| (tag(n, &a, &b), l)).collect();
    for n in [1usize, 3, 5] {
        corpus.push((format!("standard n={n}"), construct_standard(n).unwrap()));
    }
    let mut pieces_seen = 0;
    for (t, l) in &corpus {
        let m = cartan_module(l).map_err(|e| format!("{t}: {e}"))?;
        let dv = m.dim();
        let weights = weight_decomposition(&m).map_err(|e| format!("{t}: {e}"))?;
        let all: Vec<Vec<Q>> = weights.iter().flat_map(|w| w.space.basis_vectors()).collect();
        let total: usize = weights.iter().map(|w| w.space.dim()).sum();
        ensure!(total == dv && rank(&all) == dv, "{t}: pieces are not a direct decomposition");
        let diff = |i: usize| -> Mat {
            let (f, g) = (to_mat(&m.f_mats()[i]), to_mat(&m.g_mats()[i]));
            g.iter().zip(&f).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
        };
        let ann_of = |vs: &[Vec<Q>]| -> Vec<Vec<Q>> {
            let mut out: Vec<Vec<Q>> = (0..m.algebra().dim())
                .flat_map(|i| {
                    let op = diff(i);
                    vs.iter().map(move |v| apply(&op, v)).collect::<Vec<_>>()
                })
                .collect();
            eliminate(&mut out);
            out
        };
        let v_ann = ann_of(&(0..dv).map(|i| unit(dv, i)).collect::<Vec<_>>());
        for w in &weights {
            pieces_seen += 1;
            if w.is_zero_weight() {
                continue;
            }
            let vp = w.space.basis_vectors();
            let vp_ann = ann_of(&vp);
            // dim(V^ann ∩ V^phi) = dim V^ann + dim V^phi - dim(V^ann + V^phi)
            let sum: Vec<Vec<Q>> = v_ann.iter().chain(&vp).cloned().collect();
            let inter = v_ann.len() + vp.len() - rank(&sum);
            let contained = vp_ann.iter().all(|v| in_span(&v_ann, v) && in_span(&vp, v));
            ensure!(contained && inter == vp_ann.len(), "{t}: V^ann ∩ V^phi != (V^phi)^ann");
        }
    }
    Ok(format!("{pieces_seen} weight spaces over {} corpus instances", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("template validity", c1_template_validity),
        ("annihilator reproduction", c2_annihilator),
        ("simplicity", c3_simplicity),
        ("root census", c4_root_census),
        ("root structure", c5_structure),
        ("extended Lie", c6_extended_lie),
        ("flag basis", c7_flag_basis),
        ("classification round trip", c8_classification),
        ("cross-identities", c9_cross_identities),
        ("weight decomposition", c10_weights),
    ];
    // ACCEPTANCE_ONLY=4,8 runs a subset.
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(i + 1))) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
