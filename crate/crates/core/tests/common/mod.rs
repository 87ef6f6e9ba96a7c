//! Test-side oracle: dense Gaussian elimination over `BigRational`, written
//! independently of the library's linear algebra, plus random generators.
#![allow(dead_code)]

use leibniz::algebra::LeibnizAlgebra;
use leibniz::linalg::{Matrix, Rational};
use leibniz::module::LeibnizModule;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;
pub type Mat = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Row-reduces in place and returns the rank.
pub fn eliminate(rows: &mut Mat) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                for j in 0..cols {
                    let t = &k * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    r
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    eliminate(&mut rows.to_vec())
}

/// Null space of `m` (acting on column vectors) as a list of basis vectors.
pub fn null_space(m: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut rows = m.clone();
    eliminate(&mut rows);
    let mut pivots = Vec::new();
    for row in &rows {
        pivots.push(row.iter().position(|x| !x.is_zero()).unwrap());
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both) == ra
}

pub fn in_span(span: &[Vec<Q>], v: &[Q]) -> bool {
    let mut with: Vec<Vec<Q>> = span.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(span)
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |s, (x, brow)| s + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn apply(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn shifted(a: &Mat, lambda: &Q) -> Mat {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    m
}

pub fn power(a: &Mat, e: usize) -> Mat {
    (0..e).fold(identity(a.len()), |acc, _| mat_mul(&acc, a))
}

pub fn to_mat(m: &Matrix) -> Mat {
    m.row_vectors()
}

/// `y -> <y, x>` for a coordinate vector `x`, built from the raw constants.
pub fn right_mult(l: &LeibnizAlgebra, x: &[Q]) -> Mat {
    let d = l.dim();
    let mut m = vec![vec![Q::zero(); d]; d];
    for i in 0..d {
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, row) in m.iter_mut().enumerate() {
                row[i] += xj * l.constant(i, j, k);
            }
        }
    }
    m
}

/// `y -> <x, y>`.
pub fn left_mult(l: &LeibnizAlgebra, x: &[Q]) -> Mat {
    let d = l.dim();
    let mut m = vec![vec![Q::zero(); d]; d];
    for j in 0..d {
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, row) in m.iter_mut().enumerate() {
                row[j] += xi * l.constant(i, j, k);
            }
        }
    }
    m
}

pub fn bracket(l: &LeibnizAlgebra, x: &[Q], y: &[Q]) -> Vec<Q> {
    let d = l.dim();
    let mut out = vec![Q::zero(); d];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, o) in out.iter_mut().enumerate() {
                let c = l.constant(i, j, k);
                if !c.is_zero() {
                    *o += xi * yj * c;
                }
            }
        }
    }
    out
}

/// Span of `<b_i, b_j> + <b_j, b_i>`, as a list of vectors.
pub fn annihilator_oracle(l: &LeibnizAlgebra) -> Vec<Vec<Q>> {
    let d = l.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            let v: Vec<Q> = (0..d).map(|k| l.constant(i, j, k) + l.constant(j, i, k)).collect();
            out.push(v);
        }
    }
    let mut rows = out;
    eliminate(&mut rows);
    rows
}

pub fn unit(d: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i] = Q::one();
    v
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer matrix with determinant ±1 and entries in [-3, 3], built from a
/// signed permutation by elementary row additions that keep the bound.
pub fn scramble(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| if perm[i] == j { if rng.random_bool(0.5) { 1 } else { -1 } } else { 0 }).collect())
        .collect();
    let mut steps = 0;
    while d > 1 && steps < 4 * d {
        let (a, b) = (rng.random_range(0..d), rng.random_range(0..d));
        if a == b {
            continue;
        }
        let k = if rng.random_bool(0.5) { 1 } else { -1 };
        let new: Vec<i64> = (0..d).map(|j| m[a][j] + k * m[b][j]).collect();
        if new.iter().all(|x| x.abs() <= 3) {
            m[a] = new;
        }
        steps += 1;
    }
    Matrix::from_fn(d, d, |i, j| q(m[i][j]))
}

pub fn det_oracle(m: &Mat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let k = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &k * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn max_abs_entry(m: &Matrix) -> Q {
    m.entries().iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
}

fn small(rng: &mut ChaCha8Rng) -> Q {
    q(rng.random_range(-2..=2))
}

/// Random unimodular change of basis for `n`-dimensional spaces.
fn conjugator(rng: &mut ChaCha8Rng, n: usize) -> (Mat, Mat) {
    let p = to_mat(&scramble(rng, n));
    let pinv = to_mat(&Matrix::from_rows(&p, n).inverse().unwrap());
    (p, pinv)
}

fn conjugate(m: &Mat, p: &Mat, pinv: &Mat) -> Mat {
    mat_mul(&mat_mul(pinv, m), p)
}

/// A solvable Lie algebra `g` of dimension 1 or 2 with a representation on
/// `dim_m`: `(constants of g, action matrices)`. Eigenvalues are rational.
/// For `dim_g = 2`, `abelian` selects which of the two algebras is used.
fn solvable_lie_rep(rng: &mut ChaCha8Rng, dim_g: usize, abelian: bool, dim_m: usize) -> (Vec<Q>, Vec<Mat>) {
    let upper = |rng: &mut ChaCha8Rng| -> Mat {
        (0..dim_m)
            .map(|i| (0..dim_m).map(|j| if j >= i { small(rng) } else { Q::zero() }).collect())
            .collect()
    };
    let (p, pinv) = conjugator(rng, dim_m);
    match dim_g {
        1 => (vec![Q::zero()], vec![conjugate(&upper(rng), &p, &pinv)]),
        _ if abelian => {
            // abelian: y acts by a polynomial in the action of x
            let a = upper(rng);
            let a2 = mat_mul(&a, &a);
            let (c0, c1, c2) = (small(rng), small(rng), small(rng));
            let b: Mat = (0..dim_m)
                .map(|i| {
                    (0..dim_m)
                        .map(|j| {
                            let id = if i == j { c0.clone() } else { Q::zero() };
                            id + &c1 * &a[i][j] + &c2 * &a2[i][j]
                        })
                        .collect()
                })
                .collect();
            (vec![Q::zero(); 8], vec![conjugate(&a, &p, &pinv), conjugate(&b, &p, &pinv)])
        }
        _ => {
            // <x, y> = y, <y, x> = -y; x acts diagonally with steps of one,
            // y by a superdiagonal
            let d0 = small(rng);
            let a: Mat = (0..dim_m)
                .map(|i| {
                    (0..dim_m)
                        .map(|j| if i == j { &d0 - q(i as i64) } else { Q::zero() })
                        .collect()
                })
                .collect();
            let b: Mat = (0..dim_m)
                .map(|i| (0..dim_m).map(|j| if j == i + 1 { small(rng) } else { Q::zero() }).collect())
                .collect();
            let mut c = vec![Q::zero(); 8];
            c[3] = q(1); // <x, y> = y
            c[5] = q(-1); // <y, x> = -y
            (c, vec![conjugate(&a, &p, &pinv), conjugate(&b, &p, &pinv)])
        }
    }
}

/// Random solvable Leibniz algebra `g ⋉ M` (with `<m, x> = -x.m`) of
/// dimension 2 to 4 together with a random module, both in scrambled bases.
/// The module is a sum of a piece with `g = f`, a piece with `g = 0`, both
/// pulled back from `g`, and possibly the adjoint module.
pub fn random_solvable_with_module(rng: &mut ChaCha8Rng) -> (LeibnizAlgebra, LeibnizModule) {
    let dim_g = rng.random_range(1..=2);
    let dim_m = rng.random_range(1..=(4 - dim_g));
    let d = dim_g + dim_m;
    let abelian = rng.random_bool(0.5);
    let (gc, tau) = solvable_lie_rep(rng, dim_g, abelian, dim_m);
    let mut c = vec![Q::zero(); d * d * d];
    for i in 0..dim_g {
        for j in 0..dim_g {
            for k in 0..dim_g {
                c[(i * d + j) * d + k] = gc[(i * 2 + j) * 2 + k].clone();
            }
        }
    }
    for (x, t) in tau.iter().enumerate() {
        for a in 0..dim_m {
            for b in 0..dim_m {
                // <m_a, x> = -x.m_a
                c[((dim_g + a) * d + x) * d + dim_g + b] = -t[b][a].clone();
            }
        }
    }
    let labels = (0..d).map(|i| format!("b{i}")).collect();
    let base = LeibnizAlgebra::new(labels, c).unwrap();
    let s = scramble(rng, d);
    let l = base.change_basis(&s).unwrap();

    let sym_dim = rng.random_range(0..=2);
    let anti_dim = rng.random_range(0..=2);
    let with_adjoint = rng.random_bool(0.3) || sym_dim + anti_dim == 0;
    let (_, sym) = solvable_lie_rep(rng, dim_g, abelian, sym_dim.max(1));
    let (_, anti) = solvable_lie_rep(rng, dim_g, abelian, anti_dim.max(1));
    let dv = sym_dim + anti_dim + if with_adjoint { d } else { 0 };
    let mut f0 = vec![vec![vec![Q::zero(); dv]; dv]; d];
    let mut g0 = f0.clone();
    for x in 0..d {
        let mut off = 0;
        if x < dim_g {
            for a in 0..sym_dim {
                for b in 0..sym_dim {
                    f0[x][a][b] = sym[x][a][b].clone();
                    g0[x][a][b] = sym[x][a][b].clone();
                }
            }
        }
        off += sym_dim;
        if x < dim_g {
            for a in 0..anti_dim {
                for b in 0..anti_dim {
                    f0[x][off + a][off + b] = anti[x][a][b].clone();
                }
            }
        }
        off += anti_dim;
        if with_adjoint {
            let r = right_mult(&base, &unit(d, x));
            let lm = left_mult(&base, &unit(d, x));
            for a in 0..d {
                for b in 0..d {
                    f0[x][off + a][off + b] = -r[a][b].clone();
                    g0[x][off + a][off + b] = lm[a][b].clone();
                }
            }
        }
    }
    // move to the scrambled algebra basis and conjugate V
    let (p, pinv) = conjugator(rng, dv);
    let sm = to_mat(&s);
    let mix = |ops: &[Mat]| -> Vec<Matrix> {
        (0..d)
            .map(|j| {
                let mut acc = vec![vec![Q::zero(); dv]; dv];
                for (i, op) in ops.iter().enumerate() {
                    for a in 0..dv {
                        for b in 0..dv {
                            acc[a][b] += &sm[i][j] * &op[a][b];
                        }
                    }
                }
                Matrix::from_rows(&conjugate(&acc, &p, &pinv), dv)
            })
            .collect()
    };
    let m = LeibnizModule::new(l.clone(), mix(&f0), mix(&g0)).unwrap();
    (l, m)
}

/// Coordinates of `u` in the independent list `basis`, if `u` lies in its span.
pub fn coordinates(basis: &[Vec<Q>], u: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let mut rows: Mat = (0..u.len())
        .map(|r| basis.iter().map(|b| b[r].clone()).chain([u[r].clone()]).collect())
        .collect();
    let rk = eliminate(&mut rows);
    if rk > k || rows.iter().any(|row| row[..k].iter().all(Zero::is_zero)) {
        return None;
    }
    Some(rows.iter().map(|row| row[k].clone()).collect())
}

pub fn grid_params() -> Vec<Q> {
    vec![q(0), q(1), qr(-3, 2), q(5)]
}

/// Template algebras over the grid for the given even `n`.
pub fn grid(ns: &[i64]) -> Vec<(i64, Q, Q, LeibnizAlgebra)> {
    let mut out = Vec::new();
    for &n in ns {
        for a in grid_params() {
            for b in grid_params() {
                let l = if n == 2 {
                    leibniz::sl2::construct_sl22(&a, &b)
                } else {
                    leibniz::sl2::construct_sl2n(n, &a, &b).unwrap()
                };
                out.push((n, a.clone(), b, l));
            }
        }
    }
    out
}
