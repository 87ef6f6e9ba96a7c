//! Exact linear algebra over the rationals.
//!
//! Everything in the crate sits on these types: arbitrary-precision
//! rationals, dense matrices, subspaces canonicalized by reduced row-echelon
//! form, characteristic polynomials and generalized eigenspaces. No floating
//! point is used anywhere.

mod eigen;
mod matrix;
mod modular;
mod poly;
mod subspace;

pub use eigen::{
    generalized_eigenspace, rational_eigenvalues, simultaneous_fitting, Eigenvalues, FittingPiece,
};
pub use matrix::Matrix;
pub use modular::{rank_lower_bound, rank_mod_p};
pub use poly::{char_poly, Polynomial};
pub use subspace::{is_direct_sum, Subspace};
pub(crate) use poly::rational_sqrt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(k: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| k * x).collect()
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[Rational], vectors: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = zero_vec(n);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Validation(format!("bad rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p"` for integers, otherwise `"p/q"` in lowest terms.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}
