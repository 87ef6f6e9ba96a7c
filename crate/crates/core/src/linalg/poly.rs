use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    /// `t - root`.
    pub fn linear(root: &Rational) -> Self {
        Polynomial::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if sd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `root` as a zero of `self` (zero polynomial excluded).
    pub fn multiplicity(&self, root: &Rational) -> usize {
        let lin = Polynomial::linear(root);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Distinct rational roots in ascending order, by the rational root test on
    /// the square-free part. The flag is false when the constant or leading
    /// coefficient was too large to factor within the trial-division budget,
    /// in which case the list may be incomplete.
    pub fn rational_roots(&self) -> (Vec<Rational>, bool) {
        if self.degree().unwrap_or(0) == 0 {
            return (Vec::new(), true);
        }
        let mut p = self.div_rem(&self.gcd(&self.derivative())).0;
        let mut roots = Vec::new();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = Polynomial::new(p.coeffs[1..].to_vec());
        }
        if p.degree() == Some(0) {
            return (roots, true);
        }
        let ints = integer_coefficients(&p);
        let a0 = ints[0].abs();
        let an = ints.last().expect("nonzero polynomial").abs();
        let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else {
            return (roots, false);
        };
        for q in &qs {
            for num in &ps {
                for sign in [1i32, -1] {
                    let cand = Rational::new(num * BigInt::from(sign), q.clone());
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        (roots, true)
    }
}

fn integer_coefficients(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const TRIAL_DIVISION_BUDGET: u64 = 2_000_000;

/// All positive divisors of `n > 0`, or `None` when trial division would
/// exceed the budget.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let mut steps = 0u64;
    while &d * &d <= rest {
        steps += 1;
        if steps > TRIAL_DIVISION_BUDGET {
            return None;
        }
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1u32;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for base in &divs {
            let mut pow = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pow);
                pow *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// True iff `x` is the square of a rational; returns the nonnegative root.
pub(crate) fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Characteristic polynomial `det(tI - m)` by the Berkowitz algorithm, which
/// uses only ring operations (no division), so the result is exact and monic.
pub fn char_poly(m: &Matrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Polynomial::new(vec![Rational::one()]));
    }
    // Coefficients highest degree first during the recurrence.
    let mut c: Vec<Rational> = vec![Rational::one(), -m[(0, 0)].clone()];
    for r in 1..n {
        let a = m[(r, r)].clone();
        let row: Vec<Rational> = (0..r).map(|j| m[(r, j)].clone()).collect();
        let mut s: Vec<Rational> = (0..r).map(|i| m[(i, r)].clone()).collect();
        let lead = Matrix::from_fn(r, r, |i, j| m[(i, j)].clone());
        let mut toeplitz_col = Vec::with_capacity(r + 2);
        toeplitz_col.push(Rational::one());
        toeplitz_col.push(-a);
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&s)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y);
            toeplitz_col.push(-dot);
            s = lead.mul_vec(&s);
        }
        let next: Vec<Rational> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .map(|j| &toeplitz_col[i - j] * &c[j])
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect();
        c = next;
    }
    c.reverse();
    Ok(Polynomial::new(c))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}
