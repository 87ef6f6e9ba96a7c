//! Ranks modulo a prime. `rank mod p <= rank over Q` for every prime not
//! dividing a denominator, so a modular rank is an exact lower bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Matrix, Rational};

/// Primes below 2^31, so products of residues fit in a `u64`.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Residue of `x` modulo `p`, or `None` if `p` divides the denominator.
pub fn residue(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64()?;
    let den = x.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num * pow_mod(den, p - 2, p) % p)
}

/// Rank of `m` reduced modulo `p`, or `None` if some denominator vanishes.
pub fn rank_mod_p(m: &Matrix, p: u64) -> Option<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| residue(x, p)).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let k = row[c];
            if k != 0 {
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + p - k * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Largest rank modulo the fixed primes: an exact lower bound for the rank.
pub fn rank_lower_bound(m: &Matrix) -> usize {
    PRIMES.iter().filter_map(|&p| rank_mod_p(m, p)).max().unwrap_or(0)
}
