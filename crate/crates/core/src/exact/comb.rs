//! Combinatorial primitives over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// `binom(a, b)` with the convention that it vanishes for `b < 0` or `b > a`.
///
/// Negative `a` is rejected rather than extended to the generalized binomial.
pub fn binomial(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(invalid(format!("binomial top argument must be >= 0, got {a}")));
    }
    Ok(binomial_unchecked(a as u64, b))
}

pub(crate) fn binomial_unchecked(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(p₁ + … + p_k)! / (p₁! ⋯ p_k!)`.
pub fn multinomial(parts: &[i64]) -> Result<BigInt> {
    if let Some(p) = parts.iter().find(|&&p| p < 0) {
        return Err(invalid(format!("multinomial parts must be >= 0, got {p}")));
    }
    // product of binomials avoids the large intermediate factorial
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p as u64;
        acc *= binomial_unchecked(total, p);
    }
    Ok(acc)
}

/// Gamma function restricted to positive integers, `Γ(k) = (k-1)!`.
pub fn gamma(k: i64) -> Result<BigInt> {
    if k < 1 {
        return Err(invalid(format!("gamma is only defined here on positive integers, got {k}")));
    }
    Ok(factorial(k as u64 - 1))
}

/// Pascal triangle cache for sweeps that need many small binomials.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_top: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_top + 1);
        for a in 0..=max_top {
            let mut row = Vec::with_capacity(a + 1);
            for b in 0..=a {
                if b == 0 || b == a {
                    row.push(BigInt::one());
                } else {
                    row.push(&rows[a - 1][b - 1] + &rows[a - 1][b]);
                }
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_top(&self) -> usize {
        self.rows.len() - 1
    }

    /// Same convention as [`binomial`]; panics if `a` is negative or beyond the table.
    pub fn get(&self, a: i64, b: i64) -> BigInt {
        assert!(a >= 0 && (a as usize) <= self.max_top(), "binomial table miss for top {a}");
        if b < 0 || b > a {
            BigInt::zero()
        } else {
            self.rows[a as usize][b as usize].clone()
        }
    }
}
