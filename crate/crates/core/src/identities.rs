//! Binomial identities and recurrences behind the `X × Q_n` stabilization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::exact::comb::{binomial_unchecked, factorial};
use crate::exact::gamma;

fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 {
        return BigInt::zero();
    }
    binomial_unchecked(a as u64, b)
}

fn signed(k: i64, v: BigInt) -> BigInt {
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

fn gamma_q(k: i64) -> BigRational {
    BigRational::from_integer(gamma(k).expect("gamma at a positive integer"))
}

fn fact_q(k: i64) -> BigRational {
    BigRational::from_integer(factorial(k as u64))
}

/// `Σ_{r=i}^{n+m} (−1)^r (m+n+1−r) C(n+2, r+1−i) C(m+n−r, n−r+i)`.
pub fn masterbinomial_lhs(n: u32, m: u32, i: u32) -> BigInt {
    let (n, m, i) = (n as i64, m as i64, i as i64);
    (i..=n + m)
        .map(|r| signed(r, BigInt::from(m + n + 1 - r) * binom(n + 2, r + 1 - i) * binom(m + n - r, n - r + i)))
        .sum()
}

/// `(−1)^i (n+m+2−i) C(m+n+1−i, n+1)`.
pub fn masterbinomial_rhs(n: u32, m: u32, i: u32) -> BigInt {
    let (n, m, i) = (n as i64, m as i64, i as i64);
    signed(i, BigInt::from(n + m + 2 - i) * binom(m + n + 1 - i, n + 1))
}

pub fn identity_masterbinomial(n: u32, m: u32, i: u32) -> bool {
    masterbinomial_lhs(n, m, i) == masterbinomial_rhs(n, m, i)
}

/// `f(n) = Σ_{r=0}^n (−1)^r C(n+1, r+1) C(m+n+1−r, m)`.
pub fn f_sum(n: u32, m: u32) -> BigInt {
    let (n, m) = (n as i64, m as i64);
    (0..=n).map(|r| signed(r, binom(n + 1, r + 1) * binom(m + n + 1 - r, m))).sum()
}

/// `f(n) = C(m+n+2, m)`, the recurrence
/// `(1+n−m) f(n) + (n+3) f(n+1) = 2Γ(n+3+m)/(Γ(n+2)Γ(m+1))`,
/// and at `n = m` the base value `2Γ(2+2m)/((2+m)Γ(m+1)²)`.
pub fn identity_f(n: u32, m: u32) -> bool {
    let fnv = f_sum(n, m);
    let fnext = f_sum(n + 1, m);
    let (ni, mi) = (n as i64, m as i64);
    if fnv != binom(mi + ni + 2, mi) {
        return false;
    }
    let lhs = BigInt::from(1 + ni - mi) * &fnv + BigInt::from(ni + 3) * &fnext;
    let rhs = BigRational::from_integer(BigInt::from(2)) * gamma_q(ni + 3 + mi) / (gamma_q(ni + 2) * gamma_q(mi + 1));
    if BigRational::from_integer(lhs) != rhs {
        return false;
    }
    if n == m {
        let base = BigRational::from_integer(BigInt::from(2)) * gamma_q(2 + 2 * mi)
            / (BigRational::from_integer(BigInt::from(2 + mi)) * gamma_q(mi + 1) * gamma_q(mi + 1));
        if BigRational::from_integer(fnv) != base {
            return false;
        }
    }
    true
}

/// `g(n,j) = Σ_{s=0}^n (−1)^s (n+1−s+j)! / (Γ(n+2−s) (s+1)! Γ(n−s+1))`.
pub fn g_sum(n: u32, j: u32) -> BigRational {
    let (n, j) = (n as i64, j as i64);
    let mut total = BigRational::zero();
    for s in 0..=n {
        let term = fact_q(n + 1 - s + j) / (gamma_q(n + 2 - s) * fact_q(s + 1) * gamma_q(n - s + 1));
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `g(n,j) = (n+2+j)!/((n+1)!(n+2)!)` and the recurrence
/// `(n+1−j) g(n,j) + (n²+5n+6) g(n+1,j) = 2Γ(n+3+j)/Γ(n+2)²`.
pub fn identity_g(n: u32, j: u32) -> bool {
    let (ni, ji) = (n as i64, j as i64);
    let g = g_sum(n, j);
    if g != fact_q(ni + 2 + ji) / (fact_q(ni + 1) * fact_q(ni + 2)) {
        return false;
    }
    let lhs = BigRational::from_integer(BigInt::from(ni + 1 - ji)) * &g
        + BigRational::from_integer(BigInt::from(ni * ni + 5 * ni + 6)) * g_sum(n + 1, j);
    let rhs = BigRational::from_integer(BigInt::from(2)) * gamma_q(ni + 3 + ji) / (gamma_q(ni + 2) * gamma_q(ni + 2));
    lhs == rhs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityWitness {
    Masterbinomial { n: u32, m: u32, i: u32 },
    F { n: u32, m: u32 },
    G { n: u32, j: u32 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityWitness>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every identity over `0 ≤ i ≤ m ≤ n ≤ n_max` (and `1 ≤ j ≤ n` for g).
pub fn verify_identities(n_max: u32) -> IdentityReport {
    let mut cases: Vec<IdentityWitness> = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            cases.push(IdentityWitness::F { n, m });
            for i in 0..=m {
                cases.push(IdentityWitness::Masterbinomial { n, m, i });
            }
        }
        for j in 1..=n {
            cases.push(IdentityWitness::G { n, j });
        }
    }
    let failures: Vec<IdentityWitness> = cases
        .par_iter()
        .filter(|c| match **c {
            IdentityWitness::Masterbinomial { n, m, i } => !identity_masterbinomial(n, m, i),
            IdentityWitness::F { n, m } => !identity_f(n, m),
            IdentityWitness::G { n, j } => !identity_g(n, j),
        })
        .cloned()
        .collect();
    IdentityReport { checked: cases.len(), failures }
}
