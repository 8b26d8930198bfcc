//! Euclidean distance degrees of Segre and Segre–Veronese products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, factorial, Exponent, Limits, TruncatedPoly};
use crate::format::Format;
use crate::hyperdet::alternating_falling_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Frobenius,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdQuery {
    pub format: Format,
    pub metric: Metric,
}

impl EdQuery {
    pub fn new(format: Format, metric: Metric) -> Self {
        EdQuery { format, metric }
    }

    pub fn degree(&self) -> Result<BigInt> {
        match self.metric {
            Metric::Frobenius => frobenius_ed_degree(&self.format),
            Metric::Generic => generic_ed_degree(&self.format),
        }
    }
}

pub fn frobenius_ed_degree(f: &Format) -> Result<BigInt> {
    frobenius_ed_degree_with(f, &Limits::default())
}

/// Coefficient of `h^n` in `∏ᵢ Σ_{k=0}^{nᵢ} ĥᵢ^k hᵢ^{nᵢ−k}`, `ĥᵢ = Σ_{j≠i} hⱼ`.
///
/// With one factor, ĥ is empty and the answer is 1.
pub fn frobenius_ed_degree_with(f: &Format, limits: &Limits) -> Result<BigInt> {
    f.require_unit_weights("frobenius_ed_degree")?;
    let caps = f.dims();
    limits.check(caps)?;
    let d = caps.len();
    let vars: Vec<TruncatedPoly> = (0..d).map(|i| TruncatedPoly::variable(caps, i)).collect();
    let mut product = TruncatedPoly::one(caps);
    for i in 0..d {
        let mut hat = TruncatedPoly::zero(caps);
        for (j, v) in vars.iter().enumerate() {
            if j != i {
                hat = &hat + v;
            }
        }
        // Horner: P₀ = 1, P_t = P_{t−1}·ĥ + h^t
        let mut factor = TruncatedPoly::one(caps);
        let mut h_pow = TruncatedPoly::one(caps);
        for _ in 0..caps[i] {
            h_pow = &h_pow * &vars[i];
            factor = &(&factor * &hat) + &h_pow;
        }
        product = &product * &factor;
        if product.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    product.coefficient(&Exponent::new(caps.to_vec()))
}

/// `n + 1` for `ω = 2`, otherwise `((ω−1)^{n+1} − 1)/(ω − 2)`.
pub fn veronese_frobenius_ed_degree(n: u32, omega: u32) -> Result<BigInt> {
    if omega < 2 {
        return Err(invalid(format!("Veronese weight must be at least 2, got {omega}")));
    }
    if omega == 2 {
        return Ok(BigInt::from(n) + 1);
    }
    let num = BigInt::from(omega - 1).pow(n + 1) - 1;
    Ok(num / BigInt::from(omega - 2))
}

/// Generic ED degree of a Segre–Veronese product:
///
/// `Σ_j (−1)^j (2^{N+1−j} − 1)(N−j)! Σ_{i₁+⋯+i_d=j} ∏_l C(n_l+1, i_l) ω_l^{n_l−i_l}/(n_l−i_l)!`.
///
/// The inner sum is a coefficient of a product of one polynomial per factor;
/// terms with `i_l > n_l` vanish because `1/(−1)! = 0`.
pub fn generic_ed_degree(f: &Format) -> Result<BigInt> {
    let n_total = f.total_dim()? as usize;
    let mut inner: Vec<BigRational> = vec![BigRational::one()];
    for (&n, &w) in f.dims().iter().zip(f.weights()) {
        let factor: Vec<BigRational> = (0..=n)
            .map(|i| {
                let num = binomial(n as i64 + 1, i as i64).expect("n + 1 ≥ 0")
                    * BigInt::from(w).pow(n - i);
                BigRational::new(num, factorial((n - i) as u64))
            })
            .collect();
        let mut next = vec![BigRational::zero(); inner.len() + factor.len() - 1];
        for (a, x) in inner.iter().enumerate() {
            for (b, y) in factor.iter().enumerate() {
                next[a + b] += x * y;
            }
        }
        inner = next;
    }
    let mut total = BigRational::zero();
    for (j, c) in inner.iter().enumerate().take(n_total + 1) {
        let weight = (BigInt::from(2).pow((n_total + 1 - j) as u32) - 1) * factorial((n_total - j) as u64);
        let term = c * BigRational::from_integer(weight);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    if !total.is_integer() {
        return Err(Error::VerificationFailed(format!("generic ED degree of {f} is not an integer: {total}")));
    }
    Ok(total.to_integer())
}

/// `d! Σ_{i=0}^d ((−2)^i/i!)(2^{d+1−i} − 1)`.
pub fn binary_generic_ed_degree(d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(invalid("binary format needs d ≥ 1"));
    }
    Ok(alternating_falling_sum(d, |i| BigInt::from(2).pow(d + 1 - i) - 1))
}

/// `EDdegree_F(base × P^m)` for `m = 0..=m_max`.
///
/// The values must be constant from `m = N` on; a jump is reported as a
/// verification failure.
pub fn stabilization_onset(base: &Format, m_max: u32) -> Result<Vec<(u32, BigInt)>> {
    stabilization_onset_with(base, m_max, &Limits::default())
}

pub fn stabilization_onset_with(base: &Format, m_max: u32, limits: &Limits) -> Result<Vec<(u32, BigInt)>> {
    base.require_unit_weights("stabilization_onset")?;
    let n = base.total_dim()?;
    if m_max < n {
        return Err(invalid(format!("m_max = {m_max} is below N = {n}")));
    }
    let row = (0..=m_max)
        .into_par_iter()
        .map(|m| Ok((m, frobenius_ed_degree_with(&base.extended(m)?, limits)?)))
        .collect::<Result<Vec<_>>>()?;
    let stable = &row[n as usize].1;
    if let Some((m, v)) = row[n as usize..].iter().find(|(_, v)| v != stable) {
        return Err(Error::VerificationFailed(format!(
            "ED degree of {base} x P^{m} is {v}, expected the stable value {stable} from m = {n}"
        )));
    }
    Ok(row)
}
