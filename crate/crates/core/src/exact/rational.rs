//! Exact rational evaluation of the GKZ denominator `H = Σ (1−i) e_i` and
//! its mixed partials at the diagonal point `c = (1/(d−1), …, 1/(d−1))`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{elementary_symmetric, TruncatedPoly};
use crate::error::{invalid, Result};

pub type ExactRational = BigRational;

pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `Σ_{i=0}^d (1 − ωi) e_i(x)` with every cap set to 1.
///
/// H is multilinear, so caps of 1 lose nothing and make the polynomial exact.
pub fn weighted_denominator_multilinear(d: usize, omega: i64) -> TruncatedPoly {
    let caps = vec![1u32; d];
    let mut h = TruncatedPoly::zero(&caps);
    for i in 0..=d {
        let e = elementary_symmetric(&caps, i).expect("i ≤ d");
        h = &h + &e.scale(&BigInt::from(1 - omega * i as i64));
    }
    h
}

/// The diagonal point `(1/(d−1), …)`.
pub fn diagonal_point(d: usize) -> Result<Vec<ExactRational>> {
    if d < 2 {
        return Err(invalid(format!("diagonal point needs d ≥ 2, got {d}")));
    }
    Ok(vec![rational(1, d as i64 - 1); d])
}

/// `∂_{i₁⋯i_k} H(c)` by symbolic differentiation and exact evaluation.
///
/// Indices are 0-based and must be distinct; an empty set evaluates H itself.
pub fn rational_derivative_eval(d: usize, indices: &[usize]) -> Result<ExactRational> {
    let point = diagonal_point(d)?;
    let mut seen = vec![false; d];
    for &i in indices {
        if i >= d {
            return Err(invalid(format!("index {i} out of range for d = {d}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(invalid(format!("repeated index {i}; ∂_ii H vanishes identically")));
        }
    }
    let mut p = weighted_denominator_multilinear(d, 1);
    for &i in indices {
        p = p.derivative(i)?;
    }
    p.evaluate(&point)
}

/// `−|S| (d/(d−1))^{d−|S|−1}`, the closed form the partials must match.
pub fn derivative_closed_form(d: usize, k: usize) -> ExactRational {
    let base = rational(d as i64, d as i64 - 1);
    let e = d as i64 - k as i64 - 1;
    let pow = if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    };
    -pow * BigRational::from_integer(BigInt::from(k))
}

/// `true` when `∂_i ∂_i H` is the zero polynomial for every `i`.
pub fn second_pure_partials_vanish(d: usize) -> Result<bool> {
    let caps = vec![2u32; d];
    // Same H but with room for squares, so truncation cannot hide anything.
    let mut h = TruncatedPoly::zero(&caps);
    for i in 0..=d {
        let e = elementary_symmetric(&caps, i)?;
        h = &h + &e.scale(&BigInt::from(1 - i as i64));
    }
    for i in 0..d {
        if !h.derivative(i)?.derivative(i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
