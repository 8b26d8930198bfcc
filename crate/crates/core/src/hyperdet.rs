//! Hyperdeterminant degrees of Segre and equal-weight Segre–Veronese formats.
//!
//! The degree `N(n₁,…,n_d)` is the coefficient of `x^{(n₁,…,n_d)}` in
//! `[Σ_{i=0}^d (1 − ωi) e_i(x)]^{−2}` with `ω = 1` in the plain Segre case.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::exact::poly::{elementary_symmetric, series_inverse_square_with};
use crate::exact::{multinomial, Exponent, Limits, TruncatedPoly};
use crate::format::Format;

/// `Σ_{i=0}^d (1 − ωi) e_i(x)` truncated to `caps`.
pub fn gkz_denominator(caps: &[u32], omega: i64) -> TruncatedPoly {
    let mut h = TruncatedPoly::zero(caps);
    for i in 0..=caps.len() {
        let e = elementary_symmetric(caps, i).expect("i ≤ d");
        h = &h + &e.scale(&BigInt::from(1 - omega * i as i64));
    }
    h
}

/// Whether the dual of the Segre product is a hypersurface:
/// `nⱼ ≤ Σ_{i≠j} nᵢ` for every `j`.
pub fn is_dual_nondefective(f: &Format) -> bool {
    let dims = f.dims();
    if dims.len() == 1 {
        return dims[0] == 0;
    }
    let total: u64 = dims.iter().map(|&n| n as u64).sum();
    dims.iter().all(|&n| 2 * n as u64 <= total)
}

pub fn hyperdet_degree(f: &Format) -> Result<BigInt> {
    hyperdet_degree_with(f, &Limits::default())
}

/// Defective formats come out as 0 (no hypersurface to take the degree of).
pub fn hyperdet_degree_with(f: &Format, limits: &Limits) -> Result<BigInt> {
    f.require_unit_weights("hyperdet_degree")?;
    coefficient_of_inverse_square(f.dims(), 1, limits)
}

pub fn sv_hyperdet_degree(f: &Format, omega: u32) -> Result<BigInt> {
    sv_hyperdet_degree_with(f, omega, &Limits::default())
}

/// Weighted version; every factor must carry weight `omega`, or the format
/// must have unit weights (which are then read as `omega`).
pub fn sv_hyperdet_degree_with(f: &Format, omega: u32, limits: &Limits) -> Result<BigInt> {
    if omega == 0 {
        return Err(invalid("omega must be positive"));
    }
    match f.uniform_weight() {
        Some(w) if w == omega || w == 1 => {}
        _ => {
            return Err(invalid(format!(
                "weights {:?} are not all equal to omega = {omega}",
                f.weights()
            )))
        }
    }
    coefficient_of_inverse_square(f.dims(), omega as i64, limits)
}

fn coefficient_of_inverse_square(dims: &[u32], omega: i64, limits: &Limits) -> Result<BigInt> {
    limits.check(dims)?;
    let h = gkz_denominator(dims, omega);
    let inv = series_inverse_square_with(&h, limits)?;
    inv.coefficient(&Exponent::new(dims.to_vec()))
}

/// `N(1^d) = d! Σ_{i=0}^d ((−2)^i / i!)(d − i + 1)`, summed over the integers
/// `d!/i!` so no fractions appear.
pub fn binary_hyperdet_degree(d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(invalid("binary format needs d ≥ 1"));
    }
    Ok(alternating_falling_sum(d, |i| BigInt::from(d - i + 1)))
}

/// `Σ_{i=0}^d (−2)^i (d!/i!) w(i)`.
pub(crate) fn alternating_falling_sum(d: u32, w: impl Fn(u32) -> BigInt) -> BigInt {
    let mut total = BigInt::zero();
    // d!/i! built downward from i = d
    let mut falling = BigInt::from(1);
    let mut terms = Vec::with_capacity(d as usize + 1);
    for i in (0..=d).rev() {
        terms.push((i, falling.clone()));
        falling *= i.max(1);
    }
    for (i, ratio) in terms {
        let sign_pow = BigInt::from(-2).pow(i);
        total += sign_pow * ratio * w(i);
    }
    total
}

/// Number of linear spaces in the kernel locus of a general tensor of
/// format `(n₁,…,n_d,m)`, and their projective dimension: `N!/∏nᵢ!` and `m − N`.
pub fn kernel_component_count(f: &Format, m: u32) -> Result<(BigInt, u32)> {
    f.require_unit_weights("kernel_component_count")?;
    let n = f.total_dim()?;
    if m < n {
        return Err(invalid(format!("m = {m} is below N = {n}")));
    }
    let parts: Vec<i64> = f.dims().iter().map(|&x| x as i64).collect();
    Ok((multinomial(&parts)?, m - n))
}
