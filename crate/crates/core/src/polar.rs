//! Chern–Mather bookkeeping, polar classes and dual degrees.
//!
//! Convention: `c_j` is the class of dimension `m − j`, and its degree is
//! `deg(c_j · h^{m−j})` for the hyperplane class `h`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::comb::binomial_unchecked;
use crate::exact::{binomial, Exponent, Limits, TruncatedPoly};
use crate::format::Format;

/// Total Chern class in a truncated ring whose top monomial `x^caps` is a
/// point class of degree `top_degree`. The hyperplane class is `Σ xᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPolynomial {
    pub total: TruncatedPoly,
    pub top_degree: BigInt,
}

impl ChernPolynomial {
    pub fn dim(&self) -> u32 {
        self.total.caps().iter().sum()
    }

    /// `deg(c_0), …, deg(c_m)`.
    pub fn class_degrees(&self) -> Vec<BigInt> {
        let caps = self.total.caps();
        let m = self.dim();
        let top = Exponent::new(caps.to_vec());
        let hyperplane = (0..caps.len())
            .map(|i| TruncatedPoly::variable(caps, i))
            .fold(TruncatedPoly::zero(caps), |acc, v| &acc + &v);
        // h^{m−j} for j = m down to 0
        let mut h_pows = vec![TruncatedPoly::one(caps)];
        for _ in 0..m {
            let next = h_pows.last().expect("non-empty") * &hyperplane;
            h_pows.push(next);
        }
        (0..=m)
            .map(|j| {
                let cj = self.total.homogeneous_part(j as u64);
                let prod = &cj * &h_pows[(m - j) as usize];
                prod.coefficient(&top).expect("top exponent fits") * &self.top_degree
            })
            .collect()
    }

    /// Whitney product on the Segre product of the two varieties.
    pub fn product(&self, other: &ChernPolynomial) -> ChernPolynomial {
        ChernPolynomial {
            total: self.total.tensor(&other.total),
            top_degree: &self.top_degree * &other.top_degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    dim: u32,
    class_degrees: Vec<BigInt>,
    polynomial: Option<ChernPolynomial>,
    label: String,
}

impl ChernData {
    /// From externally supplied degrees `deg(c_0^M), …, deg(c_m^M)`.
    pub fn from_degrees(dim: u32, class_degrees: Vec<BigInt>) -> Result<Self> {
        if class_degrees.len() != dim as usize + 1 {
            return Err(invalid(format!(
                "dimension {dim} needs {} class degrees, got {}",
                dim + 1,
                class_degrees.len()
            )));
        }
        if class_degrees[0] < BigInt::one() {
            return Err(invalid(format!("degree of the variety must be positive, got {}", class_degrees[0])));
        }
        Ok(ChernData { dim, class_degrees, polynomial: None, label: format!("variety of dimension {dim}") })
    }

    pub fn from_polynomial(poly: ChernPolynomial, label: impl Into<String>) -> Result<Self> {
        let degrees = poly.class_degrees();
        let mut cd = Self::from_degrees(poly.dim(), degrees)?;
        cd.polynomial = Some(poly);
        cd.label = label.into();
        Ok(cd)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn class_degrees(&self) -> &[BigInt] {
        &self.class_degrees
    }

    pub fn degree(&self) -> &BigInt {
        &self.class_degrees[0]
    }

    pub fn polynomial(&self) -> Option<&ChernPolynomial> {
        self.polynomial.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// `P^{n₁}×⋯×P^{n_d}` with total Chern class `∏ (1 + xᵢ)^{nᵢ+1}`.
pub fn chern_data_projective_space_product(f: &Format) -> Result<ChernData> {
    f.require_unit_weights("chern_data_projective_space_product")?;
    let caps = f.dims();
    Limits::default().check(caps)?;
    let mut total = TruncatedPoly::one(caps);
    for (i, &n) in caps.iter().enumerate() {
        let one_plus = &TruncatedPoly::one(caps) + &TruncatedPoly::variable(caps, i);
        total = &total * &one_plus.pow(n + 1);
    }
    let label = caps.iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join("x");
    ChernData::from_polynomial(ChernPolynomial { total, top_degree: BigInt::one() }, label)
}

/// Coefficients `b_0, …, b_len−1` of `(1+y)^{n+2}/(1 + deg_d·y)`.
fn hypersurface_chern_coefficients(n: u32, deg_d: u32, len: usize) -> Vec<BigInt> {
    let d = BigInt::from(deg_d);
    let mut b: Vec<BigInt> = Vec::with_capacity(len);
    for t in 0..len {
        let prev = if t == 0 { BigInt::zero() } else { -&d * &b[t - 1] };
        b.push(prev + binomial_unchecked(n as u64 + 2, t as i64));
    }
    b
}

/// Smooth hypersurface `Y_n ⊂ P^{n+1}` of degree `deg_d`.
pub fn chern_data_smooth_hypersurface(n: u32, deg_d: u32) -> Result<ChernData> {
    if deg_d == 0 {
        return Err(invalid("hypersurface degree must be positive"));
    }
    let caps = [n];
    let b = hypersurface_chern_coefficients(n, deg_d, n as usize + 1);
    let total = TruncatedPoly::from_terms(
        &caps,
        b.into_iter().enumerate().map(|(t, c)| (Exponent::new(vec![t as u32]), c)),
    )?;
    let label = if deg_d == 2 { format!("Q{n}") } else { format!("Y{n}(deg {deg_d})") };
    ChernData::from_polynomial(ChernPolynomial { total, top_degree: BigInt::from(deg_d) }, label)
}

/// Segre product of two varieties; both must carry a Chern polynomial.
pub fn chern_data_product(a: &ChernData, b: &ChernData) -> Result<ChernData> {
    let pa = a.polynomial().ok_or_else(|| Error::MissingChernPolynomial(a.label.clone()))?;
    let pb = b.polynomial().ok_or_else(|| Error::MissingChernPolynomial(b.label.clone()))?;
    let caps: Vec<u32> = pa.total.caps().iter().chain(pb.total.caps()).copied().collect();
    Limits::default().check(&caps)?;
    ChernData::from_polynomial(pa.product(pb), format!("({})x({})", a.label, b.label))
}

/// `δ_i = Σ_{j=0}^{m−i} (−1)^j C(m+1−j, i+1) deg(c_j)`.
pub fn polar_class(cd: &ChernData, i: u32) -> Result<BigInt> {
    let m = cd.dim;
    if i > m {
        return Err(invalid(format!("polar class index {i} exceeds dimension {m}")));
    }
    let mut total = BigInt::zero();
    for j in 0..=(m - i) {
        let term = binomial_unchecked((m + 1 - j) as u64, i as i64 + 1) * &cd.class_degrees[j as usize];
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarProfile {
    /// `δ_0, …, δ_m`.
    pub deltas: Vec<BigInt>,
    /// `1 + min{i : δ_i ≠ 0}`; `m + 1` when every δ vanishes (empty dual).
    pub dual_codim: u32,
}

impl PolarProfile {
    /// `deg X^∨ = δ₀` when the dual is a hypersurface.
    pub fn dual_degree(&self) -> Option<BigInt> {
        (self.dual_codim == 1).then(|| self.deltas[0].clone())
    }

    pub fn delta0(&self) -> &BigInt {
        &self.deltas[0]
    }

    pub fn is_dual_empty(&self) -> bool {
        self.deltas.iter().all(Zero::is_zero)
    }
}

pub fn dual_profile(cd: &ChernData) -> PolarProfile {
    let deltas: Vec<BigInt> =
        (0..=cd.dim).map(|i| polar_class(cd, i).expect("index within dimension")).collect();
    let dual_codim = deltas
        .iter()
        .position(|d| !d.is_zero())
        .map_or(cd.dim + 1, |p| p as u32 + 1);
    PolarProfile { deltas, dual_codim }
}

/// `α_i(n,m,d) = Σ_{s=i}^{n+m} (−1)^s (m+n+1−s) b_{s−i} C(m+n−s, n−s+i)` with
/// `b_t = Σ_{k=0}^t C(n+2,k)(−d)^{t−k}`.
pub fn alpha_coefficient(n: u32, m: u32, deg_d: u32, i: u32) -> Result<BigInt> {
    if i > m {
        return Err(invalid(format!("alpha index {i} exceeds m = {m}")));
    }
    if deg_d == 0 {
        return Err(invalid("hypersurface degree must be positive"));
    }
    let top = n + m;
    let b = hypersurface_chern_coefficients(n, deg_d, (top - i) as usize + 1);
    Ok(alpha_from(&b, n, m, i))
}

fn alpha_from(b: &[BigInt], n: u32, m: u32, i: u32) -> BigInt {
    let top = (n + m) as i64;
    let mut total = BigInt::zero();
    for s in i as i64..=top {
        let c = binomial(top - s, n as i64 - s + i as i64).expect("top ≥ s");
        if c.is_zero() {
            continue;
        }
        let term = BigInt::from(top + 1 - s) * &b[(s - i as i64) as usize] * c;
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `δ₀(X × Y_n) = deg_d · Σ_i α_i(n, m, deg_d) deg(c_i^M(X))`.
///
/// The point class of `Y_n` is `y^n / deg_d`, hence the leading factor.
pub fn delta0_product_with_hypersurface(cd: &ChernData, n: u32, deg_d: u32) -> Result<BigInt> {
    let m = cd.dim;
    if deg_d == 0 {
        return Err(invalid("hypersurface degree must be positive"));
    }
    let b = hypersurface_chern_coefficients(n, deg_d, (n + m) as usize + 1);
    let sum: BigInt = (0..=m)
        .map(|i| alpha_from(&b, n, m, i) * &cd.class_degrees[i as usize])
        .sum();
    Ok(sum * deg_d)
}

/// A failed instance of `α_i(n+1,m,d) = (d−1) α_i(n,m,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioWitness {
    pub n: u32,
    pub m: u32,
    pub deg_d: u32,
    pub i: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RatioReport {
    pub checked: usize,
    pub failures: Vec<RatioWitness>,
}

impl RatioReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `α_i(n+1,m,d) = (d−1)α_i(n,m,d)` for `m ≤ m_max`, `m ≤ n < n_max`,
/// `2 ≤ d ≤ d_max` and `0 ≤ i ≤ m`.
pub fn stabilization_ratio_check(m_max: u32, n_max: u32, d_max: u32) -> RatioReport {
    use rayon::prelude::*;
    let tuples: Vec<(u32, u32, u32)> = (2..=d_max)
        .flat_map(|d| (0..=m_max).flat_map(move |m| (m..n_max).map(move |n| (d, m, n))))
        .collect();
    let per_tuple: Vec<RatioReport> = tuples
        .par_iter()
        .map(|&(d, m, n)| {
            let mut report = RatioReport::default();
            let lo = hypersurface_chern_coefficients(n, d, (n + m) as usize + 1);
            let hi = hypersurface_chern_coefficients(n + 1, d, (n + 1 + m) as usize + 1);
            for i in 0..=m {
                let lhs = alpha_from(&hi, n + 1, m, i);
                let rhs = alpha_from(&lo, n, m, i) * BigInt::from(d - 1);
                report.checked += 1;
                if lhs != rhs {
                    report.failures.push(RatioWitness { n, m, deg_d: d, i, lhs, rhs });
                }
            }
            report
        })
        .collect();
    per_tuple.into_iter().fold(RatioReport::default(), |mut acc, r| {
        acc.checked += r.checked;
        acc.failures.extend(r.failures);
        acc
    })
}

/// Whether the dual of `X × Q_n` should be a hypersurface: `n ≥ codim(X^∨) − 1`.
pub fn wz_hypersurface_expected(x: &PolarProfile, n: u32) -> bool {
    n + 1 >= x.dual_codim
}
