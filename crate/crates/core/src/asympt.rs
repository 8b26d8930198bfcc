//! Asymptotic estimates, exact-versus-estimate diagnostics, and the exact
//! constants at the minimal point `c = (1/(d−1), …)` that feed them.
//!
//! Every estimate is assembled as a logarithm and exponentiated last.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::eddeg::{frobenius_ed_degree, generic_ed_degree, veronese_frobenius_ed_degree};
use crate::error::{invalid, Error, Result};
use crate::exact::rational::{derivative_closed_form, diagonal_point, rational, weighted_denominator_multilinear};
use crate::exact::{factorial, rational_derivative_eval};
use crate::format::Format;
use crate::hyperdet::{binary_hyperdet_degree, hyperdet_degree, sv_hyperdet_degree};
use crate::eddeg::binary_generic_ed_degree;

fn require_d3(d: u32) -> Result<()> {
    if d < 3 {
        return Err(invalid(format!("formula requires d >= 3, got d = {d}")));
    }
    Ok(())
}

fn require_n1(n: u32) -> Result<()> {
    if n < 1 {
        return Err(invalid("formula requires n >= 1"));
    }
    Ok(())
}

pub fn ln_hyperdet_asymptotic(d: u32, n: u32) -> Result<f64> {
    ln_sv_hyperdet_asymptotic(d, n, 1)
}

/// `(d−1)^{2d−2} / ([2π(d−2)]^{(d−1)/2} d^{(3d−6)/2}) · (d−1)^{dn} / n^{(d−3)/2}`.
pub fn hyperdet_asymptotic(d: u32, n: u32) -> Result<f64> {
    Ok(ln_hyperdet_asymptotic(d, n)?.exp())
}

pub fn ln_ed_asymptotic(d: u32, n: u32) -> Result<f64> {
    require_d3(d)?;
    require_n1(n)?;
    let (df, nf) = (d as f64, n as f64);
    Ok((df - 1.0) * (df - 1.0).ln()
        - (df - 1.0) / 2.0 * (2.0 * PI).ln()
        - (3.0 * df - 1.0) / 2.0 * (df - 2.0).ln()
        - (df - 2.0) / 2.0 * df.ln()
        + df * nf * (df - 1.0).ln()
        - (df - 1.0) / 2.0 * nf.ln())
}

/// `(d−1)^{d−1} / ((2π)^{(d−1)/2} (d−2)^{(3d−1)/2} d^{(d−2)/2}) · (d−1)^{dn} / n^{(d−1)/2}`.
pub fn ed_asymptotic(d: u32, n: u32) -> Result<f64> {
    Ok(ln_ed_asymptotic(d, n)?.exp())
}

/// The ED estimate with its tensor-size index read as `n + 1`, i.e. for
/// `(n+1)×⋯×(n+1)` tensors. Against exact values for `P^n×⋯×P^n` this is the
/// variant whose relative error actually decays like `1/n`; the printed
/// form undershoots by a factor tending to `(d−1)^d`.
pub fn ln_ed_asymptotic_shifted(d: u32, n: u32) -> Result<f64> {
    ln_ed_asymptotic(d, n.checked_add(1).ok_or_else(|| invalid("n too large"))?)
}

pub fn ed_asymptotic_shifted(d: u32, n: u32) -> Result<f64> {
    Ok(ln_ed_asymptotic_shifted(d, n)?.exp())
}

pub fn ln_sv_hyperdet_asymptotic(d: u32, n: u32, omega: u32) -> Result<f64> {
    require_d3(d)?;
    require_n1(n)?;
    if omega == 0 {
        return Err(invalid("omega must be positive"));
    }
    let (df, nf, w) = (d as f64, n as f64, omega as f64);
    let a = w * df - 1.0;
    Ok((2.0 * df - 2.0) * a.ln()
        - (df - 1.0) / 2.0 * (2.0 * PI * (w * df - 2.0)).ln()
        - (4.0 * df - 5.0) / 2.0 * w.ln()
        - (3.0 * df - 6.0) / 2.0 * df.ln()
        + df * nf * a.ln()
        - (df - 3.0) / 2.0 * nf.ln())
}

/// Weighted estimate with `ωd − 1` in place of `d − 1`.
pub fn sv_hyperdet_asymptotic(d: u32, n: u32, omega: u32) -> Result<f64> {
    Ok(ln_sv_hyperdet_asymptotic(d, n, omega)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryEstimates {
    pub hyperdet: f64,
    pub ed_frobenius: f64,
    pub ed_generic: f64,
}

impl BinaryEstimates {
    pub fn hyperdet_over_frobenius(&self) -> f64 {
        self.hyperdet / self.ed_frobenius
    }

    pub fn hyperdet_over_generic(&self) -> f64 {
        self.hyperdet / self.ed_generic
    }
}

fn ln_binary(d: u32) -> [f64; 3] {
    let df = d as f64;
    let common = 0.5 * (2.0 * PI).ln() + (df + 0.5) * df.ln();
    let ln_two_pow = (df + 1.0) * 2f64.ln();
    [
        common + (df + 3.0).ln() - (df + 2.0),
        common - df,
        // ln(2^{d+1} e − 1) without forming 2^{d+1}
        common - (df + 2.0) + (ln_two_pow + 1.0) + (-(-(ln_two_pow + 1.0)).exp()).ln_1p(),
    ]
}

/// Estimates for the `(1,…,1)` format: hyperdeterminant degree, Frobenius
/// and generic ED degree.
pub fn binary_asymptotics(d: u32) -> Result<BinaryEstimates> {
    if d < 2 {
        return Err(invalid(format!("binary estimates need d >= 2, got d = {d}")));
    }
    let [h, f, g] = ln_binary(d);
    Ok(BinaryEstimates { hyperdet: h.exp(), ed_frobenius: f.exp(), ed_generic: g.exp() })
}

/// `(N/ED)` ratios for the Veronese format, each divided by its limit so
/// that all three tend to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantRatios {
    pub degree: BigInt,
    pub ed_frobenius: BigInt,
    pub ed_generic: BigInt,
    /// `(N/ED_F) / (((ω−2)/(ω−1)) n)`, tends to 1 as `n → ∞`.
    pub fixed_omega_ratio: f64,
    /// `(N/ED_F) / (n+1)`, tends to 1 as `ω → ∞`.
    pub fixed_n_ratio: f64,
    /// `(N/ED_gen) / ((n+1)/(2^{n+1}−1))`, tends to 1 as `ω → ∞`.
    pub gen_ratio: f64,
}

pub fn discriminant_ratios(n: u32, omega: u32) -> Result<DiscriminantRatios> {
    require_n1(n)?;
    if omega < 3 {
        return Err(invalid(format!("discriminant ratios need omega >= 3, got {omega}")));
    }
    let degree = BigInt::from(n + 1) * BigInt::from(omega - 1).pow(n);
    let ed_frobenius = veronese_frobenius_ed_degree(n, omega)?;
    let ed_generic = generic_ed_degree(&Format::with_weights(vec![n], vec![omega])?)?;
    let ratio_f = ratio_f64(&degree, &ed_frobenius);
    let ratio_g = ratio_f64(&degree, &ed_generic);
    let (nf, w) = (n as f64, omega as f64);
    let gen_target = (nf + 1.0) / (2f64.powi(n as i32 + 1) - 1.0);
    Ok(DiscriminantRatios {
        fixed_omega_ratio: ratio_f / ((w - 2.0) / (w - 1.0) * nf),
        fixed_n_ratio: ratio_f / (nf + 1.0),
        gen_ratio: ratio_g / gen_target,
        degree,
        ed_frobenius,
        ed_generic,
    })
}

/// Natural logarithm of a positive integer of any size.
pub fn ln_bigint(v: &BigInt) -> f64 {
    assert!(v.is_positive(), "logarithm of a non-positive integer");
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    top.to_f64().expect("64 bits").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    (ln_bigint(a) - ln_bigint(b)).exp()
}

/// `|exact − estimate| / exact`, computed through logarithms.
pub fn relative_error(exact: &BigInt, ln_estimate: f64) -> f64 {
    if !exact.is_positive() {
        return f64::NAN;
    }
    ((ln_estimate - ln_bigint(exact)).exp_m1()).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RwConstants {
    pub d: u32,
    pub q: BigRational,
    pub det: BigRational,
    pub l0: BigRational,
    /// `−∂_d H(c)`.
    pub minus_partial_d: BigRational,
}

fn rw_fail(d: u32, what: &str, got: &BigRational, want: &BigRational) -> Error {
    Error::VerificationFailed(format!("d = {d}: {what} is {got}, expected {want}"))
}

fn rpow(base: BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Recomputes the minimal-point constants from exact partials of H and
/// checks each against its closed form. `G ≡ 1` in the numerator `G/H²`.
pub fn verify_rw_constants(d: u32) -> Result<RwConstants> {
    require_d3(d)?;
    let du = d as usize;
    let di = d as i64;
    let h = weighted_denominator_multilinear(du, 1);
    let c = diagonal_point(du)?;
    let at_c = h.evaluate(&c)?;
    if !at_c.is_zero() {
        return Err(rw_fail(d, "H(c)", &at_c, &BigRational::zero()));
    }
    // every mixed partial, grouped by size; H is symmetric but all subsets are checked
    for mask in 1u32..(1 << d) {
        let idx: Vec<usize> = (0..du).filter(|&i| mask >> i & 1 == 1).collect();
        let got = rational_derivative_eval(du, &idx)?;
        let want = derivative_closed_form(du, idx.len());
        if got != want {
            return Err(rw_fail(d, &format!("partial {idx:?}"), &got, &want));
        }
    }
    let last = du - 1;
    let d_d = rational_derivative_eval(du, &[last])?;
    let d_1d = rational_derivative_eval(du, &[0, last])?;
    // ∂_dd H ≡ 0
    let d_dd = BigRational::zero();
    let c1 = &c[0];
    let q = BigRational::one() + c1 * (&d_dd - &d_1d) / &d_d;
    let q_want = rational(di - 2, di);
    if q != q_want {
        return Err(rw_fail(d, "q", &q, &q_want));
    }
    let det = BigRational::from_integer(BigInt::from(d)) * rpow(q.clone(), di - 1);
    let det_want = rpow(rational(di - 2, 1), di - 1) / rpow(rational(di, 1), di - 2);
    if det != det_want {
        return Err(rw_fail(d, "det", &det, &det_want));
    }
    let denom = -(&c[last]) * &d_d;
    let l0 = (denom.clone() * denom).recip();
    let l0_want = rpow(rational(di - 1, 1), 2 * di - 2) / rpow(rational(di, 1), 2 * di - 4);
    if l0 != l0_want {
        return Err(rw_fail(d, "L0", &l0, &l0_want));
    }
    let minus_partial_d = -d_d;
    let partial_want = rpow(rational(di, di - 1), di - 2);
    if minus_partial_d != partial_want {
        return Err(rw_fail(d, "-dH/dx_d", &minus_partial_d, &partial_want));
    }
    Ok(RwConstants { d, q, det, l0, minus_partial_d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AsymptoticFormula {
    /// `N(n,…,n)` with `d` factors.
    Hyperdet,
    /// `EDdegree_F(n,…,n)` with `d` factors.
    EdFrobenius,
    /// Same exact side, estimate evaluated at `n + 1`.
    EdFrobeniusShifted,
    /// `N(n,…,n; ω)`.
    SvHyperdet { omega: u32 },
    /// `N(1,…,1)` along `d`; the grid runs over `d` and the `d` argument is ignored.
    BinaryHyperdet,
    BinaryEdFrobenius,
    BinaryEdGeneric,
}

impl AsymptoticFormula {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticFormula::Hyperdet => "hyperdet",
            AsymptoticFormula::EdFrobenius => "ed",
            AsymptoticFormula::EdFrobeniusShifted => "ed-shifted",
            AsymptoticFormula::SvHyperdet { .. } => "sv-hyperdet",
            AsymptoticFormula::BinaryHyperdet => "binary-hyperdet",
            AsymptoticFormula::BinaryEdFrobenius => "binary-ed",
            AsymptoticFormula::BinaryEdGeneric => "binary-ed-generic",
        }
    }

    fn is_binary(&self) -> bool {
        matches!(
            self,
            AsymptoticFormula::BinaryHyperdet | AsymptoticFormula::BinaryEdFrobenius | AsymptoticFormula::BinaryEdGeneric
        )
    }

    /// Log of the estimate at grid point `n` (or `d` for the binary family).
    pub fn ln_estimate(&self, d: u32, n: u32) -> Result<f64> {
        match *self {
            AsymptoticFormula::Hyperdet => ln_hyperdet_asymptotic(d, n),
            AsymptoticFormula::EdFrobenius => ln_ed_asymptotic(d, n),
            AsymptoticFormula::EdFrobeniusShifted => ln_ed_asymptotic_shifted(d, n),
            AsymptoticFormula::SvHyperdet { omega } => ln_sv_hyperdet_asymptotic(d, n, omega),
            AsymptoticFormula::BinaryHyperdet | AsymptoticFormula::BinaryEdFrobenius | AsymptoticFormula::BinaryEdGeneric => {
                if n < 2 {
                    return Err(invalid(format!("binary estimates need d >= 2, got d = {n}")));
                }
                let ln = ln_binary(n);
                Ok(match self {
                    AsymptoticFormula::BinaryHyperdet => ln[0],
                    AsymptoticFormula::BinaryEdFrobenius => ln[1],
                    _ => ln[2],
                })
            }
        }
    }

    pub fn exact(&self, d: u32, n: u32) -> Result<BigInt> {
        match *self {
            AsymptoticFormula::Hyperdet => hyperdet_degree(&Format::cube(n, d as usize)?),
            AsymptoticFormula::EdFrobenius | AsymptoticFormula::EdFrobeniusShifted => {
                frobenius_ed_degree(&Format::cube(n, d as usize)?)
            }
            AsymptoticFormula::SvHyperdet { omega } => sv_hyperdet_degree(&Format::cube(n, d as usize)?, omega),
            AsymptoticFormula::BinaryHyperdet => binary_hyperdet_degree(n),
            AsymptoticFormula::BinaryEdFrobenius => Ok(factorial(n as u64)),
            AsymptoticFormula::BinaryEdGeneric => binary_generic_ed_degree(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPoint {
    /// `n`, or `d` for the binary family.
    pub n: u32,
    pub exact: BigInt,
    pub estimate: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub formula: AsymptoticFormula,
    pub d: Option<u32>,
    pub omega: Option<u32>,
    pub points: Vec<AsymptoticPoint>,
}

impl AsymptoticReport {
    pub fn trend(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.rel_error).collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].rel_error < w[0].rel_error)
    }

    /// `rel_error · n` never exceeds twice its first value, a finite
    /// stand-in for an `O(1/n)` error.
    pub fn scaled_error_bounded(&self) -> bool {
        let scaled: Vec<f64> = self.points.iter().map(|p| p.rel_error * p.n as f64).collect();
        match scaled.first() {
            Some(&first) => scaled.iter().all(|&s| s.is_finite() && s <= 2.0 * first.max(f64::MIN_POSITIVE)),
            None => true,
        }
    }
}

/// Exact value, estimate and relative error at each point of `grid`.
pub fn convergence_sweep(formula: AsymptoticFormula, d: u32, grid: &[u32]) -> Result<AsymptoticReport> {
    use rayon::prelude::*;
    let points = grid
        .par_iter()
        .map(|&n| {
            let ln_est = formula.ln_estimate(d, n)?;
            let exact = formula.exact(d, n)?;
            Ok(AsymptoticPoint { n, rel_error: relative_error(&exact, ln_est), estimate: ln_est.exp(), exact })
        })
        .collect::<Result<Vec<_>>>()?;
    let omega = match formula {
        AsymptoticFormula::SvHyperdet { omega } => Some(omega),
        _ => None,
    };
    Ok(AsymptoticReport { formula, d: (!formula.is_binary()).then_some(d), omega, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        ((a - b) / b).abs() < tol
    }

    #[test]
    fn hyperdet_d3_closed_form() {
        for n in 1..=30 {
            let est = hyperdet_asymptotic(3, n).unwrap();
            let simple = 8f64.powi(n as i32 + 1) / (3.0 * 3f64.sqrt() * PI);
            assert!(close(est, simple, 1e-12), "n = {n}");
        }
        assert!((hyperdet_asymptotic(3, 2).unwrap() - 31.36).abs() < 0.01);
    }

    #[test]
    fn hyperdet_d4_closed_form() {
        for n in 1..=10 {
            let est = hyperdet_asymptotic(4, n).unwrap();
            let simple = 3f64.powi(6) / (2f64.powi(9) * PI * PI.sqrt()) * 81f64.powi(n as i32) / (n as f64).sqrt();
            assert!(close(est, simple, 1e-12), "n = {n}");
        }
    }

    #[test]
    fn ed_d3_closed_form() {
        for n in 1..=20 {
            let est = ed_asymptotic(3, n).unwrap();
            let simple = 2.0 / (3f64.sqrt() * PI) * 8f64.powi(n as i32) / n as f64;
            assert!(close(est, simple, 1e-12), "n = {n}");
        }
        assert!((ed_asymptotic(3, 4).unwrap() - 376.4).abs() < 0.1);
        assert!(ed_asymptotic(4, 1).unwrap().is_finite());
    }

    #[test]
    fn small_d_rejected() {
        assert!(hyperdet_asymptotic(2, 5).is_err());
        assert!(ed_asymptotic(2, 5).is_err());
        assert!(sv_hyperdet_asymptotic(3, 1, 0).is_err());
        assert!(binary_asymptotics(1).is_err());
    }

    #[test]
    fn weighted_reduces_to_plain() {
        for d in 3..=8 {
            for n in 1..=20 {
                let a = sv_hyperdet_asymptotic(d, n, 1).unwrap();
                let b = hyperdet_asymptotic(d, n).unwrap();
                assert!(close(a, b, 1e-12));
            }
        }
        let v = sv_hyperdet_asymptotic(3, 1, 2).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn no_overflow_in_log_domain() {
        for d in 3..=8 {
            assert!(ln_hyperdet_asymptotic(d, 200).unwrap().is_finite());
            assert!(ln_ed_asymptotic(d, 200).unwrap().is_finite());
        }
    }

    #[test]
    fn binary_ratios() {
        for d in 2..=12 {
            let b = binary_asymptotics(d).unwrap();
            let df = d as f64;
            assert!(close(b.hyperdet_over_frobenius(), (df + 3.0) / (E * E), 1e-12));
            // the two estimates share √(2π) d^{d+1/2}/e^{d+2}, so no e² survives here
            let gen = (df + 3.0) / (2f64.powi(d as i32 + 1) * E - 1.0);
            assert!(close(b.hyperdet_over_generic(), gen, 1e-12));
        }
        // Stirling
        let b = binary_asymptotics(10).unwrap();
        assert!(close(b.ed_frobenius, 3_628_800.0, 0.01));
    }

    #[test]
    fn discriminant_limits() {
        let r = discriminant_ratios(2, 3).unwrap();
        assert_eq!(r.degree, BigInt::from(12));
        let far = discriminant_ratios(400, 3).unwrap();
        assert!((far.fixed_omega_ratio - 1.0).abs() < 0.01);
        let wide = discriminant_ratios(2, 10_000).unwrap();
        assert!((wide.fixed_n_ratio - 1.0).abs() < 1e-3);
        assert!((wide.gen_ratio - 1.0).abs() < 1e-3);
        assert!(discriminant_ratios(2, 2).is_err());
    }

    #[test]
    fn rw_constants_small() {
        let r = verify_rw_constants(3).unwrap();
        assert_eq!(r.q, rational(1, 3));
        assert_eq!(r.det, rational(1, 3));
        assert_eq!(r.l0, rational(16, 9));
        let r = verify_rw_constants(4).unwrap();
        assert_eq!(r.q, rational(1, 2));
        assert_eq!(r.minus_partial_d, rational(16, 9));
        assert!(verify_rw_constants(2).is_err());
    }

    #[test]
    fn ln_of_huge_integers() {
        let v = BigInt::from(3).pow(2000);
        assert!(close(ln_bigint(&v), 2000.0 * 3f64.ln(), 1e-12));
        assert_eq!(relative_error(&BigInt::from(100), 100f64.ln()), 0.0);
    }

    #[test]
    fn printed_ed_estimate_drifts_shifted_one_converges() {
        let printed = convergence_sweep(AsymptoticFormula::EdFrobenius, 3, &[5, 10, 20, 40]).unwrap();
        assert!(!printed.strictly_decreasing());
        let shifted = convergence_sweep(AsymptoticFormula::EdFrobeniusShifted, 3, &[10, 20, 40]).unwrap();
        assert!(shifted.strictly_decreasing(), "{:?}", shifted.trend());
        assert!(shifted.scaled_error_bounded(), "{:?}", shifted.trend());
        // d = 4 overshoots at small n before settling
        let shifted = convergence_sweep(AsymptoticFormula::EdFrobeniusShifted, 4, &[8, 16, 24]).unwrap();
        assert!(shifted.strictly_decreasing(), "{:?}", shifted.trend());
    }

    #[test]
    fn sweep_reports_trend() {
        let r = convergence_sweep(AsymptoticFormula::Hyperdet, 3, &[5, 10]).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(r.strictly_decreasing());
        assert_eq!(r.d, Some(3));
    }
}
