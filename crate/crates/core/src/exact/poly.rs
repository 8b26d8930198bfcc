//! Sparse multivariate polynomials in the truncated ring
//! `Z[x₁,…,x_d] / (x₁^{c₁+1}, …, x_d^{c_d+1})`.
//!
//! Terms are stored sparsely, keyed by [`Exponent`] in graded order, so a
//! polynomial always iterates (and prints) in the same canonical order.
//! Products accumulate into a dense grid when it is small relative to the
//! number of term pairs and into a hash map otherwise.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::limits::Limits;
use crate::error::{invalid, Error, Result};

/// A multi-index `(α₁, …, α_d)`.
///
/// Ordered by total degree first; within a degree, larger exponents on
/// earlier variables come first (`x₁x₂ < x₁x₃ < x₂x₃`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn fits(&self, caps: &[u32]) -> bool {
        self.0.len() == caps.len() && self.0.iter().zip(caps).all(|(e, c)| e <= c)
    }

    /// Componentwise sum, `None` if any entry would pass its cap.
    fn add_within(&self, other: &Exponent, caps: &[u32]) -> Option<Exponent> {
        let mut out = Vec::with_capacity(caps.len());
        for ((&a, &b), &c) in self.0.iter().zip(&other.0).zip(caps) {
            let s = a.checked_add(b)?;
            if s > c {
                return None;
            }
            out.push(s);
        }
        Some(Exponent(out))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

/// Mixed-radix layout of the dense grid `∏ [0, cᵢ]`, last variable fastest.
#[derive(Debug, Clone)]
struct Grid {
    caps: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl Grid {
    fn new(caps: &[u32]) -> Option<Grid> {
        let mut strides = vec![0; caps.len()];
        let mut size = 1usize;
        for (i, &c) in caps.iter().enumerate().rev() {
            strides[i] = size;
            size = size.checked_mul(c as usize + 1)?;
        }
        Some(Grid { caps: caps.to_vec(), strides, size })
    }

    fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    fn exponent(&self, mut idx: usize) -> Exponent {
        let mut out = vec![0; self.caps.len()];
        for (i, &s) in self.strides.iter().enumerate() {
            out[i] = (idx / s) as u32;
            idx %= s;
        }
        Exponent(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    caps: Vec<u32>,
    terms: BTreeMap<Exponent, BigInt>,
}

impl TruncatedPoly {
    pub fn zero(caps: &[u32]) -> Self {
        TruncatedPoly { caps: caps.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(caps: &[u32]) -> Self {
        Self::constant(caps, BigInt::one())
    }

    pub fn constant(caps: &[u32], c: BigInt) -> Self {
        let mut p = Self::zero(caps);
        p.add_term(Exponent::zero(caps.len()), c);
        p
    }

    /// The variable `x_var`; zero when its cap is 0.
    pub fn variable(caps: &[u32], var: usize) -> Self {
        let mut p = Self::zero(caps);
        assert!(var < caps.len(), "variable index {var} out of range");
        if caps[var] >= 1 {
            p.add_term(Exponent::unit(caps.len(), var), BigInt::one());
        }
        p
    }

    pub fn monomial(caps: &[u32], exponent: Exponent, coeff: BigInt) -> Result<Self> {
        if !exponent.fits(caps) {
            return Err(Error::ExponentOutOfCaps { exponent: exponent.0, caps: caps.to_vec() });
        }
        let mut p = Self::zero(caps);
        p.add_term(exponent, coeff);
        Ok(p)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(caps: &[u32], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(caps);
        for (e, c) in terms {
            if !e.fits(caps) {
                return Err(Error::ExponentOutOfCaps { exponent: e.0, caps: caps.to_vec() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Exponent::zero(self.nvars())).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^e`, zero when absent. Errors if `e` lies outside the caps.
    pub fn coefficient(&self, e: &Exponent) -> Result<BigInt> {
        if !e.fits(&self.caps) {
            return Err(Error::ExponentOutOfCaps { exponent: e.0.clone(), caps: self.caps.clone() });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_default())
    }

    fn same_caps(&self, other: &Self) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapMismatch { left: self.caps.clone(), right: other.caps.clone() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_caps(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_caps(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.caps);
        }
        TruncatedPoly {
            caps: self.caps.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Product with every exponent past a cap discarded.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_caps(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.caps);
        }
        let pairs = self.len().saturating_mul(other.len());
        match Grid::new(&self.caps) {
            Some(grid) if grid.size <= (1 << 20) || grid.size <= pairs.saturating_mul(2) => {
                self.mul_dense(other, &grid)
            }
            _ => self.mul_hashed(other),
        }
    }

    fn mul_dense(&self, other: &Self, grid: &Grid) -> Self {
        let caps = &self.caps;
        let lhs: Vec<(&[u32], usize, &BigInt)> =
            self.terms.iter().map(|(e, c)| (e.entries(), grid.index(&e.0), c)).collect();
        let rhs: Vec<(&[u32], usize, &BigInt)> =
            other.terms.iter().map(|(e, c)| (e.entries(), grid.index(&e.0), c)).collect();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); grid.size];
        let mut touched: Vec<usize> = Vec::new();
        for &(ea, ia, ca) in &lhs {
            for &(eb, ib, cb) in &rhs {
                if ea.iter().zip(eb).zip(caps).all(|((&a, &b), &c)| a + b <= c) {
                    let slot = &mut acc[ia + ib];
                    if slot.is_zero() {
                        touched.push(ia + ib);
                    }
                    *slot += ca * cb;
                }
            }
        }
        let mut out = Self::zero(caps);
        touched.sort_unstable();
        touched.dedup();
        for idx in touched {
            let c = std::mem::take(&mut acc[idx]);
            if !c.is_zero() {
                out.terms.insert(grid.exponent(idx), c);
            }
        }
        out
    }

    fn mul_hashed(&self, other: &Self) -> Self {
        let mut acc: HashMap<Exponent, BigInt> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if let Some(e) = ea.add_within(eb, &self.caps) {
                    *acc.entry(e).or_default() += ca * cb;
                }
            }
        }
        let mut out = Self::zero(&self.caps);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.caps);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Terms of total degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: u64) -> Self {
        TruncatedPoly {
            caps: self.caps.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂x_var`, keeping the same caps.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars() {
            return Err(invalid(format!("variable {var} out of range for {} variables", self.nvars())));
        }
        let mut out = Self::zero(&self.caps);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k > 0 {
                let mut d = e.0.clone();
                d[var] -= 1;
                out.add_term(Exponent(d), c * k);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point, ignoring truncation.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars() {
            return Err(invalid(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Multiplicative inverse as a truncated power series; the constant term must be 1.
    pub fn series_inverse(&self, limits: &Limits) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::BadConstantTerm(c0.to_string()));
        }
        limits.check(&self.caps)?;
        let grid = Grid::new(&self.caps).expect("grid size checked by limits");
        let tail: Vec<(&[u32], usize, &BigInt)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.total_degree() > 0)
            .map(|(e, c)| (e.entries(), grid.index(&e.0), c))
            .collect();
        // g_α = -Σ_{β≠0} h_β g_{α-β}; α-β has a smaller flat index than α.
        let mut g: Vec<BigInt> = vec![BigInt::zero(); grid.size];
        g[0] = BigInt::one();
        let mut digits = vec![0u32; self.nvars()];
        for idx in 1..grid.size {
            for i in (0..digits.len()).rev() {
                if digits[i] < self.caps[i] {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
            }
            let mut acc = BigInt::zero();
            for &(eb, ib, cb) in &tail {
                if eb.iter().zip(&digits).all(|(b, a)| b <= a) {
                    let prev = &g[idx - ib];
                    if !prev.is_zero() {
                        acc -= cb * prev;
                    }
                }
            }
            g[idx] = acc;
        }
        let mut out = Self::zero(&self.caps);
        for (idx, c) in g.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(grid.exponent(idx), c);
            }
        }
        Ok(out)
    }

    /// Polynomial in the concatenated variables of `self` and `other`, with
    /// `x^a ⊗ y^b ↦ x^a y^b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let caps: Vec<u32> = self.caps.iter().chain(&other.caps).copied().collect();
        let mut out = Self::zero(&caps);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.0.iter().chain(&eb.0).copied().collect();
                out.terms.insert(Exponent(e), ca * cb);
            }
        }
        out
    }
}

/// `e_i(x₁,…,x_d)`, the sum of all squarefree monomials of degree `i`.
///
/// Monomials touching a variable with cap 0 are truncated away like any
/// other out-of-cap term.
pub fn elementary_symmetric(caps: &[u32], i: usize) -> Result<TruncatedPoly> {
    let d = caps.len();
    if i > d {
        return Err(invalid(format!("e_{i} is undefined in {d} variables")));
    }
    let mut p = TruncatedPoly::zero(caps);
    for subset in (0..d).combinations(i) {
        let mut e = vec![0u32; d];
        for &v in &subset {
            e[v] = 1;
        }
        let e = Exponent(e);
        if e.fits(caps) {
            p.add_term(e, BigInt::one());
        }
    }
    Ok(p)
}

pub fn poly_mul(a: &TruncatedPoly, b: &TruncatedPoly) -> Result<TruncatedPoly> {
    a.checked_mul(b)
}

pub fn extract_coefficient(p: &TruncatedPoly, e: &Exponent) -> Result<BigInt> {
    p.coefficient(e)
}

/// Truncated expansion of `1/h²`; requires `h(0) = 1`.
pub fn series_inverse_square(h: &TruncatedPoly) -> Result<TruncatedPoly> {
    series_inverse_square_with(h, &Limits::default())
}

pub fn series_inverse_square_with(h: &TruncatedPoly, limits: &Limits) -> Result<TruncatedPoly> {
    let c0 = h.constant_term();
    if !c0.is_one() {
        return Err(Error::BadConstantTerm(c0.to_string()));
    }
    limits.check(h.caps())?;
    h.mul_unchecked(h).series_inverse(limits)
}

impl Add for &TruncatedPoly {
    type Output = TruncatedPoly;
    /// Panics on cap mismatch; use [`TruncatedPoly::checked_add`] otherwise.
    fn add(self, rhs: Self) -> TruncatedPoly {
        self.checked_add(rhs).expect("cap mismatch in polynomial addition")
    }
}

impl Sub for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: Self) -> TruncatedPoly {
        self.checked_sub(rhs).expect("cap mismatch in polynomial subtraction")
    }
}

impl Mul for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: Self) -> TruncatedPoly {
        self.checked_mul(rhs).expect("cap mismatch in polynomial multiplication")
    }
}

impl Neg for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
