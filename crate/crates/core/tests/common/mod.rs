//! Independent oracles. None of these touch `TruncatedPoly` or the library's
//! summation code; they work on plain maps and brute-force enumeration.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Poly = HashMap<Vec<u32>, BigInt>;

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn choose(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    fact(a) / (fact(b) * fact(a - b))
}

fn mul(a: &Poly, b: &Poly, caps: &[u32]) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        'pairs: for (eb, cb) in b {
            let mut e = Vec::with_capacity(caps.len());
            for k in 0..caps.len() {
                let s = ea[k] + eb[k];
                if s > caps[k] {
                    continue 'pairs;
                }
                e.push(s);
            }
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `[x^n] 1/H²` through `1/(1−u)² = Σ (k+1) u^k` with `u = 1 − H`.
///
/// `u` has no constant term, so `u^k` dies once `k` passes `Σ nᵢ`.
pub fn hyperdet_by_geometric_series(dims: &[u32], omega: i64) -> BigInt {
    let d = dims.len();
    // u = −Σ_{i≥1} (1 − ωi) e_i
    let mut u = Poly::new();
    for mask in 1u32..(1 << d) {
        let e: Vec<u32> = (0..d).map(|k| (mask >> k) & 1).collect();
        if e.iter().zip(dims).any(|(a, c)| a > c) {
            continue;
        }
        let i = mask.count_ones() as i64;
        u.insert(e, BigInt::from(omega * i - 1));
    }
    let total: u32 = dims.iter().sum();
    let target = dims.to_vec();
    let mut power: Poly = Poly::from([(vec![0; d], BigInt::one())]);
    let mut acc = BigInt::zero();
    for k in 0..=total {
        if let Some(c) = power.get(&target) {
            acc += c * BigInt::from(k + 1);
        }
        power = mul(&power, &u, dims);
    }
    acc
}

/// Frobenius ED degree by summing over zero-diagonal matrices `a` with row
/// sums equal to column sums `kᵢ ≤ nᵢ`, each weighted `∏ kᵢ! / ∏ a_ij!`.
pub fn frobenius_by_matrices(dims: &[u32]) -> BigInt {
    let d = dims.len();
    let mut total = BigInt::zero();
    let mut ks = vec![0u32; d];
    loop {
        total += count_matrices(&ks);
        // odometer over k ∈ ∏ [0, nᵢ]
        let mut i = 0;
        loop {
            if i == d {
                return total;
            }
            if ks[i] < dims[i] {
                ks[i] += 1;
                break;
            }
            ks[i] = 0;
            i += 1;
        }
    }
}

fn count_matrices(ks: &[u32]) -> BigInt {
    let d = ks.len();
    let mut col = vec![0u32; d];
    let weight: BigInt = ks.iter().map(|&k| fact(k as u64)).product();
    let total = BigRational::from_integer(weight) * rows(ks, 0, &mut col);
    assert!(total.is_integer());
    total.to_integer()
}

/// `Σ ∏ 1/a_ij!` over fillings of rows `i..` that hit the column sums `ks`.
fn rows(ks: &[u32], i: usize, col: &mut [u32]) -> BigRational {
    let d = ks.len();
    if i == d {
        let ok = col.iter().zip(ks).all(|(c, k)| c == k);
        return if ok { BigRational::one() } else { BigRational::zero() };
    }
    let others: Vec<usize> = (0..d).filter(|&j| j != i).collect();
    let mut total = BigRational::zero();
    let mut parts = vec![0u32; others.len()];
    distribute(ks[i], 0, &mut parts, &mut |parts| {
        if parts.iter().zip(&others).any(|(&a, &j)| col[j] + a > ks[j]) {
            return;
        }
        for (&a, &j) in parts.iter().zip(&others) {
            col[j] += a;
        }
        let denom: BigInt = parts.iter().map(|&a| fact(a as u64)).product();
        total += rows(ks, i + 1, col) / BigRational::from_integer(denom);
        for (&a, &j) in parts.iter().zip(&others) {
            col[j] -= a;
        }
    });
    total
}

fn distribute(left: u32, at: usize, parts: &mut [u32], f: &mut dyn FnMut(&[u32])) {
    if parts.is_empty() {
        if left == 0 {
            f(parts);
        }
        return;
    }
    if at == parts.len() - 1 {
        parts[at] = left;
        f(parts);
        return;
    }
    for a in 0..=left {
        parts[at] = a;
        distribute(left - a, at + 1, parts, f);
    }
}

/// Generic ED degree with the inner sum over explicit compositions
/// `i₁+⋯+i_d = j`, `0 ≤ i_l ≤ n_l + 1`, using `1/(−1)! = 0`.
pub fn generic_ed_by_compositions(dims: &[u32], weights: &[u32]) -> BigInt {
    let n: u32 = dims.iter().sum();
    let mut total = BigRational::zero();
    for j in 0..=n {
        let mut inner = BigRational::zero();
        let mut comp = vec![0u32; dims.len()];
        compositions(j, 0, dims, &mut comp, &mut |c| {
            let mut term = BigRational::one();
            for ((&i, &nl), &w) in c.iter().zip(dims).zip(weights) {
                if i > nl {
                    term = BigRational::zero();
                    break;
                }
                term *= BigRational::new(
                    choose(nl as u64 + 1, i as u64) * BigInt::from(w).pow(nl - i),
                    fact((nl - i) as u64),
                );
            }
            inner += term;
        });
        let outer = (BigInt::from(2).pow(n + 1 - j) - 1) * fact((n - j) as u64);
        let term = inner * BigRational::from_integer(outer);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    assert!(total.is_integer());
    total.to_integer()
}

fn compositions(left: u32, at: usize, dims: &[u32], comp: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if at == dims.len() {
        if left == 0 {
            f(comp);
        }
        return;
    }
    for i in 0..=left.min(dims[at] + 1) {
        comp[at] = i;
        compositions(left - i, at + 1, dims, comp, f);
    }
}

/// Determinant by fraction-keeping Gaussian elimination.
pub fn gauss_det(n: usize, entries: &[BigRational]) -> BigRational {
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|r| entries[r * n..(r + 1) * n].to_vec()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let factor = &a[r][c] / &a[c][c];
            for k in c..n {
                let sub = &factor * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

/// `det(t tᵀ)` for a 2×4 matrix as `Σ_{j<k} (2×2 minor on columns j,k)²`.
pub fn cauchy_binet_2x4(t: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for j in 0..4 {
        for k in j + 1..4 {
            let minor = &t[j] * &t[4 + k] - &t[k] * &t[4 + j];
            total += &minor * &minor;
        }
    }
    total
}

/// Non-increasing positive dimension vectors with sum at most `max_sum`.
pub fn sorted_formats(max_sum: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for n in (1..=left.min(cap)).rev() {
            cur.push(n);
            go(left - n, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_sum, &mut Vec::new(), &mut out);
    out
}

/// All dimension vectors with exactly `d` entries (zeros allowed) summing to at most `max_sum`.
pub fn all_formats(d: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn go(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for n in 0..=left {
            cur.push(n);
            go(d, left - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_sum, &mut Vec::new(), &mut out);
    out
}
