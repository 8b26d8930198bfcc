//! The ED polynomial of the rank-one matrix variety, `det(t tᵀ − ε² I)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix { rows: n, cols: n, entries: vec![BigRational::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = BigRational::from_integer(1.into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        RationalMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// `self · selfᵀ`.
    pub fn gram(&self) -> Self {
        let n = self.rows;
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = BigRational::zero();
                for k in 0..self.cols {
                    s += self.get(i, k) * self.get(j, k);
                }
                entries[j * n + i] = s.clone();
                entries[i * n + j] = s;
            }
        }
        RationalMatrix { rows: n, cols: n, entries }
    }

    /// Coefficients of `det(xI − A)`, highest power first (Berkowitz).
    pub fn char_poly(&self) -> Result<Vec<BigRational>> {
        if self.rows != self.cols {
            return Err(invalid("characteristic polynomial needs a square matrix"));
        }
        let n = self.rows;
        let mut v = vec![BigRational::from_integer(1.into())];
        for r in 0..n {
            // Toeplitz column [1, −a_rr, −R C, −R A C, …, −R A^{r−1} C]
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigRational::from_integer(1.into()));
            t.push(-self.get(r, r).clone());
            let mut col: Vec<BigRational> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let dot = (0..r).fold(BigRational::zero(), |acc, k| acc + self.get(r, k) * &col[k]);
                t.push(-dot);
                col = (0..r)
                    .map(|i| (0..r).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * &col[k]))
                    .collect();
            }
            let mut next = vec![BigRational::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for k in 0..=i.min(r) {
                    *slot += &t[i - k] * &v[k];
                }
            }
            v = next;
        }
        Ok(v)
    }

    pub fn determinant(&self) -> Result<BigRational> {
        let cp = self.char_poly()?;
        let last = cp.last().expect("non-empty").clone();
        Ok(if self.rows.is_multiple_of(2) { last } else { -last })
    }
}

/// Coefficients of `det(t tᵀ − ε² I)` in powers of `ε²`, constant term first.
///
/// Wide matrices are used as given and tall ones are transposed first, so the
/// degree is `min(rows, cols)` and the leading coefficient is `(−1)^{min}`.
pub fn matrix_ed_polynomial(t: &RationalMatrix) -> Vec<BigRational> {
    let t = if t.rows > t.cols { t.transpose() } else { t.clone() };
    let r = t.rows;
    // det(M − xI) = (−1)^r det(xI − M)
    let cp = t.gram().char_poly().expect("gram matrix is square");
    (0..=r)
        .map(|p| {
            let c = cp[r - p].clone();
            if r % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}
