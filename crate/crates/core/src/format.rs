use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Dimensions `(n₁,…,n_d)` of a product `P^{n₁}×⋯×P^{n_d}`, with Veronese
/// weights `(ω₁,…,ω_d)` that default to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Format {
    dims: Vec<u32>,
    weights: Vec<u32>,
}

impl Format {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        let weights = vec![1; dims.len()];
        Self::with_weights(dims, weights)
    }

    pub fn with_weights(dims: Vec<u32>, weights: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(invalid("a format needs at least one factor"));
        }
        if dims.len() != weights.len() {
            return Err(invalid(format!(
                "{} dimensions but {} weights",
                dims.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(invalid("weights must be positive"));
        }
        let f = Format { dims, weights };
        f.total_dim()?;
        Ok(f)
    }

    /// `d` copies of `n`.
    pub fn cube(n: u32, d: usize) -> Result<Self> {
        Self::new(vec![n; d])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Number of factors `d`.
    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    /// `N = Σ nᵢ`.
    pub fn total_dim(&self) -> Result<u32> {
        self.dims
            .iter()
            .try_fold(0u32, |acc, &n| acc.checked_add(n))
            .ok_or_else(|| invalid("total dimension overflows"))
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// The common weight when all weights agree.
    pub fn uniform_weight(&self) -> Option<u32> {
        let w = self.weights[0];
        self.weights.iter().all(|&x| x == w).then_some(w)
    }

    /// `max nⱼ = Σ_{i≠j} nᵢ`.
    pub fn is_boundary(&self) -> bool {
        let total: u64 = self.dims.iter().map(|&n| n as u64).sum();
        let max = *self.dims.iter().max().expect("non-empty") as u64;
        2 * max == total
    }

    /// This format with one more factor of dimension `m` and weight 1.
    pub fn extended(&self, m: u32) -> Result<Self> {
        let mut dims = self.dims.clone();
        let mut weights = self.weights.clone();
        dims.push(m);
        weights.push(1);
        Self::with_weights(dims, weights)
    }

    pub(crate) fn require_unit_weights(&self, what: &str) -> Result<()> {
        if self.has_unit_weights() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{what} needs unit weights, got {:?}", self.weights)))
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(u32::to_string).collect();
        write!(f, "{}", dims.join(","))
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u32>().map_err(|_| invalid(format!("bad {what} entry {t:?} in {s:?}")))
        })
        .collect()
}

impl FromStr for Format {
    type Err = Error;

    /// Parses `"1,1,3"`.
    fn from_str(s: &str) -> Result<Self> {
        Format::new(parse_list(s, "dimension")?)
    }
}

/// Parses a comma-separated weight list such as `"2,2"`.
pub fn parse_weights(s: &str) -> Result<Vec<u32>> {
    parse_list(s, "weight")
}
