use crate::error::{Error, Result};

/// Rough per-coefficient footprint of a dense expansion grid, including the
/// limbs of a moderately large coefficient.
pub const BYTES_PER_TERM: u64 = 64;

/// Memory budget for dense truncated-series expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cap_bytes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap_bytes: Self::DEFAULT_CAP_BYTES }
    }
}

impl Limits {
    /// 2 GiB.
    pub const DEFAULT_CAP_BYTES: u64 = 2 << 30;

    pub fn new(cap_bytes: u64) -> Self {
        Limits { cap_bytes }
    }

    pub fn unlimited() -> Self {
        Limits { cap_bytes: u64::MAX }
    }

    /// Fails with [`Error::CapExceeded`] when a dense grid over `caps` would
    /// exceed the budget; the error names the largest cap.
    pub fn check(&self, caps: &[u32]) -> Result<()> {
        let terms: u128 = caps
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
            .unwrap_or(u128::MAX);
        let needed = terms.saturating_mul(BYTES_PER_TERM as u128);
        if needed > self.cap_bytes as u128 || terms > usize::MAX as u128 {
            let limiting_index = caps
                .iter()
                .enumerate()
                .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
                .map(|(i, _)| i)
                .unwrap_or(0);
            return Err(Error::CapExceeded {
                caps: caps.to_vec(),
                limiting_index,
                needed_bytes: needed,
                budget_bytes: self.cap_bytes,
            });
        }
        Ok(())
    }
}
