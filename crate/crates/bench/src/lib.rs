//! Shared inputs for the benchmarks.

use segre_core::Format;

/// `(n,…,n)` with `d` factors.
pub fn cube(n: u32, d: usize) -> Format {
    Format::cube(n, d).expect("valid cube")
}

/// The boundary-adjacent formats that dominate the stabilization sweeps.
pub fn table_formats() -> Vec<Format> {
    [[2, 3, 0], [2, 3, 3], [2, 3, 5]]
        .into_iter()
        .map(|dims| Format::new(dims.to_vec()).expect("valid format"))
        .collect()
}
