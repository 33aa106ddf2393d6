//! Fixtures shared by the benchmarks.

use voronoi_core::enumerate::enumerate_perfect_forms;
use voronoi_core::{QuadraticForm, VectorConfiguration};

/// Minimal vectors of the perfect forms in dimension `n`.
pub fn perfect_configs(n: usize) -> Vec<(QuadraticForm, VectorConfiguration)> {
    enumerate_perfect_forms(n).expect("small dimension").into_iter().map(|p| (p.form, p.min_vectors)).collect()
}

/// `M V` for a fixed unimodular `M` of size `n`.
pub fn scrambled(v: &VectorConfiguration) -> VectorConfiguration {
    let n = v.dim();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j) + i64::from(j == i + 1) - i64::from(i == 0 && j == n - 1 && n > 2)).collect())
        .collect();
    v.transform(&m)
}
