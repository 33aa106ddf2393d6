//! Perfection rank, perfection relations, barycenter matrices and
//! characteristic determinants.

use num_bigint::BigInt;
use num_traits::Signed;

use super::config::VectorConfiguration;
use super::form::QuadraticForm;
use super::minvec::minimal_vectors;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel_i64, rank_i64, rat_int, QMat, Rat};

/// `n(n+1)/2`.
pub fn sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Coordinates of `v vᵗ` in the basis `(E_ij)_{i ≤ j}` of symmetric
/// matrices, ordered row by row.
pub fn sym_vec(v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut out = Vec::with_capacity(sym_dim(n));
    for i in 0..n {
        for j in i..n {
            out.push(v[i] * v[j]);
        }
    }
    out
}

/// Index of `(i, j)`, `i ≤ j`, in [`sym_vec`] order.
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// `B = T Tᵗ` where the columns of `T` are the configuration's
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycenterMatrix {
    rows: Vec<Vec<i64>>,
}

impl BarycenterMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_positive_definite(&self) -> bool {
        QuadraticForm::from_i64_rows(&self.rows).is_ok_and(|f| f.is_positive_definite())
    }
}

pub fn barycenter_matrix(v: &VectorConfiguration) -> BarycenterMatrix {
    let n = v.dim();
    let mut rows = vec![vec![0i64; n]; n];
    for x in v.vectors() {
        for i in 0..n {
            for j in 0..n {
                rows[i][j] += x[i] * x[j];
            }
        }
    }
    BarycenterMatrix { rows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectionData {
    pub rank: usize,
    /// Integer basis of `{λ : Σ λ_v v vᵗ = 0}`, indexed like the
    /// configuration's vectors.
    pub relations: Vec<Vec<BigInt>>,
}

pub fn perfection_data(v: &VectorConfiguration) -> PerfectionData {
    let cols: Vec<Vec<i64>> = v.vectors().iter().map(|x| sym_vec(x)).collect();
    let rank = rank_i64(&cols);
    let n = sym_dim(v.dim());
    let m: Vec<Vec<i64>> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let relations = integer_kernel_i64(&m, v.len());
    PerfectionData { rank, relations }
}

/// Perfection rank alone (cheaper than [`perfection_data`]).
pub fn perfection_rank(v: &VectorConfiguration) -> usize {
    let cols: Vec<Vec<i64>> = v.vectors().iter().map(|x| sym_vec(x)).collect();
    rank_i64(&cols)
}

/// Whether the positive and negative supports of `relation` span the same
/// subspace.
pub fn relation_supports_span_equal(v: &VectorConfiguration, relation: &[BigInt]) -> bool {
    let pos: Vec<Vec<i64>> = v
        .vectors()
        .iter()
        .zip(relation)
        .filter(|(_, l)| l.is_positive())
        .map(|(x, _)| x.clone())
        .collect();
    let neg: Vec<Vec<i64>> = v
        .vectors()
        .iter()
        .zip(relation)
        .filter(|(_, l)| l.is_negative())
        .map(|(x, _)| x.clone())
        .collect();
    let both: Vec<Vec<i64>> = pos.iter().chain(neg.iter()).cloned().collect();
    let r = rank_i64(&both);
    rank_i64(&pos) == r && rank_i64(&neg) == r
}

/// A form is perfect when its minimal vectors have full perfection rank.
pub fn is_perfect(a: &QuadraticForm) -> Result<bool> {
    let (_, m) = minimal_vectors(a)?;
    Ok(perfection_rank(&m) == sym_dim(a.dim()))
}

/// Minors of the coefficient matrix of the non-basis vectors on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicDeterminants {
    /// Row `i` holds the coefficients of the `i`-th non-basis vector.
    pub coefficients: Vec<Vec<Rat>>,
    /// `by_size[m - 1]` lists the `m × m` minors, rows and columns taken in
    /// lexicographic order of index subsets.
    pub by_size: Vec<Vec<Rat>>,
}

pub const DEFAULT_MINOR_CAP: usize = 4;

pub fn characteristic_determinants(
    v: &VectorConfiguration,
    basis_idx: &[usize],
    max_size: usize,
) -> Result<CharacteristicDeterminants> {
    let n = v.dim();
    if basis_idx.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: basis_idx.len() });
    }
    if basis_idx.iter().any(|&i| i >= v.len()) {
        return Err(Error::Invalid("basis index out of range".into()));
    }
    let basis: Vec<Vec<i64>> = basis_idx.iter().map(|&i| v.vectors()[i].clone()).collect();
    if rank_i64(&basis) < n {
        return Err(Error::DependentVectors);
    }
    // Columns of the basis matrix are the basis vectors.
    let bm = QMat::from_i64_rows(&(0..n).map(|r| basis.iter().map(|b| b[r]).collect()).collect::<Vec<_>>());
    let inv = bm.inverse().ok_or(Error::DependentVectors)?;
    let coefficients: Vec<Vec<Rat>> = v
        .vectors()
        .iter()
        .enumerate()
        .filter(|(i, _)| !basis_idx.contains(i))
        .map(|(_, x)| inv.mul_vec(&x.iter().map(|&c| rat_int(c)).collect::<Vec<_>>()))
        .collect();
    let t = coefficients.len();
    let top = max_size.min(t).min(n);
    let mut by_size = Vec::with_capacity(top);
    for m in 1..=top {
        let mut minors = Vec::new();
        for rows in subsets(t, m) {
            for cols in subsets(n, m) {
                let sub: Vec<Vec<Rat>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| coefficients[r][c].clone()).collect()).collect();
                minors.push(QMat::from_rows(&sub).det());
            }
        }
        by_size.push(minors);
    }
    Ok(CharacteristicDeterminants { coefficients, by_size })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn cfg(n: usize, v: &[&[i64]]) -> VectorConfiguration {
        VectorConfiguration::new(n, v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn sym_index_matches_sym_vec() {
        let v = [2, 3, 5, 7];
        let s = sym_vec(&v);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s[sym_index(4, i, j)], v[i] * v[j]);
            }
        }
    }

    #[test]
    fn barycenters() {
        assert_eq!(barycenter_matrix(&cfg(2, &[&[1, 0], &[0, 1]])).rows(), &[vec![1, 0], vec![0, 1]]);
        let hex = barycenter_matrix(&cfg(2, &[&[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(hex.rows(), &[vec![2, 1], vec![1, 2]]);
        let single = barycenter_matrix(&cfg(2, &[&[1, 0]]));
        assert_eq!(single.rows(), &[vec![1, 0], vec![0, 0]]);
        assert!(!single.is_positive_definite());
        assert!(hex.is_positive_definite());
    }

    #[test]
    fn basis_has_no_relations() {
        let d = perfection_data(&cfg(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(d.rank, 2);
        assert!(d.relations.is_empty());
    }

    #[test]
    fn char_dets_of_hexagonal() {
        let v = cfg(2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let cd = characteristic_determinants(&v, &[0, 1], DEFAULT_MINOR_CAP).unwrap();
        assert_eq!(cd.by_size.len(), 1);
        assert_eq!(cd.by_size[0], vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn char_dets_detect_index_two() {
        // V = {e1, e2, (2,1)}: the 1x1 minor 2 is det(e2, (2,1)) up to sign.
        let v = cfg(2, &[&[0, 1], &[1, 0], &[2, 1]]);
        let cd = characteristic_determinants(&v, &[0, 1], DEFAULT_MINOR_CAP).unwrap();
        // coefficients on (e2, e1) are (1, 2)
        let oracle = |a: [i64; 2], b: [i64; 2]| a[0] * b[1] - a[1] * b[0];
        assert_eq!(oracle([1, 0], [2, 1]).abs(), 1);
        assert_eq!(oracle([0, 1], [2, 1]).abs(), 2);
        assert!(cd.by_size[0].contains(&rat_int(2)));
        assert!(!cd.by_size[0].iter().any(|x| x.is_zero()));
    }

    #[test]
    fn char_dets_reject_dependent_basis() {
        let v = cfg(2, &[&[1, 0], &[2, 0], &[0, 1]]);
        assert!(matches!(characteristic_determinants(&v, &[1, 2], 4), Err(Error::DependentVectors)));
    }
}
