use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::rank_i64;

/// Flips `v` so that its first nonzero coordinate is positive.
pub fn normalize_vector(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|a| -a).collect(),
        _ => v.to_vec(),
    }
}

pub fn is_normalized(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Applies an integer matrix (row-major) to a vector.
pub fn apply(p: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    p.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// A finite set of pairs `±v` of nonzero integer vectors.
///
/// One representative per pair is kept, with first nonzero coordinate
/// positive, and the representatives are sorted lexicographically. This
/// makes equality and serialization canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorConfiguration {
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

impl VectorConfiguration {
    /// Builds a configuration, rejecting zero vectors and repeated pairs.
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
            out.push(normalize_vector(&v));
        }
        out.sort();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVector(w[0].clone()));
        }
        Ok(VectorConfiguration { dim, vectors: out })
    }

    /// Builds a configuration, silently merging repeated pairs.
    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut out = Vec::new();
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
            out.push(normalize_vector(&v));
        }
        out.sort();
        out.dedup();
        Ok(VectorConfiguration { dim, vectors: out })
    }

    pub fn empty(dim: usize) -> Self {
        VectorConfiguration { dim, vectors: Vec::new() }
    }

    /// The standard basis `e_1, ..., e_n`.
    pub fn standard_basis(dim: usize) -> Self {
        let vectors: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_vectors(dim, vectors).expect("standard basis")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of pairs `s`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// Both members of every pair.
    pub fn signed_vectors(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.vectors.len());
        for v in &self.vectors {
            out.push(v.clone());
            out.push(v.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.dim && self.vectors.binary_search(&normalize_vector(v)).is_ok()
    }

    pub fn position(&self, v: &[i64]) -> Option<usize> {
        self.vectors.binary_search(&normalize_vector(v)).ok()
    }

    pub fn rank(&self) -> usize {
        rank_i64(&self.vectors)
    }

    pub fn is_well_rounded(&self) -> bool {
        self.rank() == self.dim
    }

    /// `[Zⁿ : Σ Z v]` for a well-rounded configuration.
    pub fn lattice_index(&self) -> Option<u64> {
        use num_traits::{Signed, ToPrimitive, Zero};
        if !self.is_well_rounded() {
            return None;
        }
        let rows: Vec<Vec<num_bigint::BigInt>> =
            self.vectors.iter().map(|v| v.iter().map(|&x| x.into()).collect()).collect();
        let h: Vec<Vec<num_bigint::BigInt>> =
            crate::linalg::hermite_normal_form(&rows).into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        crate::linalg::det_bigint(&h).abs().to_u64()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.vectors.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Image under the integer matrix `p` acting on column vectors.
    pub fn transform(&self, p: &[Vec<i64>]) -> Self {
        let img = self.vectors.iter().map(|v| apply(p, v));
        Self::from_vectors(self.dim, img).expect("transform by a singular matrix")
    }

    pub fn with_vector(&self, v: &[i64]) -> Self {
        let mut vs = self.vectors.clone();
        vs.push(v.to_vec());
        Self::from_vectors(self.dim, vs).expect("dimension checked by caller")
    }

    pub fn union(&self, other: &Self) -> Self {
        let vs = self.vectors.iter().chain(other.vectors.iter()).cloned();
        Self::from_vectors(self.dim, vs).expect("same dimension")
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.vectors.iter().all(|v| other.contains(v))
    }

    /// The sub-configuration selected by `keep`.
    pub fn subset(&self, keep: impl Fn(usize) -> bool) -> Self {
        let vectors = self.vectors.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, v)| v.clone()).collect();
        VectorConfiguration { dim: self.dim, vectors }
    }
}

impl fmt::Debug for VectorConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Config(n={}, {:?})", self.dim, self.vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_order() {
        let c = VectorConfiguration::new(2, vec![vec![0, -1], vec![-1, 1], vec![1, 0]]).unwrap();
        assert_eq!(c.vectors(), &[vec![0, 1], vec![1, -1], vec![1, 0]]);
        assert!(c.contains(&[-1, 1]));
        assert!(!c.contains(&[1, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(VectorConfiguration::new(2, vec![vec![0, 0]]), Err(Error::ZeroVector)));
        assert!(matches!(
            VectorConfiguration::new(2, vec![vec![1, 2], vec![-1, -2]]),
            Err(Error::DuplicateVector(_))
        ));
        assert!(matches!(VectorConfiguration::new(2, vec![vec![1]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn well_roundedness() {
        assert!(VectorConfiguration::standard_basis(3).is_well_rounded());
        let c = VectorConfiguration::new(2, vec![vec![1, 0]]).unwrap();
        assert!(!c.is_well_rounded());
    }
}
