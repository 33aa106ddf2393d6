//! Sublattice codes and Watson's identity.

use num_traits::{Signed, Zero};

use super::form::QuadraticForm;
use crate::error::{Error, Result};
use crate::linalg::{rat, rat_int, Rat};

/// The lattice `⟨e_1, …, e_n, (Σ a_i e_i)/d⟩` over the basis `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SublatticeCode {
    pub modulus: i64,
    pub word: Vec<i64>,
}

impl SublatticeCode {
    pub fn new(modulus: i64, word: Vec<i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Invalid(format!("modulus {modulus} < 2")));
        }
        Ok(SublatticeCode { modulus, word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Symmetric residues in absolute value, sorted ascending.
    pub fn normalized(&self) -> Self {
        SublatticeCode { modulus: self.modulus, word: normalize_word(&self.word, self.modulus) }
    }

    pub fn is_normalized(&self) -> bool {
        let d = self.modulus;
        self.word.windows(2).all(|w| w[0] <= w[1]) && self.word.iter().all(|&a| (0..=d / 2).contains(&a))
    }

    /// `e = (Σ a_i e_i)/d` in the coordinates of the `e_i`.
    pub fn generator(&self) -> Vec<Rat> {
        self.word.iter().map(|&a| rat(a, self.modulus)).collect()
    }
}

pub fn normalize_word(word: &[i64], d: i64) -> Vec<i64> {
    let mut w: Vec<i64> = word
        .iter()
        .map(|&a| {
            let r = a.rem_euclid(d);
            r.min(d - r)
        })
        .collect();
    w.sort_unstable();
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WatsonReport {
    pub lhs: Rat,
    pub rhs: Rat,
    pub sum_abs_a: i64,
    /// `Σ|a_i| ≥ 2d`.
    pub meets_bound: bool,
    /// First `i` with `a_i ≠ 0` and `N(e'_i) < N(e_i)`.
    pub shorter_neighbor: Option<usize>,
}

/// Evaluates both sides of Watson's identity for `e = (Σ a_i e_i)/d`,
/// `e'_i = e − sgn(a_i) e_i`, with norms taken in the Gram matrix `a`
/// of the `e_i`.
pub fn watson_identity_check(a: &QuadraticForm, code: &SublatticeCode) -> Result<WatsonReport> {
    let n = a.dim();
    if code.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: code.len() });
    }
    let d = code.modulus;
    let e = code.generator();
    let ne = a.eval_rat(&e);
    let sum_abs_a: i64 = code.word.iter().map(|x| x.abs()).sum();
    let lhs = rat_int(sum_abs_a - 2 * d) * &ne;
    let mut rhs = Rat::zero();
    let mut shorter_neighbor = None;
    for i in 0..n {
        let ai = code.word[i];
        if ai == 0 {
            continue;
        }
        let mut ep = e.clone();
        ep[i] -= rat_int(ai.signum());
        let diff = a.eval_rat(&ep) - a.at(i, i);
        if diff.is_negative() && shorter_neighbor.is_none() {
            shorter_neighbor = Some(i);
        }
        rhs += rat_int(ai.abs()) * diff;
    }
    Ok(WatsonReport { lhs, rhs, sum_abs_a, meets_bound: sum_abs_a >= 2 * d, shorter_neighbor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMat;

    fn exad3() -> QuadraticForm {
        let t = rat(1, 5);
        let mut m = QMat::zeros(6, 6);
        for i in 0..6 {
            for j in 0..6 {
                m.set(i, j, if i == j { rat_int(1) } else { t.clone() });
            }
        }
        QuadraticForm::new(m).unwrap()
    }

    #[test]
    fn example_d3_is_tight() {
        let code = SublatticeCode::new(3, vec![1; 6]).unwrap();
        let r = watson_identity_check(&exad3(), &code).unwrap();
        assert_eq!(r.sum_abs_a, 6);
        assert!(r.meets_bound);
        assert_eq!(r.lhs, r.rhs);
        assert!(r.lhs.is_zero());
        assert_eq!(r.shorter_neighbor, None);
        let e = code.generator();
        for i in 0..6 {
            let mut ep = e.clone();
            ep[i] -= rat_int(1);
            assert_eq!(exad3().eval_rat(&ep), rat_int(1));
        }
        assert_eq!(exad3().eval_rat(&e), rat(4, 3));
    }

    #[test]
    fn below_bound_forces_shorter_vector() {
        let code = SublatticeCode::new(5, vec![1, 2, 0]).unwrap();
        let a = QuadraticForm::identity(3);
        let r = watson_identity_check(&a, &code).unwrap();
        assert!(!r.meets_bound);
        assert_eq!(r.lhs, r.rhs);
        assert!(r.shorter_neighbor.is_some());
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_word(&[4, 1, 3], 5), vec![1, 1, 2]);
        assert!(SublatticeCode::new(5, vec![1, 1, 2]).unwrap().is_normalized());
        assert!(SublatticeCode::new(1, vec![]).is_err());
    }
}
