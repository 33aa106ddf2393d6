//! LLL reduction of positive definite Gram matrices, exact over `Q`.

use num_traits::{Signed, Zero};

use super::config::VectorConfiguration;
use super::form::QuadraticForm;
use super::perfection::barycenter_matrix;
use crate::linalg::{rat, QMat, Rat};

fn round_rat(q: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    // floor(q + 1/2)
    let shifted = q + Rat::new(1.into(), 2.into());
    shifted.floor().to_integer().to_i64().expect("size reduction coefficient overflows i64")
}

struct Gso {
    mu: Vec<Vec<Rat>>,
    b: Vec<Rat>,
}

fn gso(g: &QMat) -> Gso {
    let n = g.nrows();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut v = g.at(i, j).clone();
            for l in 0..j {
                if !mu[j][l].is_zero() && !mu[i][l].is_zero() {
                    v -= &mu[j][l] * &mu[i][l] * &b[l];
                }
            }
            mu[i][j] = v / &b[j];
        }
        let mut v = g.at(i, i).clone();
        for l in 0..i {
            if !mu[i][l].is_zero() {
                v -= &mu[i][l] * &mu[i][l] * &b[l];
            }
        }
        b[i] = v;
    }
    Gso { mu, b }
}

/// LLL-reduces a positive definite Gram matrix with `δ = 3/4`.
///
/// Returns the unimodular `U` (row-major, basis vectors in columns) such
/// that `Uᵗ G U` is reduced.
pub fn lll_gram(g: &QMat) -> Vec<Vec<i64>> {
    let n = g.nrows();
    let mut g = g.clone();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n <= 1 {
        return u;
    }
    let delta = rat(3, 4);
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "LLL did not terminate");
        // size reduction of b_k
        for j in (0..k).rev() {
            let d = gso(&g);
            let q = round_rat(&d.mu[k][j]);
            if q == 0 {
                continue;
            }
            let qr = Rat::from_integer(q.into());
            // b_k <- b_k - q b_j
            let gkk = g.at(k, k) - Rat::from_integer(2.into()) * &qr * g.at(k, j) + &qr * &qr * g.at(j, j);
            for i in 0..n {
                if i == k {
                    continue;
                }
                let v = g.at(k, i) - &qr * g.at(j, i);
                g.set(k, i, v.clone());
                g.set(i, k, v);
            }
            g.set(k, k, gkk);
            for row in u.iter_mut() {
                row[k] -= q * row[j];
            }
        }
        let d = gso(&g);
        let lhs = d.b[k].clone();
        let rhs = (&delta - &d.mu[k][k - 1] * &d.mu[k][k - 1]) * &d.b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            swap_basis(&mut g, &mut u, k, k - 1);
            k = (k - 1).max(1);
        }
    }
    u
}

fn swap_basis(g: &mut QMat, u: &mut [Vec<i64>], a: usize, b: usize) {
    let n = g.nrows();
    for i in 0..n {
        let x = g.at(a, i).clone();
        let y = g.at(b, i).clone();
        g.set(a, i, y);
        g.set(b, i, x);
    }
    for i in 0..n {
        let x = g.at(i, a).clone();
        let y = g.at(i, b).clone();
        g.set(i, a, y);
        g.set(i, b, x);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

/// LLL-reduces a positive definite form: returns `(Uᵗ A U, U)`.
pub fn lll_form(a: &QuadraticForm) -> (QuadraticForm, Vec<Vec<i64>>) {
    let u = lll_gram(a.entries());
    (a.transform(&u), u)
}

/// LLL reduction of a configuration through its barycenter matrix
/// `B = Σ v vᵗ`.
///
/// With `U` reducing `B`, the configuration is moved by `P = Uᵗ`, so that
/// the new barycenter `P B Pᵗ` is reduced. Rank-deficient configurations
/// are reduced through `B + I/64`. If reduction would enlarge the largest
/// coordinate, the input is returned with `P = I`.
pub fn lll_reduce(v: &VectorConfiguration) -> (VectorConfiguration, Vec<Vec<i64>>) {
    let n = v.dim();
    let identity: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if v.is_empty() {
        return (v.clone(), identity);
    }
    let b = barycenter_matrix(v);
    let mut g = QMat::from_i64_rows(b.rows());
    if !v.is_well_rounded() {
        for i in 0..n {
            let x = g.at(i, i) + rat(1, 64);
            g.set(i, i, x);
        }
    }
    let u = lll_gram(&g);
    let p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| u[j][i]).collect()).collect();
    let reduced = v.transform(&p);
    if reduced.max_abs_entry() > v.max_abs_entry() {
        return (v.clone(), identity);
    }
    (reduced, p)
}

/// Whether `g` satisfies the LLL conditions with `δ = 3/4`.
pub fn is_lll_reduced(g: &QMat) -> bool {
    let n = g.nrows();
    let d = gso(g);
    let half = rat(1, 2);
    for i in 0..n {
        for j in 0..i {
            if d.mu[i][j].abs() > half {
                return false;
            }
        }
    }
    for k in 1..n {
        if d.b[k] < (rat(3, 4) - &d.mu[k][k - 1] * &d.mu[k][k - 1]) * &d.b[k - 1] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_i64;

    #[test]
    fn reduces_skewed_pair() {
        let v = VectorConfiguration::new(2, vec![vec![1, 0], vec![100, 1]]).unwrap();
        let (w, p) = lll_reduce(&v);
        assert_eq!(w, VectorConfiguration::standard_basis(2));
        assert_eq!(det_i64(&p).magnitude(), &1u32.into());
    }

    #[test]
    fn identity_on_reduced_input() {
        let v = VectorConfiguration::standard_basis(3);
        let (w, p) = lll_reduce(&v);
        assert_eq!(w, v);
        assert_eq!(p, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn gram_result_is_reduced() {
        let a = QuadraticForm::from_i64_rows(&[vec![101, 530, 17], vec![530, 2790, 91], vec![17, 91, 5]]).unwrap();
        assert!(a.is_positive_definite());
        let (r, u) = lll_form(&a);
        assert!(is_lll_reduced(r.entries()));
        assert_eq!(det_i64(&u).magnitude(), &1u32.into());
    }
}
