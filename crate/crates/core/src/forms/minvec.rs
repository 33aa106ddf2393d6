//! Short and minimal vectors of positive definite forms.
//!
//! The form is LLL-reduced first. Candidates are enumerated with a
//! Fincke–Pohst recursion on the floating-point Cholesky factor with a
//! widened bound, and every candidate is then evaluated exactly.

use num_traits::{ToPrimitive, Zero};

use super::config::{apply, VectorConfiguration};
use super::form::QuadraticForm;
use super::lll::lll_form;
use crate::error::{Error, Result};
use crate::linalg::Rat;

const SLACK: f64 = 1e-7;

struct Reduced {
    form: QuadraticForm,
    u: Vec<Vec<i64>>,
    q: Vec<Vec<f64>>,
}

fn reduce(a: &QuadraticForm) -> Result<Reduced> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (form, u) = lll_form(a);
    let q = cholesky_q(&form).ok_or(Error::NotPositiveDefinite)?;
    Ok(Reduced { form, u, q })
}

// A[y] = Σ_i q_ii (y_i + Σ_{j>i} q_ij y_j)².
fn cholesky_q(a: &QuadraticForm) -> Option<Vec<Vec<f64>>> {
    let n = a.dim();
    let mut q: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a.at(i, j).to_f64().unwrap_or(f64::NAN)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
        if !(q[i][i] > 0.0) {
            return None;
        }
    }
    Some(q)
}

/// Visits every nonzero `y` (one per pair, last nonzero coordinate
/// positive) with `Q[y] ≤ bound`. The visitor may lower the bound.
fn fincke_pohst(q: &[Vec<f64>], bound: &mut f64, visit: &mut dyn FnMut(&[i64], &mut f64)) {
    let n = q.len();
    let mut y = vec![0i64; n];
    rec(q, n - 1, 0.0, true, &mut y, bound, visit);
}

fn rec(
    q: &[Vec<f64>],
    i: usize,
    partial: f64,
    upper_zero: bool,
    y: &mut Vec<i64>,
    bound: &mut f64,
    visit: &mut dyn FnMut(&[i64], &mut f64),
) {
    let n = q.len();
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * y[j] as f64).sum::<f64>();
    let rem = *bound - partial;
    if rem < 0.0 {
        return;
    }
    let r = (rem / q[i][i]).sqrt();
    let mut lo = (c - r).ceil() as i64;
    let hi = (c + r).floor() as i64;
    if upper_zero {
        lo = lo.max(0);
    }
    for v in lo..=hi {
        let d = v as f64 - c;
        let t = partial + q[i][i] * d * d;
        if t > *bound {
            continue;
        }
        y[i] = v;
        if i == 0 {
            if y.iter().any(|&x| x != 0) {
                visit(y, bound);
            }
        } else {
            rec(q, i - 1, t, upper_zero && v == 0, y, bound, visit);
        }
    }
    y[i] = 0;
}

fn widen(b: &Rat) -> f64 {
    let f = b.to_f64().unwrap_or(f64::INFINITY);
    f * (1.0 + SLACK) + 1e-12
}

/// Minimum of `A` over nonzero integer vectors and the vectors attaining it.
pub fn minimal_vectors(a: &QuadraticForm) -> Result<(Rat, VectorConfiguration)> {
    let red = reduce(a)?;
    let n = a.dim();
    let mut best = (0..n).map(|i| red.form.at(i, i).clone()).min().expect("nonempty form");
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut bound = widen(&best);
    fincke_pohst(&red.q, &mut bound, &mut |y, bound| {
        let v = red.form.eval(y);
        if v < best {
            best = v.clone();
            found.clear();
            *bound = widen(&best);
        }
        if v == best {
            found.push(y.to_vec());
        }
    });
    let vectors = found.iter().map(|y| apply(&red.u, y));
    Ok((best, VectorConfiguration::from_vectors(n, vectors)?))
}

/// All pairs `±v` with `A[v] ≤ bound`, with their values, sorted by
/// value and then by normalized vector.
pub fn short_vectors(a: &QuadraticForm, bound: &Rat) -> Result<Vec<(Vec<i64>, Rat)>> {
    let red = reduce(a)?;
    let mut out = Vec::new();
    let mut fb = widen(bound);
    fincke_pohst(&red.q, &mut fb, &mut |y, _| {
        let v = red.form.eval(y);
        if &v <= bound {
            let x = super::config::normalize_vector(&apply(&red.u, y));
            out.push((x, v));
        }
    });
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Pairs `±v` with `A[v] < bound`.
pub fn vectors_below(a: &QuadraticForm, bound: &Rat) -> Result<Vec<Vec<i64>>> {
    Ok(short_vectors(a, bound)?.into_iter().filter(|(_, v)| v < bound).map(|(x, _)| x).collect())
}

/// Exhaustive box scan, for testing: the minimum over `0 < |x|_∞ ≤ r`.
pub fn minimal_vectors_in_box(a: &QuadraticForm, r: i64) -> (Rat, Vec<Vec<i64>>) {
    let n = a.dim();
    let mut best: Option<Rat> = None;
    let mut out = Vec::new();
    let mut x = vec![-r; n];
    loop {
        if x.iter().any(|&c| c != 0) && super::config::is_normalized(&x) {
            let v = a.eval(&x);
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => out.push(x.clone()),
                _ => {
                    best = Some(v);
                    out.clear();
                    out.push(x.clone());
                }
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return (best.unwrap_or_else(Rat::zero), out);
            }
            x[k] += 1;
            if x[k] > r {
                x[k] = -r;
                k += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    fn d4() -> QuadraticForm {
        QuadraticForm::from_i64_rows(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ])
        .unwrap()
    }

    #[test]
    fn square_and_hexagonal() {
        let (m, v) = minimal_vectors(&QuadraticForm::identity(2)).unwrap();
        assert_eq!(m, rat_int(1));
        assert_eq!(v.vectors(), &[vec![0, 1], vec![1, 0]]);
        let hex = QuadraticForm::from_rows(&[vec![rat(1, 1), rat(1, 2)], vec![rat(1, 2), rat(1, 1)]]).unwrap();
        let (m, v) = minimal_vectors(&hex).unwrap();
        assert_eq!(m, rat_int(1));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn d4_has_twelve_pairs() {
        let (m, v) = minimal_vectors(&d4()).unwrap();
        assert_eq!(m, rat_int(2));
        assert_eq!(v.len(), 12);
        let (bm, bv) = minimal_vectors_in_box(&d4(), 2);
        assert_eq!(bm, m);
        assert_eq!(bv, v.vectors());
    }

    #[test]
    fn rejects_indefinite() {
        let f = QuadraticForm::from_i64_rows(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(matches!(minimal_vectors(&f), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn short_vectors_of_identity() {
        let sv = short_vectors(&QuadraticForm::identity(2), &rat_int(2)).unwrap();
        assert_eq!(sv.len(), 4);
        assert_eq!(vectors_below(&QuadraticForm::identity(2), &rat_int(2)).unwrap().len(), 2);
    }
}
