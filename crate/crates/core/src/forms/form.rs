use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, parse_rat, rat_int, QMat, Rat};

/// Sign structure of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite and singular.
    Semidefinite,
    /// Carries a rational vector `x` with `A[x] < 0`.
    Indefinite(Vec<Rat>),
}

/// An exact symmetric rational matrix `A`, read as the form `x ↦ xᵗ A x`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    entries: QMat,
}

impl QuadraticForm {
    pub fn new(entries: QMat) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), got: entries.ncols() });
        }
        if entries.nrows() == 0 {
            return Err(Error::Invalid("empty form".into()));
        }
        let n = entries.nrows();
        for i in 0..n {
            for j in i + 1..n {
                if entries.at(i, j) != entries.at(j, i) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { entries })
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        Self::new(QMat::from_rows(rows))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(QMat::from_i64_rows(rows))
    }

    pub fn identity(n: usize) -> Self {
        QuadraticForm { entries: QMat::identity(n) }
    }

    /// `Σ x_i² + Σ_{i<j} x_i x_j`, a perfect form of type `A_n`.
    pub fn voronoi_first(n: usize) -> Self {
        let half = Rat::new(1.into(), 2.into());
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, if i == j { Rat::one() } else { half.clone() });
            }
        }
        QuadraticForm { entries: m }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &QMat {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        self.entries.at(i, j)
    }

    /// `vᵗ A v`.
    pub fn evaluate(&self, v: &[i64]) -> Result<Rat> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(self.eval(v))
    }

    pub(crate) fn eval(&self, v: &[i64]) -> Rat {
        let n = self.dim();
        let mut acc = Rat::zero();
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row = Rat::zero();
            for j in 0..n {
                if v[j] != 0 {
                    row += self.entries.at(i, j) * rat_int(v[j]);
                }
            }
            acc += row * rat_int(v[i]);
        }
        acc
    }

    pub fn eval_rat(&self, v: &[Rat]) -> Rat {
        let av = self.entries.mul_vec(v);
        av.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `uᵗ A w`.
    pub fn bilinear(&self, u: &[i64], w: &[i64]) -> Rat {
        let n = self.dim();
        let mut acc = Rat::zero();
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if w[j] != 0 {
                    acc += self.entries.at(i, j) * rat_int(u[i] * w[j]);
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let n = self.dim();
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.at(i, j) * c);
            }
        }
        QuadraticForm { entries: m }
    }

    /// `Pᵗ A P` for an integer matrix `P` (row-major).
    pub fn transform(&self, p: &[Vec<i64>]) -> Self {
        let pm = QMat::from_i64_rows(p);
        let entries = pm.transpose().mul(&self.entries).mul(&pm);
        QuadraticForm { entries }
    }

    pub fn classify(&self) -> Definiteness {
        let n = self.dim();
        let mut s = self.entries.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let mut eliminated: Vec<usize> = Vec::new();
        loop {
            if active.is_empty() {
                return Definiteness::PositiveDefinite;
            }
            if let Some(&i) = active.iter().find(|&&i| s.at(i, i).is_negative()) {
                let mut y = vec![Rat::zero(); n];
                y[i] = Rat::one();
                return Definiteness::Indefinite(self.lift(&eliminated, &active, y));
            }
            if let Some(pos) = active.iter().position(|&i| s.at(i, i).is_positive()) {
                let p = active.remove(pos);
                let pv = s.at(p, p).clone();
                for &j in &active {
                    let f = s.at(j, p) / &pv;
                    if f.is_zero() {
                        continue;
                    }
                    for &k in &active {
                        let v = s.at(j, k) - &f * s.at(p, k);
                        s.set(j, k, v);
                    }
                }
                eliminated.push(p);
                continue;
            }
            for (a, &i) in active.iter().enumerate() {
                for &j in &active[a + 1..] {
                    let sij = s.at(i, j);
                    if !sij.is_zero() {
                        let mut y = vec![Rat::zero(); n];
                        y[i] = Rat::one();
                        y[j] = if sij.is_positive() { -Rat::one() } else { Rat::one() };
                        return Definiteness::Indefinite(self.lift(&eliminated, &active, y));
                    }
                }
            }
            return Definiteness::Semidefinite;
        }
    }

    // Extends a direction on the non-eliminated coordinates so that the form
    // value equals the Schur-complement value.
    fn lift(&self, eliminated: &[usize], active: &[usize], mut y: Vec<Rat>) -> Vec<Rat> {
        if eliminated.is_empty() {
            return y;
        }
        let e = eliminated.len();
        let mut aee = QMat::zeros(e, e);
        let mut rhs = vec![Rat::zero(); e];
        for (a, &i) in eliminated.iter().enumerate() {
            for (b, &j) in eliminated.iter().enumerate() {
                aee.set(a, b, self.at(i, j).clone());
            }
            for &k in active {
                if !y[k].is_zero() {
                    rhs[a] -= self.at(i, k) * &y[k];
                }
            }
        }
        let xe = aee.solve(&rhs).expect("eliminated block is positive definite");
        for (a, &i) in eliminated.iter().enumerate() {
            y[i] = xe[a].clone();
        }
        y
    }

    pub fn is_positive_definite(&self) -> bool {
        self.classify() == Definiteness::PositiveDefinite
    }

    pub fn determinant(&self) -> Rat {
        self.entries.det()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        nalgebra::DMatrix::from_fn(n, n, |i, j| self.at(i, j).to_f64().unwrap_or(f64::NAN))
    }

    /// Form file text: `n`, then `n` rows of exact rationals.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut s = format!("{n}\n");
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| fmt_rat(self.at(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty form file".into() })?;
        let n: usize = first.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad dimension `{first}`") })?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: ln, msg: "missing form row".into() })?;
            let row: Option<Vec<Rat>> = l.split_whitespace().map(parse_rat).collect();
            let row = row.ok_or(Error::Parse { line: ln, msg: format!("bad rational in `{l}`") })?;
            if row.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} entries, got {}", row.len()) });
            }
            rows.push(row);
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let rows: Vec<String> = (0..n)
            .map(|i| (0..n).map(|j| fmt_rat(self.at(i, j))).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "Form[{}]", rows.join("; "))
    }
}
