//! Dense exact linear algebra over `Q` and `Z`.
//!
//! Everything here is exact. Matrices are small (at most a few hundred
//! rows), so dense row-major storage and plain Gaussian elimination are
//! used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least common multiple of the denominators of `v`.
pub fn common_denominator(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. Returns the zero vector unchanged.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn bigint_vec_to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().cloned());
        }
        QMat { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
        if conv.is_empty() {
            return QMat::zeros(0, 0);
        }
        Self::from_rows(&conv)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let idx = r * self.cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.at(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.data[r * self.cols + j].clone();
                    if rv.is_zero() {
                        continue;
                    }
                    let idx = i * self.cols + j;
                    self.data[idx] -= &f * rv;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m.at(row, f).clone();
                }
                x
            })
            .collect()
    }

    /// Solves `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut aug = QMat::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some((0..n).map(|i| aug.at(i, n).clone()).collect())
    }

    /// Solves `M x = b` for any consistent system, returning one solution.
    pub fn solve_any(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.cols;
        let mut aug = QMat::zeros(self.rows, n + 1);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let piv = aug.rref_in_place();
        if piv.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Rat::zero(); n];
        for (row, &pc) in piv.iter().enumerate() {
            x[pc] = aug.at(row, n).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m.at(c, c).clone();
            det *= &pv;
            for i in c + 1..n {
                let f = m.at(i, c) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.at(c, j) * &f;
                    let idx = i * n + j;
                    m.data[idx] -= v;
                }
            }
        }
        det
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_bigint(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    let conv: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    det_bigint(&conv)
}

/// Rank of an integer matrix over `Q`.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMat::from_i64_rows(rows).rank()
}

/// A `Z`-basis of the saturated integer kernel `{x in Z^n : M x = 0}` of an
/// integer matrix with `ncols` columns.
///
/// Column operations by extended gcd bring `M` to column echelon form while
/// recording the unimodular transform; the transform columns that map to
/// zero span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // Columns stored as vectors: first m entries from M, then n entries of U.
    let mut cols: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut c: Vec<BigInt> = (0..m).map(|i| rows[i][j].clone()).collect();
            c.extend((0..ncols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut next = 0usize;
    for i in 0..m {
        if next == ncols {
            break;
        }
        // Euclid across columns next.. to concentrate row i in column `next`.
        loop {
            let nz: Vec<usize> = (next..ncols).filter(|&j| !cols[j][i].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by(|&&a, &&b| cols[a][i].abs().cmp(&cols[b][i].abs())).unwrap();
            cols.swap(next, piv);
            let mut done = true;
            for j in next + 1..ncols {
                if cols[j][i].is_zero() {
                    continue;
                }
                let q = cols[j][i].div_floor(&cols[next][i]);
                let pc = cols[next].clone();
                for (a, b) in cols[j].iter_mut().zip(pc.iter()) {
                    *a -= &q * b;
                }
                if !cols[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !cols[next][i].is_zero() {
            next += 1;
        }
    }
    cols[next..].iter().map(|c| c[m..].to_vec()).collect()
}

pub fn integer_kernel_i64(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let conv: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    integer_kernel(&conv, ncols)
}

/// Integer kernel of a rational matrix (rows are scaled to integers first).
pub fn integer_kernel_rat(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<BigInt>> {
    let conv: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let den = common_denominator(r);
            r.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    integer_kernel(&conv, ncols)
}

/// Hermite normal form (row style, upper triangular, positive pivots,
/// entries above pivots reduced into `[0, pivot)`) of the lattice spanned by
/// the rows. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by(|&&a, &&b| m[a][c].abs().cmp(&m[b][c].abs())).unwrap();
            m.swap(r, piv);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pr = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(pr.iter()) {
                    *a -= &q * b;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if q.is_zero() {
                    continue;
                }
                let pr = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(pr.iter()) {
                    *a -= &q * b;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-7/4", "0", "12/8"] {
            let q = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&q)).unwrap(), q);
        }
        assert_eq!(fmt_rat(&parse_rat("12/8").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn determinants_agree() {
        let rows = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det_i64(&rows), BigInt::from(4));
        assert_eq!(QMat::from_i64_rows(&rows).det(), rat_int(4));
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert!(det_i64(&sing).is_zero());
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(det_i64(&swap), BigInt::from(-1));
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0: kernel lattice has determinant 1 basis like (2,-1,0),(3,0,-1)
        let k = integer_kernel(&[bi(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + BigInt::from(2) * &v[1] + BigInt::from(3) * &v[2]).is_zero());
        }
        // saturation: the 2x2 minors of the basis have gcd 1
        let m = |a: usize, b: usize| &k[0][a] * &k[1][b] - &k[0][b] * &k[1][a];
        let g = m(0, 1).gcd(&m(0, 2)).gcd(&m(1, 2));
        assert!(g.is_one());
        // 2x = 0 over Z has kernel 0 in that coordinate
        let k2 = integer_kernel(&[bi(&[2, 0])], 2);
        assert_eq!(k2, vec![bi(&[0, 1])]);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = QMat::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        let a = QMat::from_i64_rows(&[vec![2, 1], vec![1, 3]]);
        let x = a.solve(&[rat_int(3), rat_int(4)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
    }

    #[test]
    fn hnf_of_index_two_lattice() {
        let h = hermite_normal_form(&[bi(&[2, 0]), bi(&[1, 1]), bi(&[0, 2])]);
        assert_eq!(h, vec![bi(&[1, 1]), bi(&[0, 2])]);
    }
}
