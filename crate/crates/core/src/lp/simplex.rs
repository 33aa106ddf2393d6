//! Two-phase tableau simplex for `min wᵗz, M z = b, z ≥ 0`, generic over
//! exact rationals and `f64`.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rat;

pub(crate) trait Scalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn lt(&self, o: &Self) -> bool;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

const EPS: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        self.abs() <= EPS
    }
    fn is_pos(&self) -> bool {
        *self > EPS
    }
    fn is_neg(&self) -> bool {
        *self < -EPS
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    Bland,
    Dantzig,
}

#[derive(Debug)]
pub(crate) enum StdOutcome<T> {
    Optimal { basis: Vec<usize>, z: Vec<T>, y: Vec<T> },
    /// `y` with `yᵗM ≤ 0` columnwise and `yᵗb > 0`.
    Infeasible { y: Vec<T> },
    /// `d ≥ 0`, `M d = 0`, `wᵗd < 0`.
    Unbounded { ray: Vec<T> },
    IterationLimit,
}

pub(crate) struct Tableau<T> {
    m: usize,
    n: usize,
    // m rows of n structural + m artificial columns, then rhs
    t: Vec<Vec<T>>,
    // reduced costs over the n + m columns, then minus the objective
    r: Vec<T>,
    basis: Vec<usize>,
    sign: Vec<bool>,
    rule: Rule,
}

impl<T: Scalar> Tableau<T> {
    /// `cols[k]` is column `k` of `M`.
    pub(crate) fn new(cols: &[Vec<T>], b: &[T], rule: Rule) -> Self {
        let m = b.len();
        let n = cols.len();
        let mut t = vec![vec![T::zero(); n + m + 1]; m];
        let mut sign = vec![false; m];
        for i in 0..m {
            let flip = b[i].is_neg();
            sign[i] = flip;
            for k in 0..n {
                t[i][k] = if flip { cols[k][i].neg() } else { cols[k][i].clone() };
            }
            t[i][n + i] = T::one();
            t[i][n + m] = if flip { b[i].neg() } else { b[i].clone() };
        }
        let basis = (n..n + m).collect();
        Tableau { m, n, t, r: Vec::new(), basis, sign, rule }
    }

    fn set_costs(&mut self, cost: &[T]) {
        let width = self.n + self.m + 1;
        let mut r: Vec<T> = (0..width).map(|k| if k < cost.len() { cost[k].clone() } else { T::zero() }).collect();
        for i in 0..self.m {
            let cb = if self.basis[i] < cost.len() { cost[self.basis[i]].clone() } else { T::zero() };
            if cb.is_zero() {
                continue;
            }
            for k in 0..width {
                if !self.t[i][k].is_zero() {
                    r[k] = r[k].sub(&cb.mul(&self.t[i][k]));
                }
            }
        }
        self.r = r;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.n + self.m + 1;
        let pv = self.t[row][col].clone();
        for k in 0..width {
            if !self.t[row][k].is_zero() {
                self.t[row][k] = self.t[row][k].div(&pv);
            }
        }
        self.t[row][col] = T::one();
        let prow = self.t[row].clone();
        for i in 0..self.m {
            if i == row {
                continue;
            }
            let f = self.t[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..width {
                if !prow[k].is_zero() {
                    self.t[i][k] = self.t[i][k].sub(&f.mul(&prow[k]));
                }
            }
            self.t[i][col] = T::zero();
        }
        let f = self.r[col].clone();
        if !f.is_zero() {
            for k in 0..width {
                if !prow[k].is_zero() {
                    self.r[k] = self.r[k].sub(&f.mul(&prow[k]));
                }
            }
            self.r[col] = T::zero();
        }
        self.basis[row] = col;
    }

    fn entering(&self, limit: usize) -> Option<usize> {
        match self.rule {
            Rule::Bland => (0..limit).find(|&k| self.r[k].is_neg()),
            Rule::Dantzig => {
                let mut best: Option<usize> = None;
                for k in 0..limit {
                    if self.r[k].is_neg() && best.is_none_or(|b| self.r[k].lt(&self.r[b])) {
                        best = Some(k);
                    }
                }
                best
            }
        }
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.n + self.m;
        let mut best: Option<(usize, T)> = None;
        for i in 0..self.m {
            if !self.t[i][col].is_pos() {
                continue;
            }
            let ratio = self.t[i][rhs].div(&self.t[i][col]);
            best = match best {
                None => Some((i, ratio)),
                Some((j, br)) => {
                    if ratio.lt(&br) || (!br.lt(&ratio) && self.basis[i] < self.basis[j]) {
                        Some((i, ratio))
                    } else {
                        Some((j, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    // Runs pivots until optimal; returns the unbounded column if any.
    fn run(&mut self, limit: usize, max_iter: usize) -> Result<Option<usize>, ()> {
        let mut it = 0;
        let mut degenerate = 0;
        while let Some(col) = self.entering(limit) {
            it += 1;
            if it > max_iter {
                return Err(());
            }
            let Some(row) = self.leaving(col) else {
                return Ok(Some(col));
            };
            if self.t[row][self.n + self.m].is_zero() {
                degenerate += 1;
                if degenerate > 50 {
                    self.rule = Rule::Bland;
                }
            }
            self.pivot(row, col);
        }
        Ok(None)
    }

    fn multipliers(&self, phase_one: bool) -> Vec<T> {
        (0..self.m)
            .map(|i| {
                let rc = &self.r[self.n + i];
                let y = if phase_one { T::one().sub(rc) } else { rc.neg() };
                if self.sign[i] {
                    y.neg()
                } else {
                    y
                }
            })
            .collect()
    }

    fn primal(&self) -> Vec<T> {
        let mut z = vec![T::zero(); self.n];
        for i in 0..self.m {
            if self.basis[i] < self.n {
                z[self.basis[i]] = self.t[i][self.n + self.m].clone();
            }
        }
        z
    }

    pub(crate) fn solve(mut self, cost: &[T], max_iter: usize) -> StdOutcome<T> {
        let (n, m) = (self.n, self.m);
        let phase1: Vec<T> = (0..n + m).map(|k| if k < n { T::zero() } else { T::one() }).collect();
        self.set_costs(&phase1);
        match self.run(n + m, max_iter) {
            Err(()) => return StdOutcome::IterationLimit,
            Ok(Some(_)) => unreachable!("phase one is bounded"),
            Ok(None) => {}
        }
        if self.r[n + m].is_neg() {
            return StdOutcome::Infeasible { y: self.multipliers(true) };
        }
        for i in 0..m {
            if self.basis[i] >= n {
                if let Some(k) = (0..n).find(|&k| !self.t[i][k].is_zero()) {
                    self.pivot(i, k);
                }
            }
        }
        self.set_costs(cost);
        match self.run(n, max_iter) {
            Err(()) => StdOutcome::IterationLimit,
            Ok(Some(col)) => {
                let mut ray = vec![T::zero(); n];
                ray[col] = T::one();
                for i in 0..m {
                    if self.basis[i] < n {
                        ray[self.basis[i]] = self.t[i][col].neg();
                    }
                }
                StdOutcome::Unbounded { ray }
            }
            Ok(None) => {
                let basis = self.basis.iter().copied().filter(|&k| k < n).collect();
                StdOutcome::Optimal { basis, z: self.primal(), y: self.multipliers(false) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    #[test]
    fn small_standard_form() {
        // min -z0 - z1 s.t. z0 + z2 = 1, z1 + z3 = 2
        let cols = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        let tab = Tableau::new(&cols, &[rat_int(1), rat_int(2)], Rule::Bland);
        match tab.solve(&[rat_int(-1), rat_int(-1), rat_int(0), rat_int(0)], 1000) {
            StdOutcome::Optimal { z, y, .. } => {
                assert_eq!(z, vec![rat_int(1), rat_int(2), rat_int(0), rat_int(0)]);
                assert_eq!(y, vec![rat_int(-1), rat_int(-1)]);
            }
            o => panic!("{o:?}"),
        }
    }
}
