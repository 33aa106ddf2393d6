//! Exact rational linear programming with dual certificates.
//!
//! Problems have the shape
//!
//! ```text
//! minimize φ(x) = c·x + c₀
//! subject to ψ_j(x) = a_j·x − e_j = 0, φ_i(x) = g_i·x + h_i ≥ 0,
//! ```
//!
//! with free variables. The solver works on the dual
//! `max m` with `φ ≡ m + Σ β_i φ_i + Σ μ_j ψ_j`, `β ≥ 0`, in standard form,
//! and recovers the primal point from the simplex multipliers.

mod simplex;

use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, parse_rat, QMat, Rat};
use simplex::{Rule, StdOutcome, Tableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl Affine {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        Affine { coeffs, constant }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut s = self.constant.clone();
        for (a, b) in self.coeffs.iter().zip(x) {
            if !a.is_zero() && !b.is_zero() {
                s += a * b;
            }
        }
        s
    }

    fn linear(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    nvars: usize,
    objective: Affine,
    equalities: Vec<Affine>,
    inequalities: Vec<Affine>,
}

impl LinearProgram {
    pub fn new(nvars: usize, objective: Affine) -> Result<Self> {
        if objective.coeffs.len() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, got: objective.coeffs.len() });
        }
        Ok(LinearProgram { nvars, objective, equalities: Vec::new(), inequalities: Vec::new() })
    }

    /// `f(x) = 0`.
    pub fn add_equality(&mut self, f: Affine) -> Result<()> {
        self.check(&f)?;
        self.equalities.push(f);
        Ok(())
    }

    /// `f(x) ≥ 0`.
    pub fn add_inequality(&mut self, f: Affine) -> Result<()> {
        self.check(&f)?;
        self.inequalities.push(f);
        Ok(())
    }

    fn check(&self, f: &Affine) -> Result<()> {
        if f.coeffs.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: f.coeffs.len() });
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn objective(&self) -> &Affine {
        &self.objective
    }

    pub fn equalities(&self) -> &[Affine] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Affine] {
        &self.inequalities
    }

    fn with_zero_objective(&self) -> Self {
        LinearProgram {
            nvars: self.nvars,
            objective: Affine::new(vec![Rat::zero(); self.nvars], Rat::zero()),
            equalities: self.equalities.clone(),
            inequalities: self.inequalities.clone(),
        }
    }

    /// Line-based dump: `min`, objective line, `st`, one line per
    /// constraint (`ge` or `eq`, constant, coefficients), `end`.
    pub fn to_text(&self) -> String {
        let mut s = format!("vars {}\nmin\n", self.nvars);
        let line = |f: &Affine| {
            let mut l = fmt_rat(&f.constant);
            for c in &f.coeffs {
                l.push(' ');
                l.push_str(&fmt_rat(c));
            }
            l
        };
        writeln!(s, "{}", line(&self.objective)).unwrap();
        s.push_str("st\n");
        for f in &self.equalities {
            writeln!(s, "eq {}", line(f)).unwrap();
        }
        for f in &self.inequalities {
            writeln!(s, "ge {}", line(f)).unwrap();
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let (ln, l) = lines.next().ok_or(bad(0, "empty"))?;
        let nvars: usize = l
            .strip_prefix("vars ")
            .and_then(|x| x.trim().parse().ok())
            .ok_or(bad(ln, "expected `vars <n>`"))?;
        let affine = |ln: usize, body: &str| -> Result<Affine> {
            let v: Option<Vec<Rat>> = body.split_whitespace().map(parse_rat).collect();
            let v = v.ok_or(bad(ln, "bad rational"))?;
            if v.len() != nvars + 1 {
                return Err(bad(ln, "wrong number of coefficients"));
            }
            Ok(Affine::new(v[1..].to_vec(), v[0].clone()))
        };
        let (ln, l) = lines.next().ok_or(bad(ln, "missing `min`"))?;
        if l != "min" {
            return Err(bad(ln, "expected `min`"));
        }
        let (ln, l) = lines.next().ok_or(bad(ln, "missing objective"))?;
        let mut lp = LinearProgram::new(nvars, affine(ln, l)?)?;
        let (ln, l) = lines.next().ok_or(bad(ln, "missing `st`"))?;
        if l != "st" {
            return Err(bad(ln, "expected `st`"));
        }
        for (ln, l) in lines {
            if l == "end" {
                return Ok(lp);
            }
            if let Some(body) = l.strip_prefix("eq ") {
                lp.add_equality(affine(ln, body)?)?;
            } else if let Some(body) = l.strip_prefix("ge ") {
                lp.add_inequality(affine(ln, body)?)?;
            } else {
                return Err(bad(ln, "expected `eq`, `ge` or `end`"));
            }
        }
        Err(bad(0, "missing `end`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `φ ≡ m + Σ β_i φ_i + Σ μ_j ψ_j` with `β ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSolution {
    pub m: Rat,
    pub beta: Vec<Rat>,
    pub mu: Vec<Rat>,
}

/// `Σ β_i φ_i + Σ μ_j ψ_j ≡ −δ` with `β ≥ 0`, `δ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub beta: Vec<Rat>,
    pub mu: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat, dual: DualSolution },
    Infeasible { certificate: FarkasCertificate },
    /// `x` feasible; along `ray` every `φ_i` is nondecreasing, every `ψ_j`
    /// constant, and `φ` strictly decreasing.
    Unbounded { x: Vec<Rat>, ray: Vec<Rat> },
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible { .. } => LpStatus::Infeasible,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Checks a returned outcome by exact substitution.
pub fn verify(lp: &LinearProgram, out: &LpOutcome) -> Result<()> {
    let fail = |m: &str| Err(Error::Certificate(m.to_string()));
    let feasible = |x: &[Rat]| {
        x.len() == lp.nvars
            && lp.equalities.iter().all(|f| f.eval(x).is_zero())
            && lp.inequalities.iter().all(|f| !f.eval(x).is_negative())
    };
    // Σ β_i φ_i + Σ μ_j ψ_j as an affine function
    let combo = |beta: &[Rat], mu: &[Rat]| -> Option<Affine> {
        if beta.len() != lp.inequalities.len() || mu.len() != lp.equalities.len() {
            return None;
        }
        if beta.iter().any(|b| b.is_negative()) {
            return None;
        }
        let mut acc = Affine::new(vec![Rat::zero(); lp.nvars], Rat::zero());
        for (w, f) in beta.iter().zip(&lp.inequalities).chain(mu.iter().zip(&lp.equalities)) {
            if w.is_zero() {
                continue;
            }
            for (a, c) in acc.coeffs.iter_mut().zip(&f.coeffs) {
                *a += w * c;
            }
            acc.constant += w * &f.constant;
        }
        Some(acc)
    };
    match out {
        LpOutcome::Optimal { x, value, dual } => {
            if !feasible(x) {
                return fail("optimal point infeasible");
            }
            if &lp.objective.eval(x) != value {
                return fail("objective value mismatch");
            }
            let Some(c) = combo(&dual.beta, &dual.mu) else {
                return fail("malformed dual");
            };
            if c.coeffs != lp.objective.coeffs || c.constant + &dual.m != lp.objective.constant {
                return fail("dual identity does not hold");
            }
            if &dual.m != value {
                return fail("duality gap");
            }
            Ok(())
        }
        LpOutcome::Infeasible { certificate } => {
            let Some(c) = combo(&certificate.beta, &certificate.mu) else {
                return fail("malformed Farkas certificate");
            };
            if c.coeffs.iter().any(|a| !a.is_zero()) || !c.constant.is_negative() {
                return fail("Farkas identity does not hold");
            }
            Ok(())
        }
        LpOutcome::Unbounded { x, ray } => {
            if !feasible(x) || ray.len() != lp.nvars {
                return fail("unbounded base point infeasible");
            }
            if lp.equalities.iter().any(|f| !f.linear(ray).is_zero())
                || lp.inequalities.iter().any(|f| f.linear(ray).is_negative())
                || !lp.objective.linear(ray).is_negative()
            {
                return fail("ray does not certify unboundedness");
            }
            Ok(())
        }
    }
}

// Dual standard form: columns β_i, μ⁺_j, μ⁻_j; rows indexed by variables.
struct DualForm {
    cols: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    cost: Vec<Rat>,
    p: usize,
    q: usize,
}

fn dual_form(lp: &LinearProgram) -> DualForm {
    let p = lp.inequalities.len();
    let q = lp.equalities.len();
    let mut cols = Vec::with_capacity(p + 2 * q);
    let mut cost = Vec::with_capacity(p + 2 * q);
    for f in &lp.inequalities {
        cols.push(f.coeffs.clone());
        cost.push(f.constant.clone());
    }
    for f in &lp.equalities {
        cols.push(f.coeffs.clone());
        cost.push(f.constant.clone());
    }
    for f in &lp.equalities {
        cols.push(f.coeffs.iter().map(|c| -c).collect());
        cost.push(-&f.constant);
    }
    DualForm { cols, b: lp.objective.coeffs.clone(), cost, p, q }
}

fn split_dual(df: &DualForm, z: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let beta = z[..df.p].to_vec();
    let mu = (0..df.q).map(|j| &z[df.p + j] - &z[df.p + df.q + j]).collect();
    (beta, mu)
}

fn optimal_from(lp: &LinearProgram, df: &DualForm, z: &[Rat], y: &[Rat]) -> LpOutcome {
    let x: Vec<Rat> = y.iter().map(|v| -v).collect();
    let (beta, mu) = split_dual(df, z);
    let value = lp.objective.eval(&x);
    let m = value.clone();
    LpOutcome::Optimal { x, value, dual: DualSolution { m, beta, mu } }
}

fn checked(lp: &LinearProgram, out: LpOutcome) -> LpOutcome {
    if let Err(e) = verify(lp, &out) {
        panic!("LP certificate failed verification: {e}\n{}", lp.to_text());
    }
    out
}

/// Exact two-phase simplex with Bland's rule.
pub fn solve_exact(lp: &LinearProgram) -> LpOutcome {
    let df = dual_form(lp);
    let tab = Tableau::new(&df.cols, &df.b, Rule::Bland);
    match tab.solve(&df.cost, usize::MAX) {
        StdOutcome::Optimal { z, y, .. } => checked(lp, optimal_from(lp, &df, &z, &y)),
        StdOutcome::Unbounded { ray, .. } => {
            let (beta, mu) = split_dual(&df, &ray);
            checked(lp, LpOutcome::Infeasible { certificate: FarkasCertificate { beta, mu } })
        }
        StdOutcome::Infeasible { y } => {
            // No dual point: the primal is infeasible or unbounded along -y.
            let ray: Vec<Rat> = y.iter().map(|v| -v).collect();
            if lp.objective.coeffs.iter().all(|c| c.is_zero()) {
                unreachable!("zero objective always has a dual point");
            }
            match solve_exact(&lp.with_zero_objective()) {
                LpOutcome::Optimal { x, .. } => checked(lp, LpOutcome::Unbounded { x, ray }),
                other => checked(lp, other),
            }
        }
        StdOutcome::IterationLimit => unreachable!("no iteration limit in exact mode"),
    }
}

/// Solves in floating point, then reconstructs and verifies the final
/// basis exactly; falls back to [`solve_exact`] when that fails.
pub fn solve_with_float_presolve(lp: &LinearProgram) -> LpOutcome {
    match float_attempt(lp) {
        Some(out) => checked(lp, out),
        None => solve_exact(lp),
    }
}

fn float_attempt(lp: &LinearProgram) -> Option<LpOutcome> {
    let df = dual_form(lp);
    let to_f = |q: &Rat| q.to_f64().filter(|v| v.is_finite());
    let cols: Option<Vec<Vec<f64>>> = df.cols.iter().map(|c| c.iter().map(to_f).collect()).collect();
    let b: Option<Vec<f64>> = df.b.iter().map(to_f).collect();
    let cost: Option<Vec<f64>> = df.cost.iter().map(to_f).collect();
    let (cols, b, cost) = (cols?, b?, cost?);
    let max_iter = 50 * (cols.len() + b.len()) + 1000;
    let basis = match Tableau::new(&cols, &b, Rule::Dantzig).solve(&cost, max_iter) {
        StdOutcome::Optimal { basis, .. } => basis,
        _ => return None,
    };
    exact_from_basis(lp, &df, &basis)
}

fn exact_from_basis(lp: &LinearProgram, df: &DualForm, basis: &[usize]) -> Option<LpOutcome> {
    let m = df.b.len();
    let k = basis.len();
    if k == 0 && df.b.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // M_S z_S = b
    let ms = QMat::from_rows(&(0..m).map(|i| basis.iter().map(|&c| df.cols[c][i].clone()).collect()).collect::<Vec<_>>());
    let zs = if k == 0 { Vec::new() } else { ms.solve_any(&df.b)? };
    if zs.iter().any(|v| v.is_negative()) {
        return None;
    }
    if k > 0 && ms.rank() < k {
        return None;
    }
    // M_Sᵗ y = w_S
    let y = if k == 0 {
        vec![Rat::zero(); m]
    } else {
        let mst = ms.transpose();
        let ws: Vec<Rat> = basis.iter().map(|&c| df.cost[c].clone()).collect();
        mst.solve_any(&ws)?
    };
    let mut z = vec![Rat::zero(); df.cols.len()];
    for (&c, v) in basis.iter().zip(zs) {
        z[c] = v;
    }
    for (col, w) in df.cols.iter().zip(&df.cost) {
        let yc: Rat = col.iter().zip(&y).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum();
        if (w - yc).is_negative() {
            return None;
        }
    }
    let out = optimal_from(lp, df, &z, &y);
    verify(lp, &out).ok().map(|_| out)
}

/// One-line human-readable summary of an outcome.
pub fn describe(out: &LpOutcome) -> String {
    match out {
        LpOutcome::Optimal { value, .. } => format!("optimal {}", fmt_rat(value)),
        LpOutcome::Infeasible { .. } => "infeasible".into(),
        LpOutcome::Unbounded { .. } => "unbounded".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    fn aff(c: &[i64], k: i64) -> Affine {
        Affine::new(c.iter().map(|&v| rat_int(v)).collect(), rat_int(k))
    }

    #[test]
    fn minimize_x_above_one() {
        let mut lp = LinearProgram::new(1, aff(&[1], 0)).unwrap();
        lp.add_inequality(aff(&[1], -1)).unwrap();
        for out in [solve_exact(&lp), solve_with_float_presolve(&lp)] {
            match &out {
                LpOutcome::Optimal { x, value, dual } => {
                    assert_eq!(x, &vec![rat_int(1)]);
                    assert_eq!(value, &rat_int(1));
                    assert_eq!(dual.m, rat_int(1));
                }
                o => panic!("{o:?}"),
            }
        }
    }

    #[test]
    fn infeasible_pair() {
        let mut lp = LinearProgram::new(1, aff(&[1], 0)).unwrap();
        lp.add_inequality(aff(&[1], -1)).unwrap();
        lp.add_inequality(aff(&[-1], 0)).unwrap();
        match solve_exact(&lp) {
            LpOutcome::Infeasible { certificate } => {
                assert_eq!(certificate.beta, vec![rat_int(1), rat_int(1)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(1, aff(&[-1], 0)).unwrap();
        lp.add_inequality(aff(&[1], 0)).unwrap();
        match solve_exact(&lp) {
            LpOutcome::Unbounded { ray, .. } => assert!(ray[0].is_positive()),
            o => panic!("{o:?}"),
        }
        assert_eq!(solve_with_float_presolve(&lp).status(), LpStatus::Unbounded);
    }

    #[test]
    fn equalities() {
        // min x + y, x - y = 1, x ≥ 0, y ≥ 0
        let mut lp = LinearProgram::new(2, aff(&[1, 1], 0)).unwrap();
        lp.add_equality(aff(&[1, -1], -1)).unwrap();
        lp.add_inequality(aff(&[1, 0], 0)).unwrap();
        lp.add_inequality(aff(&[0, 1], 0)).unwrap();
        let out = solve_exact(&lp);
        assert_eq!(out.value(), Some(&rat_int(1)));
        assert_eq!(solve_with_float_presolve(&lp).value(), Some(&rat_int(1)));
    }

    #[test]
    fn text_round_trip() {
        let mut lp = LinearProgram::new(2, aff(&[1, 1], 3)).unwrap();
        lp.add_equality(aff(&[1, -1], -1)).unwrap();
        lp.add_inequality(aff(&[2, 0], 5)).unwrap();
        assert_eq!(LinearProgram::parse(&lp.to_text()).unwrap(), lp);
    }

    #[test]
    fn mutated_certificate_rejected() {
        let mut lp = LinearProgram::new(1, aff(&[1], 0)).unwrap();
        lp.add_inequality(aff(&[1], -1)).unwrap();
        let mut out = solve_exact(&lp);
        if let LpOutcome::Optimal { dual, .. } = &mut out {
            dual.beta[0] = rat_int(2);
        }
        assert!(verify(&lp, &out).is_err());
    }
}
