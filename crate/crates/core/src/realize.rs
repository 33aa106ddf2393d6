//! Realizability of vector configurations as minimal-vector sets.
//!
//! The linear program minimizes `λ` subject to `A[v] = λ` on `V` and
//! `A[u] ≥ 1` on a finite pool `S`. The equalities are eliminated by
//! parametrizing their solution space (inside the forms invariant under
//! the stabilizer of `V`), so the program has free variables and one
//! inequality per pool vector.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::equiv::{automorphism_group, IntMat};
use crate::error::{Error, Result};
use crate::forms::config::{apply, normalize_vector, VectorConfiguration};
use crate::forms::form::{Definiteness, QuadraticForm};
use crate::forms::lll::lll_reduce;
use crate::forms::minvec::{minimal_vectors, vectors_below};
use crate::forms::perfection::{perfection_rank, sym_dim, sym_index, sym_vec};
use crate::linalg::{bigint_vec_to_i64, integer_kernel_rat, primitive_integer_vector, rat_int, QMat, Rat};
use crate::lp::{solve_exact, solve_with_float_presolve, Affine, LinearProgram, LpOutcome};

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub max_iterations: usize,
    pub max_pool: usize,
    pub use_symmetry: bool,
    pub float_presolve: bool,
    pub lll: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { max_iterations: 200, max_pool: 20_000, use_symmetry: true, float_presolve: true, lll: true }
    }
}

/// Pool vectors `u` carrying the constraints `A[u] ≥ 1`, normalized up to
/// sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintPool {
    vectors: BTreeSet<Vec<i64>>,
}

impl ConstraintPool {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.vectors.iter()
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.vectors.contains(&normalize_vector(u))
    }

    /// Inserts `u` unless it is zero or a member of `±V`.
    pub fn insert(&mut self, u: &[i64], v: &VectorConfiguration) -> bool {
        if u.iter().all(|&x| x == 0) || v.contains(u) {
            return false;
        }
        self.vectors.insert(normalize_vector(u))
    }
}

/// `{x ± e_i ± e_j : x ∈ V}` without `0` and `±V`.
pub fn initial_pool(v: &VectorConfiguration) -> ConstraintPool {
    let n = v.dim();
    let mut pool = ConstraintPool::default();
    for x in v.vectors() {
        for i in 0..n {
            for j in 0..n {
                for si in [-1, 1] {
                    for sj in [-1, 1] {
                        let mut u = x.clone();
                        u[i] += si;
                        u[j] += sj;
                        pool.insert(&u, v);
                    }
                }
            }
        }
    }
    pool
}

/// Coordinates of `A` on the basis `(E_ij)_{i ≤ j}` with `A[x] = a · sym_vec(x)`.
fn form_to_sym(a: &QuadraticForm) -> Vec<Rat> {
    let n = a.dim();
    let mut out = Vec::with_capacity(sym_dim(n));
    for i in 0..n {
        for j in i..n {
            out.push(if i == j { a.at(i, i).clone() } else { a.at(i, j) * rat_int(2) });
        }
    }
    out
}

fn sym_to_form(n: usize, a: &[Rat]) -> QuadraticForm {
    let mut m = QMat::zeros(n, n);
    let half = Rat::new(1.into(), 2.into());
    for i in 0..n {
        for j in i..n {
            let c = &a[sym_index(n, i, j)];
            if i == j {
                m.set(i, i, c.clone());
            } else {
                m.set(i, j, c * &half);
                m.set(j, i, c * &half);
            }
        }
    }
    QuadraticForm::new(m).expect("symmetric by construction")
}

fn dot_sym(a: &[Rat], x: &[i64]) -> Rat {
    a.iter().zip(sym_vec(x)).filter(|(c, s)| *s != 0 && !c.is_zero()).map(|(c, s)| c * rat_int(s)).sum()
}

/// Basis of the forms `A` with `gᵗ A g = A` for every automorphism `g` of
/// `V`. For non-spanning `V` the full space is returned.
pub fn symmetry_restrict(v: &VectorConfiguration) -> Result<Vec<QuadraticForm>> {
    let n = v.dim();
    if !v.is_well_rounded() {
        return Ok(full_space(n));
    }
    let group = automorphism_group(v)?;
    Ok(invariant_forms(n, &group.generators))
}

fn full_space(n: usize) -> Vec<QuadraticForm> {
    (0..sym_dim(n))
        .map(|k| {
            let mut a = vec![Rat::zero(); sym_dim(n)];
            a[k] = Rat::one();
            sym_to_form(n, &a)
        })
        .collect()
}

pub fn invariant_forms(n: usize, generators: &[IntMat]) -> Vec<QuadraticForm> {
    let d = sym_dim(n);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // column k: gᵗ E_k g − E_k in sym coordinates of the matrix entries
    for g in generators {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        for i in 0..n {
            for j in i..n {
                let mut e = QMat::zeros(n, n);
                e.set(i, j, Rat::one());
                e.set(j, i, Rat::one());
                let gm = QMat::from_i64_rows(g);
                let img = gm.transpose().mul(&e).mul(&gm);
                let mut col = Vec::with_capacity(d);
                for a in 0..n {
                    for b in a..n {
                        col.push(img.at(a, b) - e.at(a, b));
                    }
                }
                cols.push(col);
            }
        }
        for r in 0..d {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    if rows.is_empty() {
        return full_space(n);
    }
    QMat::from_rows(&rows)
        .nullspace()
        .into_iter()
        .map(|y| {
            // y gives symmetric matrix entries Y_ij = Y_ji = y_ij
            let mut m = QMat::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let c = y[sym_index(n, i, j)].clone();
                    m.set(i, j, c.clone());
                    m.set(j, i, c);
                }
            }
            QuadraticForm::new(m).expect("symmetric")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The equalities `A[v] = λ` force `λ = 0`.
    ForcedZero,
    /// `λ_opt ≥ 1` over the pool, certified by `A[v_1] = Σ β_u A[u]` on the
    /// whole parameter space with `Σ β_u = λ_opt`.
    LowerBound { lambda: Rat, pool: Vec<Vec<i64>>, beta: Vec<Rat>, space: Vec<QuadraticForm> },
    /// No form in the parameter space satisfies the pool constraints.
    Infeasible { pool: Vec<Vec<i64>>, beta: Vec<Rat>, space: Vec<QuadraticForm> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizabilityVerdict {
    Realizable { witness: QuadraticForm },
    NotRealizable(Refutation),
}

impl RealizabilityVerdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, RealizabilityVerdict::Realizable { .. })
    }
}

#[derive(Clone, Debug)]
pub struct RealizabilityReport {
    pub verdict: RealizabilityVerdict,
    pub iterations: usize,
    pub pool_size: usize,
}

pub fn test_realizability(v: &VectorConfiguration) -> Result<RealizabilityReport> {
    test_realizability_with(v, &RealizeOptions::default())
}

pub fn test_realizability_with(v: &VectorConfiguration, opts: &RealizeOptions) -> Result<RealizabilityReport> {
    if v.is_empty() {
        return Err(Error::Invalid("empty configuration".into()));
    }
    let (vr, p) = reduce(v, opts);
    let mut engine = Engine::new(vr.clone(), opts, false)?;
    let out = engine.run()?;
    let verdict = match out {
        EngineResult::Realizable(w, _) => {
            let witness = w.transform(&p);
            let (m, mv) = minimal_vectors(&witness)?;
            assert!(m.is_one() && &mv == v, "realizability witness failed verification");
            RealizabilityVerdict::Realizable { witness }
        }
        EngineResult::Refuted(r) => RealizabilityVerdict::NotRealizable(transport_refutation(r, &p)),
    };
    let verdict_checked = verdict;
    if let RealizabilityVerdict::NotRealizable(r) = &verdict_checked {
        verify_refutation(v, r)?;
    }
    Ok(RealizabilityReport { verdict: verdict_checked, iterations: engine.iterations, pool_size: engine.pool.len() })
}

/// A realizable `W ⊇ V` with the perfection rank of `V`, if one exists.
pub fn extend_to_realizable(v: &VectorConfiguration) -> Result<Option<VectorConfiguration>> {
    extend_to_realizable_with(v, &RealizeOptions::default())
}

pub fn extend_to_realizable_with(v: &VectorConfiguration, opts: &RealizeOptions) -> Result<Option<VectorConfiguration>> {
    if v.is_empty() {
        return Err(Error::Invalid("empty configuration".into()));
    }
    let (vr, p) = reduce(v, opts);
    let pinv = crate::equiv::unimodular_inverse(&p).expect("unimodular");
    let mut engine = Engine::new(vr, opts, true)?;
    match engine.run()? {
        EngineResult::Realizable(_, w) => Ok(Some(w.transform(&pinv))),
        EngineResult::Refuted(_) => Ok(None),
    }
}

fn reduce(v: &VectorConfiguration, opts: &RealizeOptions) -> (VectorConfiguration, IntMat) {
    if opts.lll {
        lll_reduce(v)
    } else {
        (v.clone(), crate::equiv::identity(v.dim()))
    }
}

// Reduced coordinates u' = P u; original u = P⁻¹ u'. Forms: A = Pᵗ A' P.
fn transport_refutation(r: Refutation, p: &IntMat) -> Refutation {
    let pinv = crate::equiv::unimodular_inverse(p).expect("unimodular");
    let back = |pool: Vec<Vec<i64>>| pool.iter().map(|u| apply(&pinv, u)).collect::<Vec<_>>();
    let forms = |space: Vec<QuadraticForm>| space.iter().map(|f| f.transform(p)).collect::<Vec<_>>();
    match r {
        Refutation::ForcedZero => Refutation::ForcedZero,
        Refutation::LowerBound { lambda, pool, beta, space } => {
            Refutation::LowerBound { lambda, pool: back(pool), beta, space: forms(space) }
        }
        Refutation::Infeasible { pool, beta, space } => Refutation::Infeasible { pool: back(pool), beta, space: forms(space) },
    }
}

/// Re-checks a refutation by exact substitution.
pub fn verify_refutation(v: &VectorConfiguration, r: &Refutation) -> Result<()> {
    let bad = |m: &str| Err(Error::Certificate(m.to_string()));
    let (pool, beta, space, bound) = match r {
        Refutation::ForcedZero => {
            let space = symmetry_restrict(v)?;
            let l = equal_value_space(v, &space.iter().map(form_to_sym).collect::<Vec<_>>());
            let v1 = &v.vectors()[0];
            if l.iter().any(|f| !dot_sym(f, v1).is_zero()) {
                return bad("equalities admit nonzero λ");
            }
            return Ok(());
        }
        Refutation::LowerBound { lambda, pool, beta, space } => (pool, beta, space, Some(lambda)),
        Refutation::Infeasible { pool, beta, space } => (pool, beta, space, None),
    };
    if pool.len() != beta.len() || beta.iter().any(|b| b.is_negative()) {
        return bad("malformed multipliers");
    }
    if pool.iter().any(|u| v.contains(u) || u.iter().all(|&x| x == 0)) {
        return bad("pool meets ±V");
    }
    let v1 = &v.vectors()[0];
    for f in space {
        let val = f.eval(v1);
        if v.vectors().iter().any(|x| f.eval(x) != val) {
            return bad("space form is not constant on V");
        }
        let combo: Rat = pool.iter().zip(beta).filter(|(_, b)| !b.is_zero()).map(|(u, b)| b * f.eval(u)).sum();
        let target = if bound.is_some() { val } else { Rat::zero() };
        if combo != target {
            return bad("multiplier identity fails");
        }
    }
    let total: Rat = beta.iter().sum();
    match bound {
        Some(l) => {
            if &total != l || total < Rat::one() {
                return bad("bound below one");
            }
        }
        None => {
            if !total.is_positive() {
                return bad("empty Farkas combination");
            }
        }
    }
    Ok(())
}

/// Parameter forms of `{A ∈ span(space) : A[v] = A[v_1] for v ∈ V}` in
/// sym coordinates, scaled to primitive integer vectors.
fn equal_value_space(v: &VectorConfiguration, space: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let v1 = &v.vectors()[0];
    let rows: Vec<Vec<Rat>> =
        v.vectors()[1..].iter().map(|x| space.iter().map(|m| dot_sym(m, x) - dot_sym(m, v1)).collect()).collect();
    let kernel: Vec<Vec<Rat>> = if rows.is_empty() {
        (0..space.len()).map(|k| (0..space.len()).map(|j| if j == k { Rat::one() } else { Rat::zero() }).collect()).collect()
    } else {
        QMat::from_rows(&rows).nullspace()
    };
    let d = space.first().map_or(0, |m| m.len());
    kernel
        .into_iter()
        .map(|y| {
            let mut f = vec![Rat::zero(); d];
            for (c, m) in y.iter().zip(space) {
                if c.is_zero() {
                    continue;
                }
                for (a, b) in f.iter_mut().zip(m) {
                    *a += c * b;
                }
            }
            primitive_integer_vector(&f).into_iter().map(Rat::from_integer).collect()
        })
        .collect()
}

enum EngineResult {
    Realizable(QuadraticForm, VectorConfiguration),
    Refuted(Refutation),
}

struct Engine<'a> {
    v: VectorConfiguration,
    rank: usize,
    extend: bool,
    opts: &'a RealizeOptions,
    pool: ConstraintPool,
    space: Vec<QuadraticForm>,
    params: Vec<Vec<Rat>>,
    iterations: usize,
}

impl<'a> Engine<'a> {
    fn new(v: VectorConfiguration, opts: &'a RealizeOptions, extend: bool) -> Result<Self> {
        let rank = perfection_rank(&v);
        let mut pool = initial_pool(&v);
        if extend {
            pool.vectors.retain(|u| perfection_rank(&v.with_vector(u)) > rank);
        }
        let mut e = Engine { v, rank, extend, opts, pool, space: Vec::new(), params: Vec::new(), iterations: 0 };
        e.rebuild()?;
        Ok(e)
    }

    fn rebuild(&mut self) -> Result<()> {
        self.space =
            if self.opts.use_symmetry { symmetry_restrict(&self.v)? } else { full_space(self.v.dim()) };
        let sym: Vec<Vec<Rat>> = self.space.iter().map(form_to_sym).collect();
        self.params = equal_value_space(&self.v, &sym);
        Ok(())
    }

    fn form_of(&self, z: &[Rat]) -> QuadraticForm {
        let d = sym_dim(self.v.dim());
        let mut a = vec![Rat::zero(); d];
        for (c, f) in z.iter().zip(&self.params) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in a.iter_mut().zip(f) {
                *x += c * y;
            }
        }
        sym_to_form(self.v.dim(), &a)
    }

    fn lambda_coeffs(&self) -> Vec<Rat> {
        let v1 = &self.v.vectors()[0];
        self.params.iter().map(|f| dot_sym(f, v1)).collect()
    }

    fn run(&mut self) -> Result<EngineResult> {
        loop {
            self.iterations += 1;
            if self.iterations > self.opts.max_iterations || self.pool.len() > self.opts.max_pool {
                return Err(Error::BudgetExhausted { iterations: self.iterations - 1, pool: self.pool.len() });
            }
            let c = self.lambda_coeffs();
            if c.iter().all(|x| x.is_zero()) {
                return Ok(EngineResult::Refuted(Refutation::ForcedZero));
            }
            let pool: Vec<Vec<i64>> = self.pool.vectors().cloned().collect();
            let mut lp = LinearProgram::new(self.params.len(), Affine::new(c, Rat::zero()))?;
            for u in &pool {
                let row: Vec<Rat> = self.params.iter().map(|f| dot_sym(f, u)).collect();
                lp.add_inequality(Affine::new(row, -Rat::one()))?;
            }
            let out = if self.opts.float_presolve { solve_with_float_presolve(&lp) } else { solve_exact(&lp) };
            let space_forms = || self.params.iter().map(|f| sym_to_form(self.v.dim(), f)).collect::<Vec<_>>();
            let (z, lambda) = match out {
                LpOutcome::Infeasible { certificate } => {
                    return Ok(EngineResult::Refuted(Refutation::Infeasible {
                        pool,
                        beta: certificate.beta,
                        space: space_forms(),
                    }));
                }
                LpOutcome::Unbounded { .. } => {
                    let before = self.pool.len();
                    for x in self.v.vectors().to_vec() {
                        let d: Vec<i64> = x.iter().map(|a| 2 * a).collect();
                        self.pool.insert(&d, &self.v);
                    }
                    assert!(self.pool.len() > before, "unbounded program with 2V already pooled");
                    continue;
                }
                LpOutcome::Optimal { x, value, dual } => {
                    if value >= Rat::one() {
                        return Ok(EngineResult::Refuted(Refutation::LowerBound {
                            lambda: value,
                            pool,
                            beta: dual.beta,
                            space: space_forms(),
                        }));
                    }
                    (x, value)
                }
            };
            let a = self.form_of(&z);
            let added = match a.classify() {
                Definiteness::PositiveDefinite => {
                    let (m, mv) = minimal_vectors(&a)?;
                    if m == lambda && mv == self.v {
                        let witness = a.scale(&lambda.recip());
                        return Ok(EngineResult::Realizable(witness, self.v.clone()));
                    }
                    let mut extra: Vec<Vec<i64>> = mv.vectors().iter().filter(|x| !self.v.contains(x)).cloned().collect();
                    if m < lambda {
                        extra.extend(vectors_below(&a, &lambda)?);
                    }
                    if self.extend && m == lambda {
                        let absorb: Vec<Vec<i64>> = extra
                            .iter()
                            .filter(|x| a.eval(x) == lambda && perfection_rank(&self.v.with_vector(x)) == self.rank)
                            .cloned()
                            .collect();
                        if !absorb.is_empty() {
                            let mut w = self.v.clone();
                            for x in &absorb {
                                w = w.with_vector(x);
                            }
                            self.v = w;
                            self.rebuild()?;
                            continue;
                        }
                    }
                    let mut added = 0;
                    for x in extra {
                        added += usize::from(self.pool.insert(&x, &self.v));
                    }
                    added
                }
                Definiteness::Semidefinite => {
                    let rows: Vec<Vec<Rat>> = a.entries().to_rows();
                    let n = self.v.dim();
                    let mut added = 0;
                    for k in integer_kernel_rat(&rows, n) {
                        let mut u = bigint_vec_to_i64(&k).expect("kernel vector fits in i64");
                        if self.v.contains(&u) {
                            u.iter_mut().for_each(|x| *x *= 2);
                        }
                        added += usize::from(self.pool.insert(&u, &self.v));
                    }
                    added
                }
                Definiteness::Indefinite(x) => {
                    let u = self.violator(&a, &x);
                    usize::from(self.pool.insert(&u, &self.v))
                }
            };
            assert!(added > 0, "realizability iteration made no progress");
        }
    }

    // Nonzero integer u ∉ ±V with A[u] < 1.
    fn violator(&self, a: &QuadraticForm, exact_dir: &[Rat]) -> Vec<i64> {
        let ok = |u: &[i64]| u.iter().any(|&x| x != 0) && !self.v.contains(u) && a.eval(u) < Rat::one();
        let eig = nalgebra::SymmetricEigen::new(a.to_f64());
        let (k, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.partial_cmp(y.1).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        let w = eig.eigenvectors.column(k);
        let scale = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale.is_finite() && scale > 0.0 {
            for i in 1..=64 {
                let u: Vec<i64> = w.iter().map(|x| (x / scale * i as f64).round() as i64).collect();
                if ok(&u) {
                    return u;
                }
            }
        }
        let p = bigint_vec_to_i64(&primitive_integer_vector(exact_dir)).expect("direction fits in i64");
        for t in 1.. {
            let u: Vec<i64> = p.iter().map(|x| x * t).collect();
            if ok(&u) {
                return u;
            }
        }
        unreachable!()
    }
}

/// Minimum over `V` of a form, as a float, for diagnostics.
pub fn approx_value(a: &QuadraticForm, x: &[i64]) -> f64 {
    a.eval(x).to_f64().unwrap_or(f64::NAN)
}
