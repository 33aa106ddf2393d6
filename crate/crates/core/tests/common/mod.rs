//! Oracles and generators shared by the integration tests.
#![allow(dead_code, unused_imports)]

mod layers;
pub use layers::class_layers;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use voronoi_core::equiv::{automorphism_group, IntMat};
use voronoi_core::forms::minvec::minimal_vectors_in_box;
use voronoi_core::linalg::{det_i64, rat, rat_int, QMat, Rat};
use voronoi_core::lp::{Affine, LinearProgram, LpOutcome};
use voronoi_core::realize::{test_realizability, verify_refutation, RealizabilityVerdict};
use voronoi_core::forms::perfection::relation_supports_span_equal;
use voronoi_core::{minimal_vectors, perfection_data, QuadraticForm, VectorConfiguration};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unimodular matrix as a product of elementary moves.
pub fn random_unimodular(n: usize, steps: usize, rng: &mut impl Rng) -> IntMat {
    let mut p: IntMat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        if rng.gen() {
            p[0][0] = -1;
        }
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                let c = if rng.gen() { 1 } else { -1 };
                let src = p[j].clone();
                for (x, y) in p[i].iter_mut().zip(&src) {
                    *x += c * y;
                }
            }
            1 => p.swap(i, j),
            _ => p[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    p
}

/// `BᵗB` for a random nonsingular integer `B`.
pub fn random_pd_form(n: usize, range: i64, rng: &mut impl Rng) -> QuadraticForm {
    loop {
        let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        if det_i64(&b).is_zero() {
            continue;
        }
        let g: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| b[k][i] * b[k][j]).sum()).collect()).collect();
        return QuadraticForm::from_i64_rows(&g).unwrap();
    }
}

/// Minimal vectors by scanning a box large enough to contain them.
pub fn brute_minimal_vectors(a: &QuadraticForm) -> (Rat, Vec<Vec<i64>>) {
    let n = a.dim();
    let m = (0..n).map(|i| a.at(i, i).clone()).min().unwrap();
    let inv = a.entries().inverse().unwrap();
    // |x_i|² ≤ m · (A⁻¹)_ii
    let r = (0..n)
        .map(|i| {
            let b = &m * inv.at(i, i);
            let mut k = 0i64;
            while rat_int(k * k) <= b {
                k += 1;
            }
            k
        })
        .max()
        .unwrap();
    minimal_vectors_in_box(a, r)
}

pub fn all_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![-bound; n];
    loop {
        if voronoi_core::forms::config::is_normalized(&x) {
            out.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            x[k] += 1;
            if x[k] > bound {
                x[k] = -bound;
                k += 1;
            } else {
                break;
            }
        }
    }
}

pub fn subsets_up_to(items: &[Vec<i64>], max: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = vec![Vec::new()];
    for x in items {
        let more: Vec<Vec<Vec<i64>>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x.clone());
                t
            })
            .collect();
        out.extend(more);
    }
    out.retain(|s| !s.is_empty());
    out
}

/// Affine parametrization `A_0 + Σ t_k K_k` of the forms with `A[v] = 1`
/// on `V`, in upper-triangular coordinates.
pub fn equal_value_forms(v: &VectorConfiguration) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = v.dim();
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<Rat>> = v
        .vectors()
        .iter()
        .map(|x| idx.iter().map(|&(i, j)| rat_int(if i == j { x[i] * x[i] } else { 2 * x[i] * x[j] })).collect())
        .collect();
    let m = QMat::from_rows(&rows);
    let a0 = m.solve_any(&vec![rat_int(1); rows.len()])?;
    Some((a0, m.nullspace()))
}

fn form_from_upper(n: usize, a: &[Rat]) -> QuadraticForm {
    let mut m = QMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, a[k].clone());
            m.set(j, i, a[k].clone());
            k += 1;
        }
    }
    QuadraticForm::new(m).unwrap()
}

fn is_hit(v: &VectorConfiguration, a: &QuadraticForm) -> bool {
    a.is_positive_definite() && minimal_vectors(a).is_ok_and(|(m, w)| m == rat_int(1) && w == *v)
}

/// Searches grid points `A_0 + Σ (k_i/24) K_i` for a form whose minimal
/// vectors are exactly `V` with minimum 1. Spaces of dimension at most
/// two are scanned in full over `|k_i| ≤ 48`, larger ones sampled.
pub fn grid_hit(v: &VectorConfiguration, samples: usize, rng: &mut impl Rng) -> Option<QuadraticForm> {
    let n = v.dim();
    let (a0, kernel) = equal_value_forms(v)?;
    let point = |ks: &[i64]| {
        let mut a = a0.clone();
        for (k, kv) in ks.iter().zip(&kernel) {
            for (x, y) in a.iter_mut().zip(kv) {
                *x += rat(*k, 24) * y;
            }
        }
        form_from_upper(n, &a)
    };
    let d = kernel.len();
    if d <= 2 {
        let range: Vec<i64> = (-48..=48).collect();
        let grid: Vec<Vec<i64>> = match d {
            0 => vec![vec![]],
            1 => range.iter().map(|&k| vec![k]).collect(),
            _ => range.iter().flat_map(|&a| range.iter().map(move |&b| vec![a, b])).collect(),
        };
        grid.into_iter().map(|ks| point(&ks)).find(|a| is_hit(v, a))
    } else {
        (0..samples)
            .map(|_| (0..d).map(|_| rng.gen_range(-48..=48)).collect::<Vec<i64>>())
            .map(|ks| point(&ks))
            .find(|a| is_hit(v, a))
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct OracleTally {
    pub checked: usize,
    pub realizable: usize,
    pub confirmed_by_grid: usize,
    pub refuted: usize,
}

/// Compares the LP verdict on `V` with the grid oracle. Errors describe a
/// disagreement or a certificate that does not verify.
pub fn check_against_grid(v: &VectorConfiguration, samples: usize, rng: &mut impl Rng, t: &mut OracleTally) -> Result<(), String> {
    let rep = test_realizability(v).map_err(|e| format!("{v:?}: {e}"))?;
    t.checked += 1;
    let hit = grid_hit(v, samples, rng);
    match rep.verdict {
        RealizabilityVerdict::Realizable { witness } => {
            t.realizable += 1;
            if !is_hit(v, &witness) {
                return Err(format!("{v:?}: witness does not realize"));
            }
            t.confirmed_by_grid += usize::from(hit.is_some());
        }
        RealizabilityVerdict::NotRealizable(r) => {
            t.refuted += 1;
            verify_refutation(v, &r).map_err(|e| format!("{v:?}: refutation: {e}"))?;
            if let Some(a) = hit {
                return Err(format!("{v:?}: refuted but realized by {a:?}"));
            }
        }
    }
    Ok(())
}

/// Random LP with the box `|x_i| ≤ 5`, so every feasible instance has an
/// optimal vertex.
pub fn random_boxed_lp(rng: &mut impl Rng) -> LinearProgram {
    let n = rng.gen_range(1..=6usize);
    let r = |rng: &mut dyn rand::RngCore| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    let mut c: Vec<Rat> = Vec::new();
    for _ in 0..n {
        c.push(r(rng));
    }
    let mut lp = LinearProgram::new(n, Affine::new(c, r(rng))).unwrap();
    for i in 0..n {
        for s in [1, -1] {
            let mut g = vec![Rat::zero(); n];
            g[i] = rat_int(-s);
            lp.add_inequality(Affine::new(g, rat_int(5))).unwrap();
        }
    }
    let extra = rng.gen_range(0..=(12 - 2 * n));
    for k in 0..extra {
        let g: Vec<Rat> = (0..n).map(|_| r(rng)).collect();
        let h = r(rng);
        if k == 0 && n > 1 && rng.gen_bool(0.2) {
            lp.add_equality(Affine::new(g, h)).unwrap();
        } else {
            lp.add_inequality(Affine::new(g, h)).unwrap();
        }
    }
    lp
}

/// Optimal value by evaluating the objective at every basic feasible point.
pub fn brute_force_lp(lp: &LinearProgram) -> Option<Rat> {
    let n = lp.nvars();
    let m = lp.inequalities().len();
    let mut best: Option<Rat> = None;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize > n {
            continue;
        }
        let rows: Vec<&Affine> = lp
            .equalities()
            .iter()
            .chain((0..m).filter(|i| mask >> i & 1 == 1).map(|i| &lp.inequalities()[i]))
            .collect();
        let a = QMat::from_rows(&rows.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>());
        if a.rank() < n {
            continue;
        }
        let rhs: Vec<Rat> = rows.iter().map(|f| -f.constant.clone()).collect();
        let Some(x) = a.solve_any(&rhs) else { continue };
        let feasible = lp.equalities().iter().all(|f| f.eval(&x).is_zero())
            && lp.inequalities().iter().all(|f| !f.eval(&x).is_negative());
        if feasible {
            let v = lp.objective().eval(&x);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best
}

/// Whether the LP outcome agrees with the vertex oracle.
pub fn lp_agrees(lp: &LinearProgram, out: &LpOutcome) -> bool {
    match (out, brute_force_lp(lp)) {
        (LpOutcome::Optimal { value, .. }, Some(b)) => *value == b,
        (LpOutcome::Infeasible { .. }, None) => true,
        _ => false,
    }
}

/// Every perfection relation of `V` has positive and negative supports
/// with the same span.
pub fn span_lemma_holds(v: &VectorConfiguration) -> bool {
    perfection_data(v).relations.iter().all(|rel| relation_supports_span_equal(v, rel))
}

pub fn stabilizer_primes_bounded(v: &VectorConfiguration) -> bool {
    let order = automorphism_group(v).unwrap().order;
    voronoi_core::equiv::prime_factors(order).iter().all(|&p| p <= v.dim() as u64 + 1)
}

/// Random sublattice code with `d ≥ 2`.
pub fn random_code(n: usize, rng: &mut impl Rng) -> voronoi_core::SublatticeCode {
    let d = rng.gen_range(2..=11);
    let word = (0..n).map(|_| rng.gen_range(-d..=d)).collect();
    voronoi_core::SublatticeCode::new(d, word).unwrap()
}

pub fn shuffle<T>(xs: &mut [T], rng: &mut impl Rng) {
    xs.shuffle(rng);
}

pub fn abs_max(v: &[Rat]) -> Rat {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}
