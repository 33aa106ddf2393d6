//! `GL_n(Z)`-equivalence of vector configurations, automorphism groups and
//! orientation characters.
//!
//! Two configurations `V`, `V'` are compared through the invariant form
//! `Q = adj(B)` of the barycenter matrix `B = Σ v vᵗ`: if `P V = V'` then
//! `(Pv)ᵗ Q' (Pw) = vᵗ Q w`. A backtracking search assigns images to a
//! base of `V` consistently with these values; every leaf is checked
//! exactly.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::config::{apply, VectorConfiguration};
use crate::forms::perfection::{barycenter_matrix, perfection_rank, sym_vec};
use crate::linalg::{det_bigint, det_i64, hermite_normal_form, rank_i64, QMat, Rat};

pub type IntMat = Vec<Vec<i64>>;

pub const DEFAULT_NODE_CAP: u64 = 20_000_000;

pub fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &IntMat) -> Option<IntMat> {
    let inv = QMat::from_i64_rows(a).inverse()?;
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = inv.at(i, j);
            if !x.is_integer() {
                return None;
            }
            out[i][j] = x.to_integer().to_i64()?;
        }
    }
    Some(out)
}

/// Whether `g` maps the pair set `V` onto itself.
pub fn stabilizes(g: &IntMat, v: &VectorConfiguration) -> bool {
    maps_onto(g, v, v)
}

pub fn maps_onto(g: &IntMat, v: &VectorConfiguration, w: &VectorConfiguration) -> bool {
    v.len() == w.len() && v.vectors().iter().all(|x| w.contains(&apply(g, x)))
}

fn adjugate(b: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| BigInt::from(b[r][c])).collect())
                .collect();
            let d = det_bigint(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Bucketing key; equal for equivalent configurations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dim: usize,
    pub s: usize,
    pub rank: usize,
    pub det: BigInt,
    /// Sorted `vᵗ Q v`.
    pub norms: Vec<BigInt>,
    /// Sorted `|vᵗ Q w|` over unordered pairs.
    pub products: Vec<BigInt>,
}

struct Prepared {
    n: usize,
    s: usize,
    /// `2i` is `v_i`, `2i + 1` is `−v_i`.
    signed: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    gram: Vec<Vec<BigInt>>,
    signature: Vec<(BigInt, Vec<BigInt>)>,
    det: BigInt,
}

impl Prepared {
    fn new(v: &VectorConfiguration) -> Self {
        let n = v.dim();
        let s = v.len();
        let b = barycenter_matrix(v);
        let det = det_i64(b.rows());
        let q = adjugate(b.rows());
        let mut gram = vec![vec![BigInt::zero(); s]; s];
        let qv: Vec<Vec<BigInt>> = v
            .vectors()
            .iter()
            .map(|x| (0..n).map(|i| (0..n).map(|j| &q[i][j] * x[j]).sum()).collect())
            .collect();
        for a in 0..s {
            for c in a..s {
                let val: BigInt = (0..n).map(|i| &qv[c][i] * v.vectors()[a][i]).sum();
                gram[a][c] = val.clone();
                gram[c][a] = val;
            }
        }
        let signature = (0..s)
            .map(|a| {
                let mut row: Vec<BigInt> = (0..s).filter(|&c| c != a).map(|c| gram[a][c].abs()).collect();
                row.sort();
                (gram[a][a].clone(), row)
            })
            .collect();
        let signed = v.signed_vectors();
        let index = signed.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        Prepared { n, s, signed, index, gram, signature, det }
    }

    fn g(&self, a: usize, b: usize) -> BigInt {
        let v = &self.gram[a / 2][b / 2];
        if (a + b) % 2 == 1 {
            -v
        } else {
            v.clone()
        }
    }

    fn fingerprint(&self, rank: usize) -> Fingerprint {
        let mut norms: Vec<BigInt> = (0..self.s).map(|a| self.gram[a][a].clone()).collect();
        norms.sort();
        let mut products = Vec::with_capacity(self.s * self.s.saturating_sub(1) / 2);
        for a in 0..self.s {
            for c in a + 1..self.s {
                products.push(self.gram[a][c].abs());
            }
        }
        products.sort();
        Fingerprint { dim: self.n, s: self.s, rank, det: self.det.clone(), norms, products }
    }

    // Independent indices (signed, even) chosen rarest signature first.
    fn base(&self) -> Vec<usize> {
        let mut count: HashMap<&(BigInt, Vec<BigInt>), usize> = HashMap::new();
        for sig in &self.signature {
            *count.entry(sig).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..self.s).collect();
        order.sort_by_key(|&a| (count[&self.signature[a]], a));
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for a in order {
            rows.push(self.signed[2 * a].clone());
            if rank_i64(&rows) == rows.len() {
                chosen.push(2 * a);
                if chosen.len() == self.n {
                    break;
                }
            } else {
                rows.pop();
            }
        }
        chosen
    }
}

pub fn fingerprint(v: &VectorConfiguration) -> Fingerprint {
    Prepared::new(v).fingerprint(perfection_rank(v))
}

struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    base: Vec<usize>,
    base_inv: QMat,
    // per prefix length m: |det H_m| and adj(H_m), where H_m is the
    // Hermite form of the first m base vectors
    glue: Vec<(i64, Vec<Vec<i64>>)>,
    nodes: u64,
    cap: u64,
}

/// `[Zⁿ ∩ span : Σ Z c_j]` for independent integer columns.
fn saturation_index(cols: &[&[i64]]) -> i128 {
    let n = cols.first().map_or(0, |c| c.len());
    let m = cols.len();
    let mut rows: Vec<Vec<i128>> = (0..n).map(|i| cols.iter().map(|c| c[i] as i128).collect()).collect();
    let mut index: i128 = 1;
    let mut r = 0;
    for c in 0..m {
        loop {
            let Some(piv) = (r..n).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs()) else {
                break;
            };
            rows.swap(r, piv);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c] != 0 {
                    let q = rows[i][c].div_euclid(rows[r][c]);
                    for k in c..m {
                        rows[i][k] -= q * rows[r][k];
                    }
                    clean &= rows[i][c] == 0;
                }
            }
            if clean {
                break;
            }
        }
        index *= rows[r][c].abs();
        r += 1;
    }
    index
}

fn prefix_glue(base_vectors: &[Vec<i64>]) -> Vec<(i64, Vec<Vec<i64>>)> {
    let n = base_vectors.first().map_or(0, |v| v.len());
    (1..=base_vectors.len())
        .map(|m| {
            let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..m).map(|j| BigInt::from(base_vectors[j][i])).collect()).collect();
            let h: Vec<Vec<i64>> = hermite_normal_form(&rows)
                .into_iter()
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .map(|r| r.iter().map(|x| x.to_i64().expect("small entries")).collect())
                .collect();
            let d = det_i64(&h).to_i64().expect("small determinant").abs();
            let adj: Vec<Vec<i64>> = if d == 1 {
                Vec::new()
            } else {
                let inv = QMat::from_i64_rows(&h).inverse().expect("nonsingular");
                // columns of d·H⁻¹
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|i| (inv.at(i, j) * Rat::from_integer(d.into())).to_integer().to_i64().expect("small"))
                            .collect()
                    })
                    .collect()
            };
            (d, adj)
        })
        .collect()
}

impl<'a> Search<'a> {
    fn new(a: &'a Prepared, b: &'a Prepared, cap: u64) -> Option<Self> {
        let base = a.base();
        if base.len() < a.n {
            return None;
        }
        let n = a.n;
        let bm: Vec<Vec<i64>> = (0..n).map(|r| base.iter().map(|&k| a.signed[k][r]).collect()).collect();
        let base_inv = QMat::from_i64_rows(&bm).inverse()?;
        let glue = prefix_glue(&base.iter().map(|&k| a.signed[k].clone()).collect::<Vec<_>>());
        Some(Search { a, b, base, base_inv, glue, nodes: 0, cap })
    }

    // A unimodular map sends the saturation of each prefix of the base onto
    // the saturation of the images.
    fn prefix_ok(&self, imgs: &[usize]) -> bool {
        let m = imgs.len();
        let (d, adj) = &self.glue[m - 1];
        let cols: Vec<&[i64]> = imgs.iter().map(|&k| self.b.signed[k].as_slice()).collect();
        if saturation_index(&cols) != *d as i128 {
            return false;
        }
        adj.iter().all(|h| {
            (0..self.a.n).all(|r| h.iter().zip(&cols).map(|(c, v)| *c as i128 * v[r] as i128).sum::<i128>() % *d as i128 == 0)
        })
    }

    fn candidates(&self, k: usize, imgs: &[usize]) -> Vec<usize> {
        let bk = self.base[k];
        let sig = &self.a.signature[bk / 2];
        (0..2 * self.b.s)
            .filter(|&j| &self.b.signature[j / 2] == sig)
            .filter(|&j| imgs.iter().all(|&i| i / 2 != j / 2))
            .filter(|&j| imgs.iter().enumerate().all(|(l, &i)| self.b.g(j, i) == self.a.g(bk, self.base[l])))
            .collect()
    }

    fn leaf(&self, imgs: &[usize]) -> Option<IntMat> {
        let n = self.a.n;
        let c: Vec<Vec<i64>> = (0..n).map(|r| imgs.iter().map(|&k| self.b.signed[k][r]).collect()).collect();
        let p = QMat::from_i64_rows(&c).mul(&self.base_inv);
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let x = p.at(i, j);
                if !x.is_integer() {
                    return None;
                }
                out[i][j] = x.to_integer().to_i64()?;
            }
        }
        if !det_i64(&out).abs().is_one() {
            return None;
        }
        if !(0..self.a.s).all(|i| self.b.index.contains_key(&apply(&out, &self.a.signed[2 * i]))) {
            return None;
        }
        Some(out)
    }

    /// Depth-first search below the fixed prefix `imgs`; stops at the first
    /// leaf for which `visit` returns true.
    fn run(&mut self, imgs: &mut Vec<usize>, visit: &mut dyn FnMut(IntMat) -> bool) -> Result<bool> {
        let k = imgs.len();
        if k == self.a.n {
            return Ok(match self.leaf(imgs) {
                Some(p) => visit(p),
                None => false,
            });
        }
        for c in self.candidates(k, imgs) {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::Undecided(self.nodes));
            }
            imgs.push(c);
            if self.prefix_ok(imgs) && self.run(imgs, visit)? {
                return Ok(true);
            }
            imgs.pop();
        }
        Ok(false)
    }
}

pub fn are_equivalent(v: &VectorConfiguration, w: &VectorConfiguration) -> Result<Option<IntMat>> {
    are_equivalent_with_cap(v, w, DEFAULT_NODE_CAP)
}

/// `Some(P)` with `P V = W` as pair sets, or `None` when no such unimodular
/// `P` exists. Both configurations must be well-rounded.
pub fn are_equivalent_with_cap(v: &VectorConfiguration, w: &VectorConfiguration, cap: u64) -> Result<Option<IntMat>> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: v.dim(), got: w.dim() });
    }
    if !v.is_well_rounded() || !w.is_well_rounded() {
        return Err(Error::NotWellRounded);
    }
    if v.len() != w.len() {
        return Ok(None);
    }
    let a = Prepared::new(v);
    let b = Prepared::new(w);
    if a.fingerprint(0) != b.fingerprint(0) {
        return Ok(None);
    }
    let mut search = Search::new(&a, &b, cap).ok_or(Error::NotWellRounded)?;
    let mut found = None;
    search.run(&mut Vec::new(), &mut |p| {
        found = Some(p);
        true
    })?;
    if let Some(p) = &found {
        assert!(maps_onto(p, v, w), "isometry witness failed verification");
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    pub generators: Vec<IntMat>,
    pub order: u64,
    /// Orientation character of each generator.
    pub characters: Vec<i8>,
}

impl StabilizerGroup {
    pub fn orientation_faithful(&self) -> bool {
        self.characters.iter().all(|&c| c == 1)
    }

    /// An element with character `−1`, if any generator has one.
    pub fn orientation_reversing(&self) -> Option<&IntMat> {
        self.generators.iter().zip(&self.characters).find(|(_, &c)| c == -1).map(|(g, _)| g)
    }
}

pub fn automorphism_group(v: &VectorConfiguration) -> Result<StabilizerGroup> {
    automorphism_group_with_cap(v, DEFAULT_NODE_CAP)
}

/// The finite group of unimodular matrices preserving `V`, through a
/// stabilizer chain along a base of `V`.
pub fn automorphism_group_with_cap(v: &VectorConfiguration, cap: u64) -> Result<StabilizerGroup> {
    if !v.is_well_rounded() {
        return Err(Error::NotWellRounded);
    }
    let a = Prepared::new(v);
    let mut search = Search::new(&a, &a, cap).ok_or(Error::NotWellRounded)?;
    let base = search.base.clone();
    let n = a.n;
    let mut gens: Vec<IntMat> = Vec::new();
    let mut order: u64 = 1;
    for k in (0..n).rev() {
        let prefix: Vec<usize> = base[..k].to_vec();
        let mut orbit = orbit_of(&a, base[k], &gens);
        let mut excluded: HashSet<usize> = HashSet::new();
        for c in search.candidates(k, &prefix) {
            if orbit.contains(&c) || excluded.contains(&c) {
                continue;
            }
            let mut imgs = prefix.clone();
            imgs.push(c);
            let mut found = None;
            search.run(&mut imgs, &mut |p| {
                found = Some(p);
                true
            })?;
            match found {
                Some(g) => {
                    gens.push(g);
                    orbit = orbit_of(&a, base[k], &gens);
                }
                None => {
                    excluded.insert(c);
                }
            }
        }
        order = order.checked_mul(orbit.len() as u64).expect("group order overflows u64");
    }
    let frame = OrientationFrame::new(v);
    let characters = gens.iter().map(|g| frame.transport_sign(&frame, g)).collect();
    Ok(StabilizerGroup { generators: gens, order, characters })
}

fn orbit_of(a: &Prepared, start: usize, gens: &[IntMat]) -> HashSet<usize> {
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = a.index[&apply(g, &a.signed[x])];
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Canonical ordered basis of `span{v vᵗ : v ∈ V}`: the first
/// independent projectors in the configuration's order.
#[derive(Clone, Debug)]
pub struct OrientationFrame {
    pub basis: Vec<usize>,
    pivots: Vec<usize>,
    inv: QMat,
    config: VectorConfiguration,
}

impl OrientationFrame {
    pub fn new(v: &VectorConfiguration) -> Self {
        let mut basis = Vec::new();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (i, x) in v.vectors().iter().enumerate() {
            rows.push(sym_vec(x));
            if rank_i64(&rows) == rows.len() {
                basis.push(i);
            } else {
                rows.pop();
            }
        }
        let r = rows.len();
        let mut m = QMat::from_i64_rows(&rows);
        let pivots = m.rref_in_place();
        let sub: Vec<Vec<i64>> = (0..r).map(|i| pivots.iter().map(|&c| rows[i][c]).collect()).collect();
        // rows of `sub` are basis projectors restricted to pivot coordinates;
        // coordinates c solve subᵗ c = x[pivots].
        let inv = QMat::from_i64_rows(&sub).transpose().inverse().expect("pivot minor is invertible");
        OrientationFrame { basis, pivots, inv, config: v.clone() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn config(&self) -> &VectorConfiguration {
        &self.config
    }

    pub fn basis_vectors(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|&i| self.config.vectors()[i].clone()).collect()
    }

    /// Coordinates of `x xᵗ` in this basis; `x xᵗ` must lie in the span.
    pub fn coordinates(&self, x: &[i64]) -> Vec<Rat> {
        let s = sym_vec(x);
        let sub: Vec<Rat> = self.pivots.iter().map(|&c| Rat::from_integer(s[c].into())).collect();
        self.inv.mul_vec(&sub)
    }

    /// Whether `x xᵗ` lies in the span.
    pub fn contains(&self, x: &[i64]) -> bool {
        let c = self.coordinates(x);
        let mut acc = vec![Rat::zero(); sym_vec(x).len()];
        for (k, &i) in self.basis.iter().enumerate() {
            let b = sym_vec(&self.config.vectors()[i]);
            for (a, bv) in acc.iter_mut().zip(b) {
                *a += &c[k] * Rat::from_integer(bv.into());
            }
        }
        acc.iter().zip(sym_vec(x)).all(|(a, b)| *a == Rat::from_integer(b.into()))
    }

    /// Sign of the determinant of `X ↦ g X gᵗ` from this frame's span to
    /// `dst`'s span, in the two canonical bases.
    pub fn transport_sign(&self, dst: &OrientationFrame, g: &IntMat) -> i8 {
        let r = self.rank();
        assert_eq!(r, dst.rank(), "spans of different dimension");
        let cols: Vec<Vec<Rat>> = self.basis_vectors().iter().map(|b| dst.coordinates(&apply(g, b))).collect();
        let m = QMat::from_rows(&(0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect::<Vec<_>>());
        let d = m.det();
        assert!(!d.is_zero(), "transport is not invertible");
        if d.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// The orientation character of `g ∈ Stab(V)`.
pub fn orientation_character(g: &IntMat, v: &VectorConfiguration) -> Result<i8> {
    if !stabilizes(g, v) {
        return Err(Error::NotStabilizing);
    }
    let frame = OrientationFrame::new(v);
    Ok(frame.transport_sign(&frame, g))
}

/// Whether every element of the stabilizer preserves orientation.
pub fn is_orientation_faithful(v: &VectorConfiguration) -> Result<bool> {
    Ok(automorphism_group(v)?.orientation_faithful())
}

/// Prime factors of `n`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, v: &[&[i64]]) -> VectorConfiguration {
        VectorConfiguration::new(n, v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn brute_force_order(v: &VectorConfiguration) -> u64 {
        // columns of g are images of the standard basis, which lie in the
        // span of V with entries bounded by the box
        let n = v.dim();
        let r = 2i64;
        let mut count = 0;
        let cols: Vec<Vec<i64>> = {
            let mut out = Vec::new();
            let mut x = vec![-r; n];
            loop {
                if x.iter().any(|&c| c != 0) {
                    out.push(x.clone());
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    x[k] += 1;
                    if x[k] > r {
                        x[k] = -r;
                        k += 1;
                    } else {
                        break;
                    }
                }
                if k == n {
                    break;
                }
            }
            out
        };
        let mut idx = vec![0usize; n];
        loop {
            let g: IntMat = (0..n).map(|i| (0..n).map(|j| cols[idx[j]][i]).collect()).collect();
            if det_i64(&g).abs().is_one() && stabilizes(&g, v) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                idx[k] += 1;
                if idx[k] == cols.len() {
                    idx[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn square_and_hexagonal_groups() {
        let sq = cfg(2, &[&[1, 0], &[0, 1]]);
        let g = automorphism_group(&sq).unwrap();
        assert_eq!(g.order, 8);
        assert_eq!(brute_force_order(&sq), 8);
        let hex = cfg(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let g = automorphism_group(&hex).unwrap();
        assert_eq!(g.order, 12);
        assert_eq!(brute_force_order(&hex), 12);
        assert!(!g.orientation_faithful());
    }

    #[test]
    fn brute_force_dim3() {
        for v in [
            cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]),
            cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
            cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]),
        ] {
            assert_eq!(automorphism_group(&v).unwrap().order, brute_force_order(&v), "{v:?}");
        }
    }

    #[test]
    fn unimodular_move_is_found() {
        let v = cfg(2, &[&[1, 0], &[0, 1]]);
        let w = cfg(2, &[&[1, 0], &[1, 1]]);
        let p = are_equivalent(&v, &w).unwrap().unwrap();
        assert!(maps_onto(&p, &v, &w));
        let hex = cfg(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(are_equivalent(&v, &hex).unwrap().is_none());
    }

    #[test]
    fn characters() {
        let sq = cfg(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(orientation_character(&vec![vec![-1, 0], vec![0, -1]], &sq).unwrap(), 1);
        assert_eq!(orientation_character(&vec![vec![0, 1], vec![1, 0]], &sq).unwrap(), -1);
        assert!(orientation_character(&vec![vec![1, 1], vec![0, 1]], &sq).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
