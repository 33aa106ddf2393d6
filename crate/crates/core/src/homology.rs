//! Integer homology of chain complexes by Smith normal form, reported raw
//! and modulo the classes `S_b` of finite groups with prime factors `≤ b`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::{verify_dd_zero, SparseMatrix, VoronoiComplexData};
use crate::cone::{rank_mod, P1, P2};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero elementary divisors `d_1 | d_2 | …`.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let sf = smith_dense(m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect());
    let rows: Vec<Vec<i64>> = m.to_dense();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let modular = rank_mod(&refs, P1).max(rank_mod(&refs, P2));
    assert_eq!(modular, sf.rank(), "Smith form rank disagrees with the modular rank");
    sf
}

/// Smith normal form of a dense integer matrix.
pub fn smith_dense(mut a: Vec<Vec<BigInt>>) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let x = &q * &a[t][j];
                    a[i][j] -= x;
                }
                dirty |= !a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let x = &q * &a[i][t];
                    a[i][j] -= x;
                }
                dirty |= !a[t][j].is_zero();
            }
        }
        if dirty {
            continue;
        }
        // the pivot must divide the whole trailing block
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))) {
            for j in t..cols {
                let x = a[i][j].clone();
                a[t][j] += x;
            }
            continue;
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { divisors }
}

/// Primes dividing `n` with their exponents.
pub fn factor(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            n /= &p;
            *out.entry(p.clone()).or_insert(0) += 1;
        }
        p += 1;
    }
    if n > BigInt::one() {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// The largest divisor of `n` whose prime factors all exceed `b`.
pub fn strip_small_primes(n: &BigInt, b: u64) -> BigInt {
    factor(n).into_iter().filter(|(p, _)| p.to_u64().is_none_or(|p| p > b)).map(|(p, e)| p.pow(e)).product()
}

/// Torsion primes `p` of any cell stabilizer in dimension `N` obey
/// `p ≤ N + 1`.
pub fn torsion_prime_bound(n: usize) -> u64 {
    n as u64 + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    /// Perfection rank of the cells.
    pub rank: usize,
    /// `rank − 1`, the homological degree in cell dimension.
    pub cell_dim: usize,
    pub sigma_star: usize,
    pub sigma: usize,
    pub free_rank: usize,
    /// Invariant factors `> 1`.
    pub torsion: Vec<BigInt>,
    /// Number of cyclic `p`-primary summands per prime.
    pub torsion_primes: BTreeMap<BigInt, usize>,
    /// Invariant factors with all primes `≤ b` removed, `1`s dropped.
    pub filtered_torsion: Vec<BigInt>,
}

impl HomologyRow {
    pub fn is_zero_mod_sb(&self) -> bool {
        self.free_rank == 0 && self.filtered_torsion.is_empty()
    }

    /// Index `k` with `H_{k+N−1}` in cell-dimension grading.
    pub fn table_k(&self, n: usize) -> i64 {
        self.rank as i64 - n as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub dim: usize,
    pub bound: u64,
    pub rows: Vec<HomologyRow>,
}

impl HomologyReport {
    pub fn nonzero_mod_sb(&self) -> Vec<&HomologyRow> {
        self.rows.iter().filter(|r| !r.is_zero_mod_sb()).collect()
    }

    pub fn to_table(&self) -> String {
        use std::fmt::Write as _;
        let mut s = format!("# N={} modulo S_{}\n", self.dim, self.bound);
        s.push_str("rank cell_dim k dim_sigma_star dim_sigma free_rank torsion filtered\n");
        let show = |v: &[BigInt]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join("+")
            }
        };
        for r in &self.rows {
            let filtered = if r.is_zero_mod_sb() {
                "0".to_string()
            } else {
                let mut parts = Vec::new();
                if r.free_rank > 0 {
                    parts.push(format!("Z^{}", r.free_rank));
                }
                if !r.filtered_torsion.is_empty() {
                    parts.push(show(&r.filtered_torsion));
                }
                parts.join("+")
            };
            writeln!(
                s,
                "{} {} {} {} {} {} {} {}",
                r.rank,
                r.cell_dim,
                r.table_k(self.dim),
                r.sigma_star,
                r.sigma,
                r.free_rank,
                show(&r.torsion),
                filtered
            )
            .unwrap();
        }
        s
    }
}

/// `H_r = ker d_r / im d_{r+1}` for every rank of the complex.
pub fn homology_of_complex(c: &VoronoiComplexData, b: u64) -> Result<HomologyReport> {
    if !verify_dd_zero(c) {
        let r = c.ranks.windows(2).find(|w| !c.differentials[&w[0]].product_is_zero(&c.differentials[&w[1]])).map_or(0, |w| w[1]);
        return Err(Error::DifferentialSanityFailed(r));
    }
    let smith: BTreeMap<usize, SmithForm> =
        c.ranks.par_iter().map(|&r| (r, smith_normal_form(&c.differential(r)))).collect::<Vec<_>>().into_iter().collect();
    let rows = c
        .ranks
        .iter()
        .map(|&r| {
            let n = c.sigma_size(r);
            let rk_out = smith[&r].rank();
            let above = smith.get(&(r + 1));
            let rk_in = above.map_or(0, SmithForm::rank);
            let torsion: Vec<BigInt> =
                above.map(|s| s.divisors.iter().filter(|d| !d.is_one()).cloned().collect()).unwrap_or_default();
            let mut torsion_primes = BTreeMap::new();
            for d in &torsion {
                for p in factor(d).into_keys() {
                    *torsion_primes.entry(p).or_insert(0) += 1;
                }
            }
            let filtered_torsion =
                torsion.iter().map(|d| strip_small_primes(d, b)).filter(|d| !d.is_one()).collect();
            HomologyRow {
                rank: r,
                cell_dim: r - 1,
                sigma_star: c.sigma_star_sizes.get(&r).copied().unwrap_or(n),
                sigma: n,
                free_rank: n - rk_out - rk_in,
                torsion,
                torsion_primes,
                filtered_torsion,
            }
        })
        .collect();
    Ok(HomologyReport { dim: c.dim, bound: b, rows })
}
