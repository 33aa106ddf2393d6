//! Well-rounded configurations of `n` vectors in dimension `n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::classes::ClassStore;
use super::codes::codes_prime;
use super::hermite::index_bound;
use crate::equiv::{automorphism_group, prime_factors};
use crate::error::{Error, Result};
use crate::forms::config::VectorConfiguration;
use crate::forms::lll::lll_reduce;
use crate::linalg::{gcd_i64, hermite_normal_form, QMat, Rat};
use crate::realize::{test_realizability_with, RealizeOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankNClass {
    pub config: VectorConfiguration,
    /// `[Zⁿ : span V]`.
    pub index: u64,
}

#[derive(Clone, Debug, Default)]
pub struct RankNOptions {
    /// Defaults to the Hermite index bound.
    pub max_index: Option<u64>,
    pub realize: RealizeOptions,
}

/// Coordinates of `V` in a basis of `Zⁿ + Z·c/p`.
pub fn overlattice(v: &VectorConfiguration, c: &[i64], p: i64) -> VectorConfiguration {
    let n = v.dim();
    let mut rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(if i == j { p } else { 0 })).collect()).collect();
    rows.push(c.iter().map(|&x| BigInt::from(x)).collect());
    let h: Vec<Vec<BigInt>> = hermite_normal_form(&rows).into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    assert_eq!(h.len(), n, "overlattice basis has full rank");
    let hm = QMat::from_rows(&h.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect::<Vec<_>>());
    let inv = hm.inverse().expect("nonsingular basis");
    let pr = Rat::from_integer(p.into());
    let image = v.vectors().iter().map(|x| {
        (0..n)
            .map(|j| {
                let s: Rat = (0..n).map(|i| inv.at(i, j) * Rat::from_integer(x[i].into())).sum::<Rat>() * &pr;
                assert!(s.is_integer(), "vector outside the overlattice");
                s.to_integer().to_i64().expect("coordinate fits in i64")
            })
            .collect::<Vec<i64>>()
    });
    VectorConfiguration::from_vectors(n, image).expect("injective change of basis")
}

fn all_primitive(v: &VectorConfiguration) -> bool {
    v.vectors().iter().all(|x| x.iter().fold(0, |g, &a| gcd_i64(g, a)) == 1)
}

fn projective_normalize(c: &[i64], p: i64) -> Vec<i64> {
    let mut c: Vec<i64> = c.iter().map(|x| x.rem_euclid(p)).collect();
    if let Some(&f) = c.iter().find(|&&x| x != 0) {
        let inv = (1..p).find(|k| k * f % p == 1).expect("p prime");
        c.iter_mut().for_each(|x| *x = *x * inv % p);
    }
    c
}

/// Orbit representatives of the points of `P^{n-1}(F_p)` under the
/// automorphism group of `V`.
fn overlattice_orbits(v: &VectorConfiguration, p: i64) -> Result<Vec<Vec<i64>>> {
    let n = v.dim();
    let gens = automorphism_group(v)?.generators;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut reps = Vec::new();
    let total = (p as u64).pow(n as u32);
    for mut x in 1..total {
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push((x % p as u64) as i64);
            x /= p as u64;
        }
        c.reverse();
        let c = projective_normalize(&c, p);
        if seen.contains(&c) {
            continue;
        }
        reps.push(c.clone());
        seen.insert(c.clone());
        let mut stack = vec![c];
        while let Some(y) = stack.pop() {
            for g in &gens {
                let z = projective_normalize(&crate::forms::config::apply(g, &y), p);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
    }
    Ok(reps)
}

/// All classes with `s = r = n`, grouped by index, each certified
/// realizable. Index `p` classes come from codes, composite indices from
/// prime overlattices of the classes of index `d/p`.
pub fn enumerate_rank_n(n: usize, opts: &RankNOptions) -> Result<Vec<RankNClass>> {
    if n == 0 {
        return Err(Error::Invalid("dimension 0".into()));
    }
    let bound = match opts.max_index {
        Some(b) => b,
        None => index_bound(n).ok_or_else(|| Error::Invalid(format!("no index bound for n = {n}")))?,
    };
    let mut levels: BTreeMap<u64, Vec<VectorConfiguration>> = BTreeMap::new();
    levels.insert(1, vec![VectorConfiguration::standard_basis(n)]);
    for d in 2..=bound {
        let p = prime_factors(d)[0];
        let candidates: Vec<VectorConfiguration> = if d == p {
            let std = VectorConfiguration::standard_basis(n);
            codes_prime(n, p as i64, true).iter().map(|w| overlattice(&std, w, p as i64)).collect()
        } else {
            let mut out = Vec::new();
            for v in &levels[&(d / p)] {
                for c in overlattice_orbits(v, p as i64)? {
                    out.push(overlattice(v, &c, p as i64));
                }
            }
            out
        };
        let candidates: Vec<VectorConfiguration> = candidates.into_iter().filter(all_primitive).collect();
        log::debug!("n={n} index {d}: {} candidates", candidates.len());
        let verdicts: Vec<Result<bool>> = candidates
            .par_iter()
            .map(|v| Ok(test_realizability_with(v, &opts.realize)?.verdict.is_realizable()))
            .collect();
        let mut store = ClassStore::new();
        for (v, ok) in candidates.into_iter().zip(verdicts) {
            if ok? {
                store.insert(lll_reduce(&v).0)?;
            }
        }
        levels.insert(d, store.into_sorted());
    }
    Ok(levels
        .into_iter()
        .flat_map(|(d, vs)| vs.into_iter().map(move |config| RankNClass { config, index: d }))
        .collect())
}

/// Number of classes per index.
pub fn index_histogram(classes: &[RankNClass]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for c in classes {
        *h.entry(c.index).or_insert(0) += 1;
    }
    h
}
