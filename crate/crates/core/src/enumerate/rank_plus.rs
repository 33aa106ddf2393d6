//! Configurations of perfection rank `r > n` by extension of rank `r − 1`
//! classes.
//!
//! Every class of rank `r` has a well-rounded facet of rank `r − 1`, hence
//! a representative `W ⊃ W_1` with `W_1` in the lower layer. A vector
//! `x ∈ W ∖ W_1` raising the rank determines `W` as the unique realizable
//! extension of `W_1 ∪ {x}`. Candidates for `x` come from Cramer's rule:
//! on a basis `B ⊂ W_1`, `det(B)·x = Σ k_i b_i` with `|k_i|` bounded by the
//! index bound, since `k_i` is the determinant of `n` minimal vectors.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::classes::ClassStore;
use super::hermite::index_bound;
use crate::equiv::automorphism_group;
use crate::error::{Error, Result};
use crate::forms::config::{apply, normalize_vector, VectorConfiguration};
use crate::forms::lll::lll_reduce;
use crate::forms::perfection::{perfection_rank, subsets};
use crate::linalg::det_i64;
use crate::realize::{extend_to_realizable_with, RealizeOptions};

#[derive(Clone, Debug)]
pub struct RankPlusOptions {
    pub realize: RealizeOptions,
    /// Defaults to the Hermite index bound.
    pub index_bound: Option<u64>,
    /// Number of bases of `W_1` used to filter candidates by determinant.
    pub filter_bases: usize,
}

impl Default for RankPlusOptions {
    fn default() -> Self {
        RankPlusOptions { realize: RealizeOptions::default(), index_bound: None, filter_bases: 12 }
    }
}

fn det(rows: &[Vec<i64>]) -> i64 {
    det_i64(rows).to_i64().expect("determinant fits in i64")
}

struct Bases {
    /// `(|det|, basis)` sorted by determinant, then lexicographically.
    list: Vec<(i64, Vec<Vec<i64>>)>,
}

fn bases(w: &VectorConfiguration, cap: usize) -> Bases {
    let n = w.dim();
    let mut list = Vec::new();
    for idx in subsets(w.len(), n) {
        let b: Vec<Vec<i64>> = idx.iter().map(|&i| w.vectors()[i].clone()).collect();
        let d = det(&b).abs();
        if d != 0 {
            list.push((d, b));
        }
        if list.len() >= 4096 {
            break;
        }
    }
    list.sort();
    list.truncate(cap.max(1));
    Bases { list }
}

/// Candidate vectors `x`, one per orbit of `Stab(W_1)`.
pub fn extension_candidates(w: &VectorConfiguration, r: usize, bound: i64, filter_bases: usize) -> Result<Vec<Vec<i64>>> {
    let n = w.dim();
    let bs = bases(w, filter_bases);
    let (dd, b0) = bs.list.first().cloned().ok_or(Error::NotWellRounded)?;
    let signed = det(&b0);
    let gens = automorphism_group(w)?.generators;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let width = (2 * bound + 1) as u64;
    let total = width.pow(n as u32);
    let mut k = vec![0i64; n];
    for mut code in 0..total {
        for slot in k.iter_mut() {
            *slot = (code % width) as i64 - bound;
            code /= width;
        }
        match k.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => {}
            _ => continue,
        }
        let mut y = vec![0i64; n];
        for (ki, bi) in k.iter().zip(&b0) {
            for (yj, &bij) in y.iter_mut().zip(bi) {
                *yj += ki * bij;
            }
        }
        if y.iter().any(|c| c % dd != 0) {
            continue;
        }
        let x = normalize_vector(&y.iter().map(|c| c / signed).collect::<Vec<_>>());
        if w.contains(&x) || seen.contains(&x) {
            continue;
        }
        let passes = bs.list.iter().all(|(_, b)| {
            (0..n).all(|i| {
                let mut m = b.clone();
                m[i] = x.clone();
                det(&m).unsigned_abs() <= bound as u64
            })
        });
        if !passes {
            continue;
        }
        if perfection_rank(&w.with_vector(&x)) != r {
            continue;
        }
        // mark the whole orbit
        let mut stack = vec![x.clone()];
        seen.insert(x.clone());
        while let Some(z) = stack.pop() {
            for g in &gens {
                let t = normalize_vector(&apply(g, &z));
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Classes of perfection rank `r` in dimension `n`, given the complete
/// list of rank `r − 1` classes.
pub fn enumerate_rank_plus(
    n: usize,
    r: usize,
    lower: &[VectorConfiguration],
    opts: &RankPlusOptions,
) -> Result<Vec<VectorConfiguration>> {
    let mut store = ClassStore::new();
    extend_layer(n, r, lower, &mut store, opts)?;
    Ok(store.into_sorted())
}

/// Adds to `store` every rank `r` class reached from the given lower
/// classes. Processing the lower layer in consecutive chunks into the same
/// store gives the same representatives as a single call.
pub fn extend_layer(
    n: usize,
    r: usize,
    lower: &[VectorConfiguration],
    store: &mut ClassStore,
    opts: &RankPlusOptions,
) -> Result<usize> {
    if r <= n {
        return Err(Error::Invalid(format!("rank {r} is not above the dimension {n}")));
    }
    for w in lower {
        if w.dim() != n || !w.is_well_rounded() || perfection_rank(w) != r - 1 {
            return Err(Error::IncompleteInput(format!("lower layer entry is not a rank {} class", r - 1)));
        }
    }
    let bound = match opts.index_bound {
        Some(b) => b,
        None => index_bound(n).ok_or_else(|| Error::Invalid(format!("no index bound for n = {n}")))?,
    } as i64;
    let per_class: Vec<Vec<Vec<i64>>> = lower
        .par_iter()
        .map(|w| extension_candidates(w, r, bound, opts.filter_bases))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, Vec<i64>)> =
        per_class.into_iter().enumerate().flat_map(|(i, xs)| xs.into_iter().map(move |x| (i, x))).collect();
    log::debug!("n={n} r={r}: {} extension candidates", jobs.len());
    let found: Vec<Option<VectorConfiguration>> = jobs
        .par_iter()
        .map(|(i, x)| extend_to_realizable_with(&lower[*i].with_vector(x), &opts.realize))
        .collect::<Result<_>>()?;
    let before = store.len();
    for w in found.into_iter().flatten() {
        debug_assert_eq!(perfection_rank(&w), r);
        store.insert(lll_reduce(&w).0)?;
    }
    Ok(store.len() - before)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagonal_from_square() {
        let sq = VectorConfiguration::standard_basis(2);
        let out = enumerate_rank_plus(2, 3, &[sq], &RankPlusOptions::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].len(), 3);
    }

    #[test]
    fn dimension_three_chain() {
        let mut layer = vec![VectorConfiguration::standard_basis(3)];
        let mut counts = Vec::new();
        for r in 4..=6 {
            layer = enumerate_rank_plus(3, r, &layer, &RankPlusOptions::default()).unwrap();
            counts.push(layer.len());
        }
        assert_eq!(counts, vec![2, 1, 1]);
    }
}
