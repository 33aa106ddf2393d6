//! Lexicographically minimal codes `(a_1 ≤ … ≤ a_n)` modulo a prime.
//!
//! A word stands for the lattice `Zⁿ + Z·a/p`. Words are taken up to
//! coordinate permutations, sign changes and multiplication by units, so
//! each class is represented by its lexicographically least normalized
//! multiple.

use rayon::prelude::*;

use crate::forms::watson::normalize_word;

fn residue(a: i64, p: i64) -> i64 {
    let r = a.rem_euclid(p);
    r.min(p - r)
}

/// Whether the sorted normalized `word` is the least normalized multiple.
pub fn is_lex_minimal(word: &[i64], p: i64) -> bool {
    let mut buf = vec![0i64; word.len()];
    for k in 2..=p / 2 {
        let first = word.iter().map(|&a| residue(k * a, p)).min().unwrap_or(0);
        if first > word[0] {
            continue;
        }
        for (b, &a) in buf.iter_mut().zip(word) {
            *b = residue(k * a, p);
        }
        buf.sort_unstable();
        if buf.as_slice() < word {
            return false;
        }
    }
    true
}

fn extend(word: &mut Vec<i64>, n: usize, p: i64, emit: &mut dyn FnMut(&[i64])) {
    if word.len() == n {
        if word.iter().any(|&a| a != 0) {
            emit(word);
        }
        return;
    }
    let lo = word.last().copied().unwrap_or(0);
    for a in lo..=p / 2 {
        word.push(a);
        if word.iter().all(|&x| x == 0) || is_lex_minimal(word, p) {
            extend(word, n, p, emit);
        }
        word.pop();
    }
}

/// Emits each class of nonzero words of length `n` modulo the prime `p`
/// once, as its sorted lexicographically minimal representative. Without
/// `include_zeros`, entries range over `1..=⌊p/2⌋`.
pub fn enumerate_codes_prime(n: usize, p: i64, include_zeros: bool, emit: &mut dyn FnMut(&[i64])) {
    assert!(p >= 2, "modulus below 2");
    let mut word = Vec::with_capacity(n);
    if include_zeros {
        extend(&mut word, n, p, emit);
    } else {
        for a in 1..=p / 2 {
            word.push(a);
            if is_lex_minimal(&word, p) {
                extend(&mut word, n, p, emit);
            }
            word.pop();
        }
    }
}

pub fn codes_prime(n: usize, p: i64, include_zeros: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    enumerate_codes_prime(n, p, include_zeros, &mut |w| out.push(w.to_vec()));
    out
}

/// Number of codes, counted in parallel over two-letter prefixes without
/// storing them.
pub fn count_codes_prime(n: usize, p: i64, include_zeros: bool) -> u64 {
    if n < 3 {
        return codes_prime(n, p, include_zeros).len() as u64;
    }
    let lo = if include_zeros { 0 } else { 1 };
    let prefixes: Vec<Vec<i64>> = (lo..=p / 2)
        .flat_map(|a| (a..=p / 2).map(move |b| vec![a, b]))
        .filter(|w| w.iter().all(|&x| x == 0) || (is_lex_minimal(&w[..1], p) && is_lex_minimal(w, p)))
        .collect();
    prefixes
        .par_iter()
        .map(|pre| {
            let mut count = 0u64;
            let mut word = pre.clone();
            extend(&mut word, n, p, &mut |_| count += 1);
            count
        })
        .sum()
}

/// Canonical class representative of an arbitrary word (brute force).
pub fn canonical_word(word: &[i64], p: i64) -> Vec<i64> {
    (1..p).map(|k| normalize_word(&word.iter().map(|a| a * k).collect::<Vec<_>>(), p)).min().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(n: usize, p: i64, zeros: bool) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        let total = (p as u64).pow(n as u32);
        for mut x in 1..total {
            let mut w = Vec::with_capacity(n);
            for _ in 0..n {
                w.push((x % p as u64) as i64);
                x /= p as u64;
            }
            if !zeros && w.contains(&0) {
                continue;
            }
            out.insert(canonical_word(&w, p));
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        for (n, p) in [(2, 2), (3, 2), (3, 3), (3, 5), (4, 5), (4, 7), (5, 3), (3, 11), (4, 13)] {
            for zeros in [false, true] {
                let fast: BTreeSet<Vec<i64>> = codes_prime(n, p, zeros).into_iter().collect();
                assert_eq!(fast, brute(n, p, zeros), "n={n} p={p} zeros={zeros}");
                assert_eq!(count_codes_prime(n, p, zeros), fast.len() as u64);
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(codes_prime(2, 2, false), vec![vec![1, 1]]);
        assert_eq!(codes_prime(3, 2, false), vec![vec![1, 1, 1]]);
        assert_eq!(codes_prime(3, 2, true), vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
    }
}
