//! Hermite constants and the index bound `⌊√(γ_n^n)⌋`.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::linalg::{rat, Rat};

/// `γ_n^n` exactly for `n ≤ 8`; for `n = 9, 10` the `n`-th power of the
/// best known upper bound on `γ_n`.
pub fn hermite_power(n: usize) -> Option<Rat> {
    Some(match n {
        1 => rat(1, 1),
        2 => rat(4, 3),
        3 => rat(2, 1),
        4 => rat(4, 1),
        5 => rat(8, 1),
        6 => rat(64, 3),
        7 => rat(64, 1),
        8 => rat(256, 1),
        9 => Pow::pow(rat(21326, 10000), 9u32),
        10 => Pow::pow(rat(22636, 10000), 10u32),
        _ => return None,
    })
}

/// Whether [`hermite_power`] is exact rather than an upper bound.
pub fn is_exact(n: usize) -> bool {
    (1..=8).contains(&n)
}

/// Largest `k` with `k² ≤ γ_n^n`: bounds `|det(v_1, …, v_n)|` for
/// independent minimal vectors.
pub fn index_bound(n: usize) -> Option<u64> {
    let g = hermite_power(n)?;
    let mut k: u64 = 0;
    while Rat::from_integer(BigInt::from((k + 1) * (k + 1))) <= g {
        k += 1;
    }
    Some(k)
}
