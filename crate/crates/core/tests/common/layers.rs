use voronoi_core::enumerate::{enumerate_rank_n, enumerate_rank_plus, RankNOptions, RankPlusOptions};
use voronoi_core::VectorConfiguration;

/// Class representatives of every perfection rank from `n` to `top`.
pub fn class_layers(n: usize, top: usize) -> Vec<Vec<VectorConfiguration>> {
    let mut cur: Vec<VectorConfiguration> =
        enumerate_rank_n(n, &RankNOptions::default()).unwrap().into_iter().map(|c| c.config).collect();
    let mut out = vec![cur.clone()];
    for r in n + 1..=top.min(n * (n + 1) / 2) {
        cur = enumerate_rank_plus(n, r, &cur, &RankPlusOptions::default()).unwrap();
        out.push(cur.clone());
    }
    out
}
