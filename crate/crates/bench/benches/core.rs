use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use voronoi_bench::{perfect_configs, scrambled};
use voronoi_core::cone::cone_facets;
use voronoi_core::equiv::{are_equivalent, automorphism_group};
use voronoi_core::forms::sym_vec;
use voronoi_core::realize::test_realizability;
use voronoi_core::{minimal_vectors, QuadraticForm};

fn minvec(c: &mut Criterion) {
    let mut g = c.benchmark_group("minvec");
    for n in [4, 6] {
        let (a, _) = perfect_configs(n).pop().unwrap();
        g.bench_function(format!("perfect n={n}"), |b| b.iter(|| minimal_vectors(black_box(&a)).unwrap()));
    }
    let a8 = QuadraticForm::voronoi_first(8);
    g.bench_function("A8", |b| b.iter(|| minimal_vectors(black_box(&a8)).unwrap()));
    g.finish();
}

fn facets(c: &mut Criterion) {
    let mut g = c.benchmark_group("cone_facets");
    for n in [4, 5] {
        let (_, v) = perfect_configs(n).pop().unwrap();
        let gens: Vec<Vec<i64>> = v.vectors().iter().map(|x| sym_vec(x)).collect();
        g.bench_function(format!("perfect cone n={n}"), |b| b.iter(|| cone_facets(black_box(&gens)).unwrap()));
    }
    g.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut g = c.benchmark_group("equivalence");
    for n in [5, 6] {
        let (_, v) = perfect_configs(n).pop().unwrap();
        let w = scrambled(&v);
        g.bench_function(format!("isometry n={n}"), |b| b.iter(|| are_equivalent(black_box(&v), black_box(&w)).unwrap()));
        g.bench_function(format!("stabilizer n={n}"), |b| b.iter(|| automorphism_group(black_box(&v)).unwrap()));
    }
    g.finish();
}

fn realizability(c: &mut Criterion) {
    let mut g = c.benchmark_group("realizability");
    g.sample_size(20);
    for n in [4, 5] {
        let (_, v) = perfect_configs(n).pop().unwrap();
        let sub = v.subset(|i| i + 1 < v.len());
        g.bench_function(format!("perfect minus one n={n}"), |b| b.iter(|| test_realizability(black_box(&sub)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, minvec, facets, equivalence, realizability);
criterion_main!(benches);
