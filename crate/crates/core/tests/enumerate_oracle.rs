mod common;

use common::*;
use voronoi_core::enumerate::ClassStore;
use voronoi_core::forms::perfection_rank;
use voronoi_core::realize::test_realizability;
use voronoi_core::VectorConfiguration;

/// Classes per perfection rank among the realizable well-rounded
/// configurations built from `vs`.
fn brute_classes(n: usize, vs: &[Vec<i64>], sizes: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    let top = n * (n + 1) / 2;
    let mut stores: Vec<ClassStore> = (n..=top).map(|_| ClassStore::new()).collect();
    for s in subsets_up_to(vs, *sizes.end()) {
        if !sizes.contains(&s.len()) {
            continue;
        }
        let v = VectorConfiguration::new(n, s).unwrap();
        if !v.is_well_rounded() || !test_realizability(&v).unwrap().verdict.is_realizable() {
            continue;
        }
        stores[perfection_rank(&v) - n].insert(v).unwrap();
    }
    stores.iter().map(|s| s.len()).collect()
}

fn enumerated(n: usize) -> Vec<usize> {
    class_layers(n, n * (n + 1) / 2).iter().map(|l| l.len()).collect()
}

#[test]
fn planar_classes_match_exhaustive_search() {
    let brute = brute_classes(2, &all_vectors(2, 2), 2..=6);
    assert_eq!(brute, vec![1, 1]);
    assert_eq!(enumerated(2), brute);
}

#[test]
fn spatial_classes_match_exhaustive_search() {
    let brute = brute_classes(3, &all_vectors(3, 1), 3..=6);
    assert_eq!(brute, vec![1, 2, 1, 1]);
    assert_eq!(enumerated(3), brute);
}

#[test]
fn layers_are_pairwise_inequivalent_and_minimal() {
    for n in 2..=4 {
        for (k, layer) in class_layers(n, n * (n + 1) / 2).iter().enumerate() {
            let mut store = ClassStore::new();
            for v in layer {
                assert!(v.is_well_rounded());
                assert_eq!(perfection_rank(v), n + k);
                assert!(test_realizability(v).unwrap().verdict.is_realizable());
                assert!(store.insert(v.clone()).unwrap(), "repeated class {v:?}");
            }
        }
    }
}

#[test]
fn rank_equals_size_for_small_configurations() {
    for n in 2..=4 {
        for layer in class_layers(n, n + 5) {
            for v in layer.iter().filter(|v| v.len() <= n + 5) {
                assert_eq!(perfection_rank(v), v.len(), "{v:?}");
                assert!(span_lemma_holds(v));
            }
        }
    }
}
