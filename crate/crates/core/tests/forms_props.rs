mod common;

use common::*;
use num_traits::Signed;
use proptest::prelude::*;
use voronoi_core::equiv::unimodular_inverse;
use voronoi_core::linalg::{det_i64, rat_int};
use voronoi_core::{lll_reduce, minimal_vectors, perfection_data, watson_identity_check, Definiteness, QuadraticForm, VectorConfiguration};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_vectors_match_box_scan(seed in any::<u64>(), n in 1usize..=4) {
        let a = random_pd_form(n, 3, &mut rng(seed));
        let (m, v) = minimal_vectors(&a).unwrap();
        let (bm, bv) = brute_minimal_vectors(&a);
        prop_assert_eq!(m, bm);
        prop_assert_eq!(v.vectors(), &bv[..]);
    }

    #[test]
    fn minimal_vectors_are_equivariant(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_pd_form(n, 2, &mut r);
        let p = random_unimodular(n, 6, &mut r);
        let (m, v) = minimal_vectors(&a).unwrap();
        let (mp, vp) = minimal_vectors(&a.transform(&p)).unwrap();
        prop_assert_eq!(m, mp);
        prop_assert_eq!(vp, v.transform(&unimodular_inverse(&p).unwrap()));
    }

    #[test]
    fn gram_matrices_classify_positive(seed in any::<u64>(), n in 1usize..=5) {
        let a = random_pd_form(n, 3, &mut rng(seed));
        prop_assert_eq!(a.classify(), Definiteness::PositiveDefinite);
        let neg = a.scale(&rat_int(-1));
        match neg.classify() {
            Definiteness::Indefinite(x) => prop_assert!(neg.eval_rat(&x).is_negative()),
            d => prop_assert!(false, "{:?}", d),
        }
    }

    #[test]
    fn form_text_round_trips(seed in any::<u64>(), n in 1usize..=5) {
        let a = random_pd_form(n, 4, &mut rng(seed));
        prop_assert_eq!(QuadraticForm::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn perfection_rank_nullity(seed in any::<u64>(), n in 2usize..=4) {
        let a = random_pd_form(n, 2, &mut rng(seed));
        let v = minimal_vectors(&a).unwrap().1;
        let d = perfection_data(&v);
        prop_assert_eq!(d.rank + d.relations.len(), v.len());
        prop_assert!(span_lemma_holds(&v));
    }

    #[test]
    fn lll_moves_by_unimodular_matrix(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let a = random_pd_form(n, 2, &mut r);
        let v = minimal_vectors(&a).unwrap().1;
        let v = v.transform(&random_unimodular(n, 8, &mut r));
        let (red, p) = lll_reduce(&v);
        prop_assert_eq!(det_i64(&p).abs(), 1.into());
        prop_assert_eq!(&red, &v.transform(&p));
        prop_assert!(red.max_abs_entry() <= v.max_abs_entry());
    }
}

#[test]
fn watson_identity_on_random_instances() {
    let mut r = rng(0x5741);
    for _ in 0..1000 {
        let n = rand::Rng::gen_range(&mut r, 1..=7);
        let a = random_pd_form(n, 3, &mut r);
        let code = random_code(n, &mut r);
        let rep = watson_identity_check(&a, &code).unwrap();
        assert_eq!(rep.lhs, rep.rhs, "{code:?}");
    }
}

#[test]
fn span_lemma_on_perfect_forms() {
    for n in 2..=5 {
        for p in voronoi_core::enumerate::enumerate_perfect_forms(n).unwrap() {
            let v: VectorConfiguration = minimal_vectors(&p.form).unwrap().1;
            assert_eq!(v, p.min_vectors);
            assert!(span_lemma_holds(&v), "{v:?}");
        }
    }
}
