mod common;

use kst_core::drc::{drc_stats, filter_set, find_success, DrcParams, DrcSampler, Verdict};
use kst_core::hypergraph::{combinations, UniformHypergraph};
use kst_core::{ExactStats, FloatStats, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn three_graph(n: usize) -> impl Strategy<Value = UniformHypergraph> {
    let all = combinations(n, 3);
    proptest::collection::vec(any::<bool>(), all.len()).prop_map(move |mask| {
        let edges = all.iter().zip(&mask).filter(|(_, &b)| b).map(|(e, _)| e.clone());
        UniformHypergraph::new(3, n, edges, None).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn asserted_claims_hold(h in (4usize..=7).prop_flat_map(three_graph), t in 1usize..=3, c in 1i64..=3) {
        let params = DrcParams::new(2, t, q(2, 1), q(c, 1)).unwrap();
        let st: ExactStats = drc_stats(&h, &params, 1 << 20).unwrap();
        for row in st.claims() {
            prop_assert!(row.verdict != Verdict::Fail, "{} : {:?} vs {:?}", row.id, row.lhs, row.rhs);
        }
        prop_assert!(st.p <= Rational::one());
        // with t = 1 the non-rich bound forces every non-rich pair to have probability zero
        if t == 1 {
            prop_assert!(st.claim5_max.is_zero());
        }
    }

    #[test]
    fn four_uniform_claims_hold(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let h = common::random_hypergraph(4, 6, 0.7, &mut rng);
        let params = DrcParams::new(2, 1, q(3, 2), q(1, 1)).unwrap();
        let st: ExactStats = drc_stats(&h, &params, 1 << 20).unwrap();
        prop_assert!(st.all_hold());
    }

    #[test]
    fn filter_keeps_only_max_codegree_completions(h in three_graph(6), a in 0u32..6, b in 0u32..6) {
        prop_assume!(a != b);
        let got = filter_set(&h, &[a, b]).unwrap();
        let d = h.codegree(&[a, b]).unwrap();
        for v in 0..6u32 {
            let in_edge = v != a && v != b && h.has_edge(&[a, b, v]);
            let max = if in_edge {
                [h.codegree(&[a, v]).unwrap(), h.codegree(&[b, v]).unwrap(), d].into_iter().max().unwrap()
            } else {
                0
            };
            prop_assert_eq!(got.contains(&v), in_edge && max == d);
        }
    }

    #[test]
    fn success_extraction(h in (5usize..=7).prop_flat_map(three_graph), t in 1usize..=2) {
        let params = DrcParams::new(2, t, q(2, 1), q(1, 1)).unwrap();
        let st: ExactStats = drc_stats(&h, &params, 1 << 20).unwrap();
        if st.expected_gain.is_positive() {
            let win = find_success(&h, &params, 1 << 20).unwrap().expect("positive expectation has a witness");
            let frac = q(win.rich_sets as i64, win.total_sets as i64);
            prop_assert!(frac >= Rational::one() - params.alpha.recip());
        }
    }
}

#[test]
fn float_stats_track_exact() {
    let mut rng = common::rng(21);
    for _ in 0..20 {
        let h = common::random_hypergraph(3, 7, 0.6, &mut rng);
        let params = DrcParams::new(2, 2, q(2, 1), q(1, 1)).unwrap();
        let ex: ExactStats = drc_stats(&h, &params, 1 << 20).unwrap();
        let fl: FloatStats = drc_stats(&h, &params, 1 << 20).unwrap();
        let to_f = |x: &Rational| x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap();
        for (a, b) in ex.claims().iter().zip(fl.claims()) {
            assert!((to_f(&a.lhs) - b.lhs).abs() <= 1e-9 * b.lhs.abs().max(1.0), "{}", a.id);
            assert!((to_f(&a.rhs) - b.rhs).abs() <= 1e-9 * b.rhs.abs().max(1.0), "{}", a.id);
        }
    }
}

#[test]
fn sampler_draws_only_tabled_tuples_with_matching_sets() {
    let mut rng = common::rng(22);
    let h = common::random_hypergraph(3, 7, 0.7, &mut rng);
    let params = DrcParams::new(2, 1, q(2, 1), q(1, 1)).unwrap();
    let s = DrcSampler::new(&h, &params, 1 << 20).unwrap();
    for seed in 0..500 {
        let out = s.sample(seed);
        match &out.tuple {
            Some(t) => assert_eq!(out.a, filter_set(s.pruned(), t).unwrap()),
            None => assert!(out.a.is_empty()),
        }
    }
}
