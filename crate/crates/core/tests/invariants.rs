mod common;

use common::queries;
use dso_core::baseline::ReplacementTable;
use dso_core::fast::QUERY_LOOKUP_BOUND;
use dso_core::oracle::LookupCounter;
use dso_core::sampled::{SampledConfig, SampledDso};
use dso_core::{DsoConfig, FullDso, Graph, PathLength, TruncatedOracle};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..9, 1u32..4).prop_flat_map(|(n, w)| {
        prop::collection::vec((0..n, 0..n, 1..=u64::from(w)), 0..3 * n).prop_map(move |edges| {
            let edges = edges.into_iter().filter(|&(a, b, _)| a != b);
            Graph::new(n, w, true, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_oracle_is_exact(g in graph(), seed in any::<u64>()) {
        let table = ReplacementTable::build(&g);
        let dso = FullDso::build(g.clone(), &DsoConfig { seed, ..Default::default() }).unwrap();
        prop_assert!(dso.cap() >= g.vertex_count() as u64 * u64::from(g.max_weight()));
        for (u, v, f) in queries(&g) {
            let mut probe = LookupCounter::default();
            prop_assert_eq!(dso.query_probed(u, v, f, &mut probe).unwrap(), table.get(u, v, f));
            prop_assert!(probe.lookups <= QUERY_LOOKUP_BOUND);
        }
    }

    #[test]
    fn sampled_never_underestimates(g in graph(), seed in any::<u64>(), confidence in 0.05f64..0.5) {
        let table = ReplacementTable::build(&g);
        let cfg = SampledConfig { seed, confidence, ..Default::default() };
        // Tiny constants can make the list-size check unsatisfiable; that is
        // a build error, not a wrong answer.
        let built = SampledDso::build(&g, 3, &cfg);
        prop_assume!(!matches!(built, Err(dso_core::Error::RetryBudgetExhausted { .. })));
        let s = built.unwrap();
        for (u, v, f) in queries(&g) {
            let truth = table.get(u, v, f).capped(3);
            prop_assert!(s.query(u, v, f) >= truth);
        }
    }

    #[test]
    fn path_length_order_puts_unreachable_last(a in any::<u64>()) {
        prop_assert!(PathLength::Finite(a) < PathLength::Unreachable);
        prop_assert_eq!(PathLength::Finite(a).min(PathLength::Unreachable), PathLength::Finite(a));
    }
}
