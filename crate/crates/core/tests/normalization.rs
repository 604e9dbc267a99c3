mod common;

use common::*;
use mas_core::normalize::{
    acc_consistent, attracted, delta_acc_consistent, f_acc_consistent, is_normal, normal_form,
    normal_form_traced, size_measure,
};
use mas_core::oracle::{equivalent_among, random_mas};
use mas_core::automaton::Structure;
use mas_core::{Mas, Masp};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn four_predicates(s: &Mas) -> bool {
    s.is_bottom()
        || s.states().all(|q| {
            attracted(s, q).unwrap()
                && acc_consistent(s, q).unwrap()
                && f_acc_consistent(s, q).unwrap()
                && delta_acc_consistent(s, q).unwrap()
        })
}

#[test]
fn fixtures_are_already_normal() {
    for name in SPEC_FIXTURES {
        let s = mas(name);
        assert!(is_normal(&s), "{name}");
        assert_eq!(normal_form(&s), s, "{name}");
    }
}

#[test]
fn fixture_model_sets_survive_normalization() {
    for name in SPEC_FIXTURES {
        let s = mas(name);
        let universe = if s.alphabet().len() == 2 { universe_ab3() } else { universe_abc2() };
        let eq = equivalent_among(universe, &Masp::from_mas(s.clone()), &Masp::from_mas(normal_form(&s)));
        assert!(eq.equivalent, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_form_is_idempotent_and_well_formed(seed in any::<u64>(), k in 1usize..=3) {
        let s = random_mas(&mut ChaCha8Rng::seed_from_u64(seed), &alphabet_of_size(k), 4);
        let (n, trace) = normal_form_traced(&s);
        prop_assert_eq!(&normal_form(&n), &n);
        prop_assert!(four_predicates(&n));
        prop_assert!(is_normal(&n));
        // Every sweep but the last shrinks the measure; the last changes nothing.
        let mut previous = size_measure(&s);
        for (i, &m) in trace.iter().enumerate() {
            if i + 1 == trace.len() && !n.is_bottom() {
                prop_assert!(m <= previous);
            } else {
                prop_assert!(m < previous, "measure {} after {}", m, previous);
            }
            previous = m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalization_preserves_models(seed in any::<u64>()) {
        let s = random_mas(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 4);
        let eq = equivalent_among(universe_ab3(), &Masp::from_mas(s.clone()), &Masp::from_mas(normal_form(&s)));
        prop_assert!(eq.equivalent, "witness {:?}", eq.witness.map(|m| mas_core::oracle::canonical_form(&m)));
    }
}
