mod common;

use std::collections::{BTreeSet, VecDeque};

use common::*;
use mas_core::compat::{
    compatible_reachability, cycles_from, deadlock_free, implementable_cycles, livelock_free,
    partners, unfold, unfoldings, UNKNOWN,
};
use mas_core::oracle::{equivalent_among, random_mas, random_spec_pair};
use mas_core::automaton::Structure;
use mas_core::{Mas, Masp};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every reachable pair of `s1 × unfold(s2, s1)` agrees on its first component.
fn first_components_agree(s1: &Mas, s2: &Mas) -> bool {
    let u = unfold(s2, s1).unwrap();
    let start = (s1.initial(), u.mas.initial());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((q1, v)) = queue.pop_front() {
        if u.reference(v) != Some(q1) {
            return false;
        }
        for a in s1.alphabet().actions() {
            if let (Some(t1), Some(t2)) = (s1.succ(q1, a), u.mas.succ(v, a)) {
                if seen.insert((t1, t2)) {
                    queue.push_back((t1, t2));
                }
            }
        }
    }
    true
}

#[test]
fn choice_spec_has_a_cycle_but_none_implementable() {
    let s = mas("exit_choice.mas");
    let q0 = s.id("0").unwrap();
    let shown: Vec<String> = cycles_from(&s, q0).unwrap().iter().map(|c| c.show(&s)).collect();
    assert!(shown.contains(&"{0 -> {a}}".to_string()), "{shown:?}");
    assert!(implementable_cycles(&s).unwrap().is_empty());
}

#[test]
fn example_pair_is_deadlock_free_but_livelocks() {
    let (s1, s2) = (mas("s1.mas"), mas("s2.mas"));
    assert!(deadlock_free(&s1, &s2).unwrap().free());
    let report = compatible_reachability(&s1, &s2).unwrap();
    assert!(!report.compatible());
    assert_eq!(report.reasons(), vec!["livelock cycle {(0,0') -> {a}}".to_string()]);
}

#[test]
fn multi_partner_state_is_split() {
    let (s1, s2) = (mas("branching.mas"), mas("looping.mas"));
    let pm = partners(&s1, &s2).unwrap();
    assert!(pm.of_right(s2.id("u").unwrap()).len() >= 2);
    assert!(!pm.single_partners());
    let u = unfold(&s2, &s1).unwrap();
    let mut names: Vec<&str> = u.mas.states().map(|q| u.mas.name(q)).collect();
    names.sort();
    let unknown = format!("({UNKNOWN},u)");
    assert_eq!(names, ["(f,u)", "(i,u)", unknown.as_str(), "(x,u)", "(y,u)"]);
    let (v1, v2) = unfoldings(&s1, &s2).unwrap();
    assert!(partners(&v1.mas, &v2.mas).unwrap().single_partners());
}

#[test]
fn unfolding_preserves_models_on_fixture_pairs() {
    let pairs = [
        ("s1.mas", "s2.mas"),
        ("s2.mas", "s1.mas"),
        ("mms_s1.mas", "mms_s2.mas"),
        ("branching.mas", "looping.mas"),
        ("looping.mas", "branching.mas"),
    ];
    for (a, b) in pairs {
        let (s1, s2) = (mas(a), mas(b));
        let universe = if a.starts_with('b') || a.starts_with('l') { universe_ab3() } else { universe_abc2() };
        let u = unfold(&s2, &s1).unwrap();
        let eq = equivalent_among(universe, &Masp::from_mas(s2.clone()), &Masp::from_mas(u.mas));
        assert!(eq.equivalent, "{a} {b}");
        assert!(first_components_agree(&s1, &s2), "{a} {b}");
        let (v1, v2) = unfoldings(&s1, &s2).unwrap();
        assert!(partners(&v1.mas, &v2.mas).unwrap().single_partners(), "{a} {b}");
    }
}

#[test]
fn livelock_freedom_requires_single_partners() {
    let (s1, s2) = (mas("looping.mas"), mas("branching.mas"));
    assert!(livelock_free(&s1, &s2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumerated_cycles_are_cycles(seed in any::<u64>(), k in 1usize..=3) {
        let s = random_mas(&mut ChaCha8Rng::seed_from_u64(seed), &alphabet_of_size(k), 4);
        for q in s.states() {
            for c in cycles_from(&s, q).unwrap() {
                prop_assert!(c.is_cycle_of(&s), "{}", c.show(&s));
            }
        }
    }

    #[test]
    fn unfoldings_are_single_partner_and_aligned(seed in any::<u64>(), k in 1usize..=3) {
        let (s1, s2) = random_spec_pair(seed, &alphabet_of_size(k), 3);
        let (v1, v2) = unfoldings(&s1, &s2).unwrap();
        prop_assert!(partners(&v1.mas, &v2.mas).unwrap().single_partners());
        prop_assert!(first_components_agree(&s1, &s2));
        prop_assert!(first_components_agree(&v1.mas, &s2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unfolding_preserves_models(seed in any::<u64>()) {
        let (s1, s2) = random_spec_pair(seed, &ab(), 3);
        let u = unfold(&s2, &s1).unwrap();
        let eq = equivalent_among(universe_ab3(), &Masp::from_mas(s2), &Masp::from_mas(u.mas));
        prop_assert!(eq.equivalent);
    }
}
