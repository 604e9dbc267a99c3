mod common;

use common::*;
use mas_core::correction::quotient;
use mas_core::dsl::{parse, serialize, Value};
use mas_core::oracle::{random_automaton, random_mas, random_spec_pair};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ALL_FIXTURES: &[&str] = &[
    "s1.mas",
    "s2.mas",
    "exit_choice.mas",
    "mms_s1.mas",
    "mms_s2.mas",
    "branching.mas",
    "looping.mas",
    "m_prime.aut",
    "m_second.aut",
    "m11.aut",
    "m12.aut",
    "golden/s1.mas",
    "golden/s1_par_s2.mas",
    "golden/s1_quo_s2.masp",
];

fn round_trips(name: &str, v: &Value) -> Result<(), TestCaseError> {
    let text = serialize(name, v);
    let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back.name, name);
    prop_assert_eq!(&back.value, v);
    prop_assert_eq!(serialize(&back.name, &back.value), text);
    Ok(())
}

#[test]
fn fixtures_round_trip() {
    for f in ALL_FIXTURES {
        let doc = parse(&fixture_text(f)).unwrap();
        round_trips(&doc.name, &doc.value).unwrap();
    }
}

#[test]
fn golden_files_are_canonical() {
    for f in ["golden/s1.mas", "golden/s1_par_s2.mas", "golden/s1_quo_s2.masp"] {
        let text = fixture_text(f);
        let doc = parse(&text).unwrap();
        assert_eq!(serialize(&doc.name, &doc.value), text, "{f}");
    }
    let s1 = parse(&fixture_text("s1.mas")).unwrap();
    assert_eq!(serialize(&s1.name, &s1.value), fixture_text("golden/s1.mas"));
}

#[test]
fn diagnostics_carry_positions() {
    let cases = [
        ("alphabet: a\nmas X {\n  init p\n  state p marked acc { {} }\n  p -a-> z\n}\n", 5, "unknown state"),
        ("alphabet: a\nmas X {\n  init q_unknown\n  state q_unknown marked acc { {} }\n}\n", 4, "reserved"),
        ("alphabet: a\nautomaton X {\n  init p\n  state p marked acc { {} }\n}\n", 4, "acc"),
        ("alphabet: a, a\n", 1, "duplicate"),
    ];
    for (text, line, needle) in cases {
        let err = parse(text).unwrap_err();
        assert_eq!(err.line, line, "{err}");
        assert!(err.to_string().contains(needle), "{err}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_values_round_trip(seed in any::<u64>(), k in 0usize..=3) {
        let al = alphabet_of_size(k.max(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        round_trips("M", &Value::Automaton(random_automaton(&mut rng, &al, 4)))?;
        round_trips("S", &Value::Mas(random_mas(&mut rng, &al, 4)))?;
        let (s1, s2) = random_spec_pair(seed, &al, 3);
        round_trips("Q", &Value::Masp(quotient(&s1, &s2).unwrap()))?;
    }
}
