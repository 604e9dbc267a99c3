#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use mas_core::dsl::{parse, Value};
use mas_core::oracle::enumerate_automata;
use mas_core::{Alphabet, Automaton, Mas};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> Value {
    parse(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}")).value
}

pub fn mas(name: &str) -> Mas {
    fixture(name).into_mas().unwrap()
}

pub fn aut(name: &str) -> Automaton {
    fixture(name).into_automaton().unwrap()
}

pub const SPEC_FIXTURES: &[&str] = &[
    "s1.mas",
    "s2.mas",
    "exit_choice.mas",
    "mms_s1.mas",
    "mms_s2.mas",
    "branching.mas",
    "looping.mas",
];

pub fn abc() -> Alphabet {
    Alphabet::new(["a", "b", "c"]).unwrap()
}

pub fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

/// Alphabet `{a}`, `{a,b}` or `{a,b,c}`.
pub fn alphabet_of_size(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

/// Every automaton over `{a,b}` with at most three states, built once.
pub fn universe_ab3() -> &'static [Automaton] {
    static U: OnceLock<Vec<Automaton>> = OnceLock::new();
    U.get_or_init(|| enumerate_automata(&ab(), 3).unwrap())
}

/// Every automaton over `{a,b,c}` with at most two states, built once.
pub fn universe_abc2() -> &'static [Automaton] {
    static U: OnceLock<Vec<Automaton>> = OnceLock::new();
    U.get_or_init(|| enumerate_automata(&abc(), 2).unwrap())
}
