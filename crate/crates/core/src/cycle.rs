//! Cycles of a specification: partial maps from states to the action sets
//! that keep a run inside the loop.

use std::collections::BTreeMap;

use crate::alphabet::ActionSet;
use crate::automaton::StateId;
use crate::mas::Mas;

/// A partial map `C : Q ⇀ 2^Σ`. Ordering is the canonical cycle order used
/// wherever cycles are processed in sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(BTreeMap<StateId, ActionSet>);

impl Cycle {
    pub fn new() -> Self {
        Cycle::default()
    }

    pub fn get(&self, q: StateId) -> Option<ActionSet> {
        self.0.get(&q).copied()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.contains_key(&q)
    }

    pub fn insert(&mut self, q: StateId, set: ActionSet) {
        self.0.insert(q, set);
    }

    pub(crate) fn with(&self, q: StateId, set: ActionSet) -> Cycle {
        let mut c = self.clone();
        c.insert(q, set);
        c
    }

    pub fn domain(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, ActionSet)> + '_ {
        self.0.iter().map(|(&q, &s)| (q, s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the four defining clauses against `s`: nonempty sets, each
    /// covered by an acceptance entry, the domain inside `post(q)`, and
    /// closure of the domain under the cycle's actions.
    pub fn is_cycle_of(&self, s: &Mas) -> bool {
        if self.is_empty() || s.is_bottom() {
            return false;
        }
        self.iter().all(|(q, set)| {
            if !s.skel.contains(q) || set.is_empty() {
                return false;
            }
            if !s.acc(q).iter().any(|x| set.is_subset(x)) {
                return false;
            }
            let post = s.skel.post(q);
            if !self.domain().all(|d| post.contains(&d)) {
                return false;
            }
            set.iter()
                .all(|a| s.succ(q, a).is_some_and(|t| self.contains(t)))
        })
    }

    /// Renders as `{q -> {a}, r -> {b,c}}` with the names of `s`.
    pub fn show(&self, s: &Mas) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|(q, set)| format!("{} -> {}", s.name(q), s.skel.alphabet.show_set(set)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl FromIterator<(StateId, ActionSet)> for Cycle {
    fn from_iter<T: IntoIterator<Item = (StateId, ActionSet)>>(iter: T) -> Self {
        Cycle(iter.into_iter().collect())
    }
}
