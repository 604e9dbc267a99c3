//! Marked acceptance specifications and their priority extension.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{AcceptanceSet, Action, ActionSet, Alphabet};
use crate::automaton::{build_skeleton, Automaton, KeyedSkeleton, Skeleton, StateId, Structure};
use crate::{Error, Result};

/// A marked acceptance specification `(Q, q0, δ, Acc, F)`.
///
/// The bottom specification `S⊥` (no models) is a flagged value with no
/// states; it is not an ordinary zero-state record.
#[derive(Clone, Debug)]
pub struct Mas {
    pub(crate) skel: Skeleton,
    pub(crate) acc: Vec<AcceptanceSet>,
    pub(crate) bottom: bool,
}

impl Structure for Mas {
    fn skeleton(&self) -> &Skeleton {
        &self.skel
    }
}

impl Mas {
    pub fn bottom(alphabet: Alphabet) -> Mas {
        Mas {
            skel: Skeleton::empty(alphabet),
            acc: Vec::new(),
            bottom: true,
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.bottom
    }

    pub(crate) fn from_parts(skel: Skeleton, acc: Vec<AcceptanceSet>) -> Mas {
        debug_assert_eq!(skel.len(), acc.len());
        Mas {
            skel,
            acc,
            bottom: false,
        }
    }

    pub fn len(&self) -> usize {
        self.skel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skel.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.skel.initial
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        self.skel.states()
    }

    pub fn name(&self, q: StateId) -> &str {
        self.skel.name(q)
    }

    pub fn is_marked(&self, q: StateId) -> bool {
        self.skel.is_marked(q)
    }

    pub fn succ(&self, q: StateId, a: Action) -> Option<StateId> {
        self.skel.succ(q, a)
    }

    pub fn acc(&self, q: StateId) -> &AcceptanceSet {
        &self.acc[q.index()]
    }

    /// `Un(S)`: the skeleton without acceptance sets.
    pub fn underlying(&self) -> Result<Automaton> {
        if self.bottom {
            return Err(Error::Bottom);
        }
        Ok(Automaton::from_skeleton(self.skel.clone()))
    }

    /// Drops states unreachable from the initial state.
    pub fn gc(&self) -> Mas {
        if self.bottom {
            return self.clone();
        }
        let keep = self.skel.reachable();
        self.restrict(&keep).0
    }

    pub(crate) fn restrict(&self, keep: &[bool]) -> (Mas, Vec<Option<StateId>>) {
        let (skel, map) = self.skel.restrict(keep);
        let acc = self
            .states()
            .filter(|q| keep[q.index()])
            .map(|q| self.acc[q.index()].clone())
            .collect();
        (Mas::from_parts(skel, acc), map)
    }

    /// Human-readable `{{a}, {a,b}}` rendering of `Acc(q)`.
    pub fn show_acc(&self, q: StateId) -> String {
        self.skel.alphabet.show_acc(self.acc(q))
    }

    fn keyed(&self) -> (bool, KeyedSkeleton<'_>, BTreeMap<&str, &AcceptanceSet>) {
        let acc = self
            .states()
            .map(|q| (self.name(q), self.acc(q)))
            .collect();
        (self.bottom, KeyedSkeleton::of(&self.skel), acc)
    }
}

impl PartialEq for Mas {
    fn eq(&self, other: &Self) -> bool {
        self.keyed() == other.keyed()
    }
}

impl Eq for Mas {}

/// One priority: a disjunction of `(state, action)` pairs, at least one
/// of which every model must realize once the states are implemented.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrioritySet(BTreeSet<(StateId, Action)>);

impl PrioritySet {
    pub fn new<I: IntoIterator<Item = (StateId, Action)>>(pairs: I) -> Self {
        PrioritySet(pairs.into_iter().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, Action)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn states(&self) -> BTreeSet<StateId> {
        self.0.iter().map(|&(q, _)| q).collect()
    }
}

/// A MAS with priorities: the base specification plus a conjunction of
/// [`PrioritySet`]s.
#[derive(Clone, Debug)]
pub struct Masp {
    pub base: Mas,
    pub(crate) priorities: BTreeSet<PrioritySet>,
}

impl Masp {
    pub fn new(base: Mas, priorities: impl IntoIterator<Item = PrioritySet>) -> Result<Masp> {
        let priorities: BTreeSet<PrioritySet> = priorities.into_iter().collect();
        for p in &priorities {
            if p.is_empty() {
                return Err(Error::EmptyPriority);
            }
            for (q, a) in p.iter() {
                base.skel.check(q)?;
                if a.index() >= base.skel.alphabet.len() {
                    return Err(Error::UnknownAction(format!("#{}", a.index())));
                }
            }
        }
        Ok(Masp { base, priorities })
    }

    pub fn from_mas(base: Mas) -> Masp {
        Masp {
            base,
            priorities: BTreeSet::new(),
        }
    }

    pub fn priorities(&self) -> impl Iterator<Item = &PrioritySet> {
        self.priorities.iter()
    }

    pub fn priority_count(&self) -> usize {
        self.priorities.len()
    }

    pub fn is_bottom(&self) -> bool {
        self.base.is_bottom()
    }

    /// Priority sets rendered with state and action names, each sorted.
    pub fn named_priorities(&self) -> BTreeSet<BTreeSet<(String, String)>> {
        self.priorities
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(q, a)| {
                        (
                            self.base.name(q).to_string(),
                            self.base.skel.alphabet.name(a).to_string(),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// Re-targets priorities after the base was rebuilt: pairs whose state
    /// disappeared are dropped, and sets left empty are removed.
    pub(crate) fn remap(
        priorities: &BTreeSet<PrioritySet>,
        map: &[Option<StateId>],
    ) -> BTreeSet<PrioritySet> {
        priorities
            .iter()
            .map(|p| PrioritySet::new(p.iter().filter_map(|(q, a)| map[q.index()].map(|n| (n, a)))))
            .filter(|p| !p.is_empty())
            .collect()
    }
}

impl Structure for Masp {
    fn skeleton(&self) -> &Skeleton {
        &self.base.skel
    }
}

impl PartialEq for Masp {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.named_priorities() == other.named_priorities()
    }
}

impl Eq for Masp {}

/// Chained builder for specifications; acceptance entries are given as
/// lists of action names, `&[]` being the empty ready set.
#[derive(Clone, Debug)]
pub struct MasBuilder {
    alphabet: Alphabet,
    states: Vec<(String, bool)>,
    accs: Vec<Vec<Vec<String>>>,
    edges: Vec<(String, String, String)>,
    initial: Option<String>,
    priorities: Vec<Vec<(String, String)>>,
}

impl MasBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        MasBuilder {
            alphabet,
            states: Vec::new(),
            accs: Vec::new(),
            edges: Vec::new(),
            initial: None,
            priorities: Vec::new(),
        }
    }

    fn push(mut self, name: &str, marked: bool, acc: &[&[&str]]) -> Self {
        self.states.push((name.to_string(), marked));
        self.accs.push(
            acc.iter()
                .map(|x| x.iter().map(|s| s.to_string()).collect())
                .collect(),
        );
        self
    }

    pub fn state(self, name: &str, acc: &[&[&str]]) -> Self {
        self.push(name, false, acc)
    }

    pub fn marked(self, name: &str, acc: &[&[&str]]) -> Self {
        self.push(name, true, acc)
    }

    pub fn edge(mut self, from: &str, action: &str, to: &str) -> Self {
        self.edges
            .push((from.to_string(), action.to_string(), to.to_string()));
        self
    }

    pub fn init(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    pub fn priority(mut self, pairs: &[(&str, &str)]) -> Self {
        self.priorities.push(
            pairs
                .iter()
                .map(|(q, a)| (q.to_string(), a.to_string()))
                .collect(),
        );
        self
    }

    pub fn build(self) -> Result<Mas> {
        let skel = build_skeleton(self.alphabet, &self.states, &self.edges, self.initial)?;
        let mut acc = Vec::with_capacity(self.accs.len());
        for entries in &self.accs {
            let mut set = AcceptanceSet::new();
            for entry in entries {
                let mut x = ActionSet::EMPTY;
                for name in entry {
                    let a = skel
                        .alphabet
                        .action(name)
                        .ok_or_else(|| Error::UnknownAction(name.clone()))?;
                    x = x.with(a);
                }
                set.insert(x);
            }
            acc.push(set);
        }
        Ok(Mas::from_parts(skel, acc))
    }

    pub fn build_masp(self) -> Result<Masp> {
        let priorities = self.priorities.clone();
        let base = self.build()?;
        let mut sets = Vec::new();
        for p in &priorities {
            let mut pairs = Vec::new();
            for (q, a) in p {
                let q = base.state(q)?;
                let a = base
                    .skel
                    .alphabet
                    .action(a)
                    .ok_or_else(|| Error::UnknownAction(a.clone()))?;
                pairs.push((q, a));
            }
            sets.push(PrioritySet::new(pairs));
        }
        Masp::new(base, sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s1() -> Mas {
        MasBuilder::new(Alphabet::new(["a", "b", "c"]).unwrap())
            .state("0", &[&["a"], &["a", "b"], &["a", "c"]])
            .marked("1", &[&[]])
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .edge("0", "c", "1")
            .init("0")
            .build()
            .unwrap()
    }

    #[test]
    fn underlying_keeps_skeleton() {
        let s = s1();
        let un = s.underlying().unwrap();
        assert_eq!(un.len(), 2);
        assert_eq!(un.skel.transitions().count(), 3);
        assert!(un.is_marked(un.state("1").unwrap()));
        assert!(!un.is_marked(un.state("0").unwrap()));
    }

    #[test]
    fn underlying_of_single_terminal_state() {
        let s = MasBuilder::new(Alphabet::new(["a"]).unwrap())
            .marked("x", &[&[]])
            .init("x")
            .build()
            .unwrap();
        let un = s.underlying().unwrap();
        assert_eq!(un.len(), 1);
        assert_eq!(un.skel.transitions().count(), 0);
    }

    #[test]
    fn bottom_has_no_underlying_automaton() {
        let b = Mas::bottom(Alphabet::default());
        assert!(b.is_bottom());
        assert_eq!(b.underlying(), Err(Error::Bottom));
        assert_ne!(b, s1());
    }

    #[test]
    fn priorities_must_reference_states() {
        let s = s1();
        let a = s.alphabet().action("a").unwrap();
        assert!(Masp::new(s.clone(), [PrioritySet::new([(StateId(7), a)])]).is_err());
        assert_eq!(
            Masp::new(s.clone(), [PrioritySet::new([])]),
            Err(Error::EmptyPriority)
        );
        let p = MasBuilder::new(s.alphabet().clone())
            .state("0", &[&["a"]])
            .marked("1", &[&[]])
            .edge("0", "a", "1")
            .init("0")
            .priority(&[("0", "a")])
            .build_masp()
            .unwrap();
        assert_eq!(p.priority_count(), 1);
    }
}
