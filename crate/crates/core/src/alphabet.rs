//! Actions, action sets and acceptance sets.
//!
//! An [`Alphabet`] is a declared, finite, sorted set of action names. Every
//! structure (automaton or specification) carries its own alphabet and
//! operations refuse to combine structures whose alphabets differ.
//! Actions are stored as indices into the sorted name list, so an
//! [`ActionSet`] is a plain bitmask.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Upper bound on the alphabet size, fixed by the bitmask width of [`ActionSet`].
pub const MAX_ACTIONS: usize = 64;

/// Index of an action in its alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(pub(crate) u8);

impl Action {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from action names. Names are sorted and must be unique.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateAction(pair[0].clone()));
            }
        }
        if names.len() > MAX_ACTIONS {
            return Err(Error::AlphabetTooLarge(names.len()));
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Action) -> &str {
        &self.names[a.index()]
    }

    pub fn action(&self, name: &str) -> Option<Action> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Action(i as u8))
    }

    pub fn actions(&self) -> impl Iterator<Item = Action> + '_ {
        (0..self.names.len()).map(|i| Action(i as u8))
    }

    /// The set of all actions.
    pub fn full(&self) -> ActionSet {
        ActionSet::from_actions(self.actions())
    }

    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.names.join(","),
                right: other.names.join(","),
            })
        }
    }

    /// Renders a set as `{a,b}`.
    pub fn show_set(&self, set: ActionSet) -> String {
        let inner: Vec<&str> = set.iter().map(|a| self.name(a)).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Renders an acceptance set as `{{a}, {a,b}}`.
    pub fn show_acc(&self, acc: &AcceptanceSet) -> String {
        let inner: Vec<String> = acc.iter().map(|x| self.show_set(x)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

/// A finite set of actions, stored as a bitmask over alphabet indices.
///
/// Ordering is by cardinality first, then lexicographic on the sorted
/// action indices, which is the canonical order for acceptance entries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ActionSet(u64);

impl ActionSet {
    pub const EMPTY: ActionSet = ActionSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ActionSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(a: Action) -> Self {
        ActionSet(1 << a.0)
    }

    pub fn from_actions<I: IntoIterator<Item = Action>>(actions: I) -> Self {
        actions
            .into_iter()
            .fold(ActionSet::EMPTY, |acc, a| acc.with(a))
    }

    pub fn with(self, a: Action) -> Self {
        ActionSet(self.0 | (1 << a.0))
    }

    pub fn without(self, a: Action) -> Self {
        ActionSet(self.0 & !(1 << a.0))
    }

    pub fn contains(self, a: Action) -> bool {
        self.0 & (1 << a.0) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: ActionSet) -> Self {
        ActionSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ActionSet) -> Self {
        ActionSet(self.0 & other.0)
    }

    pub fn difference(self, other: ActionSet) -> Self {
        ActionSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ActionSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ActionSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = Action> {
        let bits = self.0;
        (0..64u8).filter(move |i| bits & (1 << i) != 0).map(Action)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = ActionSet> {
        // Standard submask walk, emitted in increasing bit order.
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(ActionSet(cur))
        })
    }
}

impl Ord for ActionSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ActionSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Action> for ActionSet {
    fn from_iter<T: IntoIterator<Item = Action>>(iter: T) -> Self {
        ActionSet::from_actions(iter)
    }
}

/// The acceptance set of a state: the ready sets a model state may expose.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AcceptanceSet(BTreeSet<ActionSet>);

impl AcceptanceSet {
    pub fn new() -> Self {
        AcceptanceSet(BTreeSet::new())
    }

    /// `{∅}`, the acceptance set of a terminal state.
    pub fn terminal() -> Self {
        std::iter::once(ActionSet::EMPTY).collect()
    }

    pub fn insert(&mut self, x: ActionSet) -> bool {
        self.0.insert(x)
    }

    pub fn remove(&mut self, x: ActionSet) -> bool {
        self.0.remove(&x)
    }

    pub fn contains(&self, x: ActionSet) -> bool {
        self.0.contains(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = ActionSet> + '_ {
        self.0.iter().copied()
    }

    /// `∪Acc`: every action that appears in some entry.
    pub fn union_all(&self) -> ActionSet {
        self.iter().fold(ActionSet::EMPTY, ActionSet::union)
    }

    pub fn is_terminal(&self) -> bool {
        self.0.len() == 1 && self.contains(ActionSet::EMPTY)
    }

    pub fn retain(&mut self, f: impl FnMut(&ActionSet) -> bool) {
        self.0.retain(f)
    }

    pub fn filtered(&self, mut f: impl FnMut(ActionSet) -> bool) -> Self {
        self.iter().filter(|x| f(*x)).collect()
    }
}

impl FromIterator<ActionSet> for AcceptanceSet {
    fn from_iter<T: IntoIterator<Item = ActionSet>>(iter: T) -> Self {
        AcceptanceSet(iter.into_iter().collect())
    }
}

impl fmt::Debug for AcceptanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}
