//! Simulation witnesses returned by satisfaction-style checks.

use std::collections::BTreeSet;

use crate::alphabet::{Action, ActionSet};
use crate::automaton::StateId;

/// The clause a checked pair violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    /// The model's ready set is not an acceptance entry.
    ReadyNotAccepted { ready: ActionSet },
    /// A marked model state is paired with an unmarked spec state, or
    /// (bisimulation) the marks differ.
    MarkingMismatch,
    /// The model fires an action the specification has no transition for.
    MissingTransition { action: Action },
    /// The model fires an action outside `∪Acc(q)`.
    Unnecessary { action: Action },
    /// Ready sets differ (bisimulation).
    ReadyMismatch { left: ActionSet, right: ActionSet },
    /// The model is not terminating; the state is a deadlock or in a livelock.
    NotTerminating { state: StateId },
    /// The priority set with this index in canonical order is unmet.
    PriorityUnmet { index: usize },
    /// The specification is bottom and has no model.
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// The offending (model state, spec state) pair, when the violation is local.
    pub pair: Option<(StateId, StateId)>,
    pub clause: Clause,
}

/// The synchronized relation built from the initial pair, and the first
/// violation met in breadth-first order, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimWitness {
    pub pairs: BTreeSet<(StateId, StateId)>,
    violation: Option<Violation>,
}

impl SimWitness {
    pub(crate) fn new() -> Self {
        SimWitness::default()
    }

    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }

    pub(crate) fn fail(mut self, pair: (StateId, StateId), clause: Clause) -> Self {
        self.violation = Some(Violation {
            pair: Some(pair),
            clause,
        });
        self
    }

    pub(crate) fn fail_global(mut self, clause: Clause) -> Self {
        self.violation = Some(Violation { pair: None, clause });
        self
    }
}
