//! Marked acceptance specifications (MAS).
//!
//! A MAS is a deterministic automaton whose states carry acceptance sets
//! (the ready sets an implementation may expose) and marks (reachability
//! goals). This crate implements satisfaction, normal forms, the
//! pre-quotient, compatible-reachability analysis, the deadlock and
//! livelock corrections, and the quotient `S1 / S2`, together with a
//! bounded brute-force oracle that checks all of them against exhaustively
//! enumerated models.

pub mod alphabet;
pub mod automaton;
pub mod compat;
pub mod correction;
pub mod cycle;
pub mod dsl;
pub mod mas;
pub mod normalize;
pub mod oracle;
pub mod prequotient;
pub mod semantics;
pub mod witness;

pub use alphabet::{AcceptanceSet, Action, ActionSet, Alphabet};
pub use automaton::{
    bisimilar, classify_state, is_terminating, product, ready, reachability_sets, Automaton,
    AutomatonBuilder, ReachabilitySets, StateClass, StateId, Structure, Termination,
};
pub use cycle::Cycle;
pub use mas::{Mas, MasBuilder, Masp, PrioritySet};
pub use witness::{Clause, SimWitness, Violation};

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate action `{0}` in alphabet")]
    DuplicateAction(String),
    #[error("alphabet has {0} actions; at most {max} are supported", max = alphabet::MAX_ACTIONS)]
    AlphabetTooLarge(usize),
    #[error("alphabet mismatch: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("nondeterminism: second transition from `{state}` on `{action}`")]
    DuplicateTransition { state: String, action: String },
    #[error("no initial state declared")]
    MissingInitial,
    #[error("state `{0}` has no acceptance set")]
    MissingAcceptance(String),
    #[error("`{0}` is a reserved state id")]
    ReservedId(String),
    #[error("operation is undefined on the bottom specification")]
    Bottom,
    #[error("state `{0}` is unreachable from the initial state")]
    Unreachable(String),
    #[error("state `{0}` has more than one partner; unfold the specifications first")]
    NotSinglePartner(String),
    #[error("priority set is empty")]
    EmptyPriority,
    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCap { cap: usize },
    #[error("acceptance computation over {size} actions exceeds the cap of {cap}")]
    AcceptanceCap { size: usize, cap: usize },
    #[error("enumeration bound too large: about {estimate} candidates (limit {limit})")]
    BoundTooLarge { estimate: u128, limit: u128 },
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("{0}")]
    Parse(#[from] dsl::ParseError),
}

impl Error {
    /// True for errors caused by a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CycleCap { .. } | Error::AcceptanceCap { .. } | Error::BoundTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
