//! Satisfaction of specifications by automata, and unnecessary transitions.
//!
//! Both automata and specifications are deterministic, so the relation a
//! check may use is forced: it pairs the states visited by joint runs from
//! the initial pair. Every check builds that relation breadth-first and
//! stops at the first violated clause.

use std::collections::{BTreeSet, VecDeque};

use crate::automaton::{
    is_terminating, pair_name, skeleton_terminates, Automaton, Explorer, Skeleton, StateId,
};
use crate::mas::{Mas, Masp};
use crate::witness::{Clause, SimWitness};
use crate::Result;

/// `M ⊨ S`: `m` is terminating and every paired state respects the ready,
/// marking and transition clauses.
pub fn satisfies(m: &Automaton, s: &Mas) -> Result<SimWitness> {
    m.skel.alphabet.ensure_same(&s.skel.alphabet)?;
    Ok(satisfies_unchecked(&m.skel, s))
}

pub(crate) fn satisfies_unchecked(m: &Skeleton, s: &Mas) -> SimWitness {
    if s.is_bottom() {
        return SimWitness::new().fail_global(Clause::Bottom);
    }
    let w = relation(m, s, |r, q| {
        let z = m.ready(r);
        if !s.acc(q).contains(z) {
            return Err(Clause::ReadyNotAccepted { ready: z });
        }
        if m.is_marked(r) && !s.is_marked(q) {
            return Err(Clause::MarkingMismatch);
        }
        Ok(())
    });
    if !w.holds() || skeleton_terminates(m) {
        return w;
    }
    let offending = is_terminating(&Automaton::from_skeleton(m.clone())).offending;
    let state = offending.first().map(|&(r, _)| r).unwrap_or_default();
    w.fail_global(Clause::NotTerminating { state })
}

/// Satisfaction of a specification with priorities: the base must be
/// satisfied, and each priority set whose states are implemented at all
/// must have one of its pairs realized by an implementing state.
pub fn satisfies_masp(m: &Automaton, sp: &Masp) -> Result<SimWitness> {
    m.skel.alphabet.ensure_same(&sp.base.skel.alphabet)?;
    Ok(satisfies_masp_unchecked(&m.skel, sp))
}

pub(crate) fn satisfies_masp_unchecked(m: &Skeleton, sp: &Masp) -> SimWitness {
    let w = satisfies_unchecked(m, &sp.base);
    if !w.holds() {
        return w;
    }
    for (index, p) in sp.priorities().enumerate() {
        let implemented = p
            .iter()
            .any(|(q, _)| w.pairs.iter().any(|&(_, q2)| q2 == q));
        if !implemented {
            continue;
        }
        let realized = p.iter().any(|(q, a)| {
            w.pairs
                .iter()
                .any(|&(r, q2)| q2 == q && m.ready(r).contains(a))
        });
        if !realized {
            return w.fail_global(Clause::PriorityUnmet { index });
        }
    }
    w
}

/// `M ∼U S`: along the forced relation every ready set stays within
/// `∪Acc(q)`.
pub fn no_unnecessary(m: &Automaton, s: &Mas) -> Result<SimWitness> {
    m.skel.alphabet.ensure_same(&s.skel.alphabet)?;
    if s.is_bottom() {
        return Ok(SimWitness::new().fail_global(Clause::Bottom));
    }
    Ok(relation(&m.skel, s, |r, q| {
        let extra = m.skel.ready(r).difference(s.acc(q).union_all());
        match extra.iter().next() {
            Some(action) => Err(Clause::Unnecessary { action }),
            None => Ok(()),
        }
    }))
}

/// Breadth-first construction of the forced relation from `(r0, q0)`.
/// `local` checks the per-pair clauses; a model transition without a
/// matching specification transition always fails.
fn relation(
    m: &Skeleton,
    s: &Mas,
    mut local: impl FnMut(StateId, StateId) -> Result<(), Clause>,
) -> SimWitness {
    let mut w = SimWitness::new();
    let start = (m.initial, s.initial());
    w.pairs.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some((r, q)) = queue.pop_front() {
        if let Err(clause) = local(r, q) {
            return w.fail((r, q), clause);
        }
        for (a, r2) in m.out(r) {
            let Some(q2) = s.succ(q, a) else {
                return w.fail((r, q), Clause::MissingTransition { action: a });
            };
            if w.pairs.insert((r2, q2)) {
                queue.push_back((r2, q2));
            }
        }
    }
    w
}

/// `ρ_u(M, S)`: the reachable part of `R × Q` keeping a transition on `a`
/// only when `a ∈ ∪Acc(q)`. States are named `(r,q)` and marked as `r`.
/// A kept action with no specification transition (possible only outside
/// normal form) is dropped as well.
pub fn rho_u(m: &Automaton, s: &Mas) -> Result<Automaton> {
    m.skel.alphabet.ensure_same(&s.skel.alphabet)?;
    Ok(Automaton::from_skeleton(rho_u_skeleton(&m.skel, s)))
}

pub(crate) fn rho_u_skeleton(m: &Skeleton, s: &Mas) -> Skeleton {
    let mut out = Skeleton::empty(m.alphabet.clone());
    if s.is_bottom() {
        // No specification state to pair with: keep only the initial state.
        out.push_state(m.name(m.initial).to_string(), m.is_marked(m.initial));
        return out;
    }
    let mut ex = Explorer::new();
    let start = (m.initial, s.initial());
    ex.intern(start);
    out.push_state(pair_name(m.name(start.0), s.name(start.1)), m.is_marked(start.0));
    while let Some((id, (r, q))) = ex.next() {
        let allowed = s.acc(q).union_all();
        for (a, r2) in m.out(r) {
            if !allowed.contains(a) {
                continue;
            }
            let Some(q2) = s.succ(q, a) else { continue };
            let (t, fresh) = ex.intern((r2, q2));
            if fresh {
                out.push_state(pair_name(m.name(r2), s.name(q2)), m.is_marked(r2));
            }
            out.set_succ(id, a, Some(t));
        }
    }
    out
}

/// Specification states implemented by some model state.
pub fn implemented_states(w: &SimWitness) -> BTreeSet<StateId> {
    w.pairs.iter().map(|&(_, q)| q).collect()
}
