//! Bounded brute-force ground truth.
//!
//! Every accessible deterministic automaton up to a state bound is
//! enumerated once per isomorphism class. Model sets of specifications
//! are the enumerated automata passing satisfaction, and the theorems of
//! the theory are checked by instantiating their quantifiers over those
//! finite sets. A `∀` statement violated at the bound is a hard failure;
//! a converse whose hypothesis quantifies over all models but was only
//! checked at the bound is reported as suspect.

mod random;
mod theorems;

use std::collections::BTreeSet;

use rayon::prelude::*;

pub use random::{random_automaton, random_mas, random_spec, random_spec_pair};
pub use theorems::{check_theorem, Bounds, Oracle, Theorem, TheoremReport, Verdict};

use crate::alphabet::Alphabet;
use crate::automaton::{Automaton, Skeleton, StateId};
use crate::mas::{Mas, Masp};
use crate::semantics::{satisfies_masp_unchecked, satisfies_unchecked};
use crate::{Error, Result};

/// Largest alphabet the enumerator accepts.
pub const MAX_ORACLE_ACTIONS: usize = 4;
/// Largest number of candidate automata one enumeration may inspect.
pub const CANDIDATE_LIMIT: u128 = 10_000_000;

/// `Σ_{n ≤ max} 2^n · (n+1)^(n·|Σ|)`: marking patterns times transition tables.
pub fn candidate_estimate(actions: usize, max_states: usize) -> u128 {
    (1..=max_states as u32)
        .map(|n| {
            let n = n as u128;
            (1u128 << n).saturating_mul((n + 1).saturating_pow((n as u32) * actions as u32))
        })
        .fold(0u128, u128::saturating_add)
}

fn check_bound(al: &Alphabet, max_states: usize) -> Result<()> {
    if max_states == 0 {
        return Err(Error::InvalidBound("at least one state is needed".into()));
    }
    if al.len() > MAX_ORACLE_ACTIONS {
        return Err(Error::InvalidBound(format!(
            "the enumerator handles at most {MAX_ORACLE_ACTIONS} actions, not {}",
            al.len()
        )));
    }
    let estimate = candidate_estimate(al.len(), max_states);
    if estimate > CANDIDATE_LIMIT {
        return Err(Error::BoundTooLarge { estimate, limit: CANDIDATE_LIMIT });
    }
    Ok(())
}

/// A transition table is canonical when numbering states in breadth-first
/// discovery order from state 0 (actions in alphabet order) is the
/// identity and reaches every state.
fn canonical_table(table: &[Option<usize>], n: usize, k: usize) -> bool {
    let mut next = 1;
    for s in 0..n {
        if s >= next {
            return false;
        }
        for a in 0..k {
            if let Some(t) = table[s * k + a] {
                if t == next {
                    next += 1;
                } else if t > next {
                    return false;
                }
            }
        }
    }
    next == n
}

fn decode(mut index: u64, n: usize, k: usize) -> Vec<Option<usize>> {
    let base = (n + 1) as u64;
    (0..n * k)
        .map(|_| {
            let d = (index % base) as usize;
            index /= base;
            d.checked_sub(1)
        })
        .collect()
}

fn build(al: &Alphabet, n: usize, table: &[Option<usize>], marking: u32) -> Automaton {
    let mut skel = Skeleton::empty(al.clone());
    for s in 0..n {
        skel.push_state(format!("r{s}"), marking >> s & 1 == 1);
    }
    let k = al.len();
    for s in 0..n {
        for a in al.actions() {
            let t = table[s * k + a.index()].map(StateId::from_index);
            skel.set_succ(StateId::from_index(s), a, t);
        }
    }
    Automaton::from_skeleton(skel)
}

/// Every accessible deterministic automaton over `al` with at most
/// `max_states` states and every marking, one per isomorphism class.
/// States are named `r0, r1, …` in breadth-first order. The output order
/// is deterministic: by size, then transition table, then marking.
pub fn enumerate_automata(al: &Alphabet, max_states: usize) -> Result<Vec<Automaton>> {
    check_bound(al, max_states)?;
    let k = al.len();
    let mut out = Vec::new();
    for n in 1..=max_states {
        let tables = ((n + 1) as u64).pow((n * k) as u32);
        let canonical: Vec<Vec<Option<usize>>> = (0..tables)
            .into_par_iter()
            .map(|i| decode(i, n, k))
            .filter(|t| canonical_table(t, n, k))
            .collect();
        for t in &canonical {
            for marking in 0..(1u32 << n) {
                out.push(build(al, n, t, marking));
            }
        }
    }
    Ok(out)
}

/// The reachable part of `m` renamed `r0, r1, …` in breadth-first order.
pub fn canonicalize(m: &Automaton) -> Automaton {
    let skel = &m.skel;
    let mut order = vec![skel.initial];
    let mut index = vec![None; skel.len()];
    index[skel.initial.index()] = Some(0);
    let mut i = 0;
    while i < order.len() {
        for (_, t) in skel.out(order[i]) {
            if index[t.index()].is_none() {
                index[t.index()] = Some(order.len());
                order.push(t);
            }
        }
        i += 1;
    }
    let mut out = Skeleton::empty(skel.alphabet.clone());
    for (j, &s) in order.iter().enumerate() {
        out.push_state(format!("r{j}"), skel.is_marked(s));
    }
    for (j, &s) in order.iter().enumerate() {
        for (a, t) in skel.out(s) {
            let t = index[t.index()].map(StateId::from_index);
            out.set_succ(StateId::from_index(j), a, t);
        }
    }
    Automaton::from_skeleton(out)
}

/// One-line key of the isomorphism class of the reachable part, e.g.
/// `r0 a>r0 b>r1; r1*`. Two automata have the same key iff their
/// reachable parts are isomorphic.
pub fn canonical_form(m: &Automaton) -> String {
    let c = canonicalize(m);
    let al = &c.skel.alphabet;
    c.states()
        .map(|s| {
            let mut part = c.name(s).to_string();
            if c.is_marked(s) {
                part.push('*');
            }
            for (a, t) in c.skel.out(s) {
                part.push_str(&format!(" {}>{}", al.name(a), c.name(t)));
            }
            part
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// The enumerated automata that satisfy `s`.
pub fn enumerate_models(s: &Mas, max_states: usize) -> Result<Vec<Automaton>> {
    let all = enumerate_automata(&s.skel.alphabet, max_states)?;
    Ok(models_among(&all, s))
}

/// The enumerated automata that satisfy `sp`, priorities included.
pub fn enumerate_models_masp(sp: &Masp, max_states: usize) -> Result<Vec<Automaton>> {
    let all = enumerate_automata(&sp.base.skel.alphabet, max_states)?;
    Ok(masp_models_among(&all, sp))
}

/// The members of `all` that satisfy `s`.
pub fn models_among(all: &[Automaton], s: &Mas) -> Vec<Automaton> {
    if s.is_bottom() {
        return Vec::new();
    }
    all.par_iter()
        .filter(|m| satisfies_unchecked(&m.skel, s).holds())
        .cloned()
        .collect()
}

/// The members of `all` that satisfy `sp`, priorities included.
pub fn masp_models_among(all: &[Automaton], sp: &Masp) -> Vec<Automaton> {
    if sp.is_bottom() {
        return Vec::new();
    }
    all.par_iter()
        .filter(|m| satisfies_masp_unchecked(&m.skel, sp).holds())
        .cloned()
        .collect()
}

/// Outcome of [`models_equivalent_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// A model of exactly one side, in canonical form.
    pub witness: Option<Automaton>,
}

/// Compares the bounded model sets of two specifications.
pub fn models_equivalent_bounded(a: &Masp, b: &Masp, max_states: usize) -> Result<Equivalence> {
    a.base.skel.alphabet.ensure_same(&b.base.skel.alphabet)?;
    let all = enumerate_automata(&a.base.skel.alphabet, max_states)?;
    Ok(equivalent_among(&all, a, b))
}

/// [`models_equivalent_bounded`] over an already enumerated universe.
pub fn equivalent_among(all: &[Automaton], a: &Masp, b: &Masp) -> Equivalence {
    let witness = all
        .par_iter()
        .find_first(|m| {
            satisfies_masp_unchecked(&m.skel, a).holds() != satisfies_masp_unchecked(&m.skel, b).holds()
        })
        .cloned();
    Equivalence {
        equivalent: witness.is_none(),
        witness,
    }
}

/// Satisfaction decided by searching every relation `R ⊆ states(m) ×
/// states(s)` for one meeting the simulation clauses from the initial
/// pair, plus termination of `m`. Exponential; meant for tiny inputs as a
/// cross-check of the forced-relation algorithm.
pub fn satisfies_by_search(m: &Automaton, s: &Mas) -> Result<bool> {
    m.skel.alphabet.ensure_same(&s.skel.alphabet)?;
    if s.is_bottom() || !crate::automaton::skeleton_terminates(&m.skel) {
        return Ok(false);
    }
    let (rn, qn) = (m.len(), s.len());
    let cells = rn * qn;
    if cells > 16 {
        return Err(Error::BoundTooLarge { estimate: 1u128 << cells, limit: 1 << 16 });
    }
    let cell = |r: StateId, q: StateId| r.index() * qn + q.index();
    let start = cell(m.initial(), s.initial());
    let ok = (0u32..(1 << cells)).any(|rel| {
        let has = |c: usize| rel >> c & 1 == 1;
        if !has(start) {
            return false;
        }
        m.states().all(|r| {
            s.states().all(|q| {
                if !has(cell(r, q)) {
                    return true;
                }
                s.acc(q).contains(m.skel.ready(r))
                    && (!m.is_marked(r) || s.is_marked(q))
                    && m.skel.out(r).all(|(a, r2)| match s.succ(q, a) {
                        Some(q2) => has(cell(r2, q2)),
                        None => false,
                    })
            })
        })
    });
    Ok(ok)
}

/// Distinct canonical keys of a set of automata.
pub fn canonical_keys(ms: &[Automaton]) -> BTreeSet<String> {
    ms.iter().map(canonical_form).collect()
}
