use crate::automaton::{pair_name, Explorer, Skeleton, StateId};
use crate::mas::Mas;
use crate::Result;

/// Serialized id of the fresh partner state `q?`.
pub const UNKNOWN: &str = "q_unknown";

/// An unfolded specification with the origin of each of its states: the
/// reference state it is paired with (`None` for `q?`) and the state of
/// the unfolded specification it copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unfolding {
    pub mas: Mas,
    pub origin: Vec<(Option<StateId>, StateId)>,
}

impl Unfolding {
    /// The copied state of the unfolded specification.
    pub fn source(&self, u: StateId) -> StateId {
        self.origin[u.index()].1
    }

    /// The reference state `u` is paired with, `None` for `q?`.
    pub fn reference(&self, u: StateId) -> Option<StateId> {
        self.origin[u.index()].0
    }
}

/// Unfolding of `s2` in relation to `s1`: states `(q1?, q2)` reachable
/// from `(q1⁰, q2⁰)`, following `δ1` while it is defined and switching
/// the first component to `q?` otherwise. Acceptance sets and marks are
/// those of `q2`.
pub fn unfold(s2: &Mas, s1: &Mas) -> Result<Unfolding> {
    s2.skel.alphabet.ensure_same(&s1.skel.alphabet)?;
    if s2.is_bottom() {
        return Ok(Unfolding {
            mas: s2.clone(),
            origin: Vec::new(),
        });
    }
    let name = |q1: Option<StateId>, q2: StateId| {
        let left = q1.map_or(UNKNOWN, |q| s1.name(q));
        pair_name(left, s2.name(q2))
    };
    let mut skel = Skeleton::empty(s2.skel.alphabet.clone());
    let mut acc = Vec::new();
    let mut ex: Explorer<(Option<StateId>, StateId)> = Explorer::new();
    // A bottom reference has no states: every copy is paired with q?.
    let start = (
        (!s1.is_bottom()).then(|| s1.initial()),
        s2.initial(),
    );
    ex.intern(start);
    skel.push_state(name(start.0, start.1), s2.is_marked(start.1));
    while let Some((id, (q1, q2))) = ex.next() {
        acc.push(s2.acc(q2).clone());
        for (a, t2) in s2.skel.out(q2) {
            let t1 = q1.and_then(|q| s1.succ(q, a));
            let (t, fresh) = ex.intern((t1, t2));
            if fresh {
                skel.push_state(name(t1, t2), s2.is_marked(t2));
            }
            skel.set_succ(id, a, Some(t));
        }
    }
    Ok(Unfolding {
        mas: Mas::from_parts(skel, acc),
        origin: ex.keys,
    })
}

/// `s1' = unfold(s1, s2)` and `s2' = unfold(s2, s1')`: equivalent to the
/// inputs and with single partners.
pub fn unfoldings(s1: &Mas, s2: &Mas) -> Result<(Unfolding, Unfolding)> {
    let u1 = unfold(s1, s2)?;
    let u2 = unfold(s2, &u1.mas)?;
    Ok((u1, u2))
}
