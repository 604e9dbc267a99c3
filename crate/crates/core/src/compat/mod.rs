//! Compatible reachability: whether every product of models of two
//! specifications is terminating.
//!
//! Deadlocks are decided pairwise on reachable state pairs. Livelocks need
//! the specifications unfolded to single partners first, then each
//! implementable cycle of the first is compared with its partner cycle.

mod cycles;
pub(crate) mod live;
mod unfold;

use std::collections::{BTreeSet, VecDeque};

pub use cycles::{
    cycles_from, cycles_from_capped, implementable_cycles, implementable_cycles_capped,
    leaving, transition_families, TransitionFamilies, CYCLE_CAP,
};
pub use live::{
    compatible_reachability, live, livelock_free, CompatReport, LivelockReport,
};
pub use unfold::{unfold, unfoldings, Unfolding, UNKNOWN};

use crate::alphabet::AcceptanceSet;
use crate::automaton::StateId;
use crate::mas::Mas;
use crate::Result;

/// `Compat(A1, A2)`: every entry of one meets every entry of the other.
pub fn compat(a1: &AcceptanceSet, a2: &AcceptanceSet) -> bool {
    a1.iter()
        .all(|x1| a2.iter().all(|x2| !x1.intersection(x2).is_empty()))
}

/// `Dead(q1, q2)`: the pair cannot deadlock, either because both states
/// are terminal or because their acceptance sets are compatible.
pub fn dead_pair(s1: &Mas, q1: StateId, s2: &Mas, q2: StateId) -> Result<bool> {
    s1.skel.check(q1)?;
    s2.skel.check(q2)?;
    Ok(dead_unchecked(s1.acc(q1), s2.acc(q2)))
}

pub(crate) fn dead_unchecked(a1: &AcceptanceSet, a2: &AcceptanceSet) -> bool {
    (a1.is_terminal() && a2.is_terminal()) || compat(a1, a2)
}

/// Reachable pairs of `Un(S1) × Un(S2)` that fail `Dead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeadlockReport {
    pub violating: Vec<(StateId, StateId)>,
}

impl DeadlockReport {
    pub fn free(&self) -> bool {
        self.violating.is_empty()
    }
}

pub fn deadlock_free(s1: &Mas, s2: &Mas) -> Result<DeadlockReport> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let violating = reachable_pairs(s1, s2)
        .into_iter()
        .filter(|&(q1, q2)| !dead_unchecked(s1.acc(q1), s2.acc(q2)))
        .collect();
    Ok(DeadlockReport { violating })
}

/// Reachable pairs of the product of the underlying automata, in
/// breadth-first order. Empty when either side is bottom.
pub(crate) fn reachable_pairs(s1: &Mas, s2: &Mas) -> Vec<(StateId, StateId)> {
    if s1.is_bottom() || s2.is_bottom() {
        return Vec::new();
    }
    let start = (s1.initial(), s2.initial());
    let mut seen = BTreeSet::from([start]);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some((q1, q2)) = queue.pop_front() {
        for (a, t1) in s1.skel.out(q1) {
            if let Some(t2) = s2.succ(q2, a) {
                if seen.insert((t1, t2)) {
                    order.push((t1, t2));
                    queue.push_back((t1, t2));
                }
            }
        }
    }
    order
}

/// `Q2(q1)` and `Q1(q2)` for every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerMap {
    pub forward: Vec<BTreeSet<StateId>>,
    pub backward: Vec<BTreeSet<StateId>>,
}

impl PartnerMap {
    /// `Q2(q1)`.
    pub fn of_left(&self, q1: StateId) -> &BTreeSet<StateId> {
        &self.forward[q1.index()]
    }

    /// `Q1(q2)`.
    pub fn of_right(&self, q2: StateId) -> &BTreeSet<StateId> {
        &self.backward[q2.index()]
    }

    /// The unique partner of `q1`, if it has exactly one.
    pub fn single_left(&self, q1: StateId) -> Option<StateId> {
        single(self.of_left(q1))
    }

    pub fn single_right(&self, q2: StateId) -> Option<StateId> {
        single(self.of_right(q2))
    }

    /// Every state on either side has at most one partner.
    pub fn single_partners(&self) -> bool {
        self.forward.iter().chain(&self.backward).all(|p| p.len() <= 1)
    }
}

fn single(set: &BTreeSet<StateId>) -> Option<StateId> {
    if set.len() == 1 {
        set.iter().next().copied()
    } else {
        None
    }
}

pub fn partners(s1: &Mas, s2: &Mas) -> Result<PartnerMap> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let mut pm = PartnerMap {
        forward: vec![BTreeSet::new(); s1.len()],
        backward: vec![BTreeSet::new(); s2.len()],
    };
    for (q1, q2) in reachable_pairs(s1, s2) {
        pm.forward[q1.index()].insert(q2);
        pm.backward[q2.index()].insert(q1);
    }
    Ok(pm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::mas::MasBuilder;
    use crate::Structure;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    pub(crate) fn s1() -> Mas {
        MasBuilder::new(abc())
            .state("0", &[&["a"], &["a", "b"], &["a", "c"]])
            .marked("1", &[&[]])
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .edge("0", "c", "1")
            .init("0")
            .build()
            .unwrap()
    }

    pub(crate) fn s2() -> Mas {
        MasBuilder::new(abc())
            .state("0'", &[&["a", "b"], &["a", "b", "c"]])
            .marked("1'", &[&[]])
            .edge("0'", "a", "0'")
            .edge("0'", "b", "1'")
            .edge("0'", "c", "1'")
            .init("0'")
            .build()
            .unwrap()
    }

    fn acc(al: &Alphabet, entries: &[&[&str]]) -> AcceptanceSet {
        entries
            .iter()
            .map(|x| x.iter().map(|n| al.action(n).unwrap()).collect())
            .collect()
    }

    #[test]
    fn compat_examples() {
        let al = abc();
        assert!(compat(
            &acc(&al, &[&["a"], &["a", "b"], &["a", "c"]]),
            &acc(&al, &[&["a", "b"], &["a", "b", "c"]])
        ));
        assert!(!compat(&acc(&al, &[&["a"]]), &acc(&al, &[&["b"]])));
        assert!(compat(&AcceptanceSet::new(), &acc(&al, &[&["b"]])));
    }

    #[test]
    fn dead_pairs() {
        let (s1, s2) = (s1(), s2());
        let id1 = |n| s1.state(n).unwrap();
        let id2 = |n| s2.state(n).unwrap();
        assert!(dead_pair(&s1, id1("1"), &s2, id2("1'")).unwrap());
        assert!(dead_pair(&s1, id1("0"), &s2, id2("0'")).unwrap());
        assert!(!dead_unchecked(
            &AcceptanceSet::terminal(),
            &acc(&abc(), &[&["a"]])
        ));
        assert!(deadlock_free(&s1, &s2).unwrap().free());
    }

    #[test]
    fn disjoint_singletons_deadlock() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let x = MasBuilder::new(al.clone())
            .marked("q0", &[&["a"]])
            .edge("q0", "a", "q0")
            .init("q0")
            .build()
            .unwrap();
        let y = MasBuilder::new(al)
            .marked("p0", &[&["b"]])
            .edge("p0", "b", "p0")
            .init("p0")
            .build()
            .unwrap();
        let r = deadlock_free(&x, &y).unwrap();
        assert_eq!(r.violating, vec![(x.initial(), y.initial())]);
        let pm = partners(&x, &y).unwrap();
        assert_eq!(pm.of_left(x.initial()).len(), 1);
    }

    #[test]
    fn partners_of_figure_pair() {
        let (s1, s2) = (s1(), s2());
        let pm = partners(&s1, &s2).unwrap();
        assert_eq!(pm.single_left(s1.state("0").unwrap()), s2.state("0'").ok());
        assert_eq!(pm.single_left(s1.state("1").unwrap()), s2.state("1'").ok());
        assert!(pm.single_partners());
    }
}
