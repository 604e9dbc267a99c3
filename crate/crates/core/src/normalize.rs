//! Consistency predicates and the normal form.

use crate::alphabet::{AcceptanceSet, ActionSet};
use crate::automaton::{Skeleton, StateId, Structure};
use crate::mas::Mas;
use crate::Result;

/// Some marked state is reachable from `q`.
pub fn attracted(s: &Mas, q: StateId) -> Result<bool> {
    s.skel.check(q)?;
    Ok(s.skel.co_reachable_marked()[q.index()])
}

/// `Acc(q) ≠ ∅`.
pub fn acc_consistent(s: &Mas, q: StateId) -> Result<bool> {
    s.skel.check(q)?;
    Ok(!s.acc(q).is_empty())
}

/// `∅ ∈ Acc(q)` implies `q ∈ F`.
pub fn f_acc_consistent(s: &Mas, q: StateId) -> Result<bool> {
    s.skel.check(q)?;
    Ok(f_acc_ok(&s.skel, &s.acc, q))
}

/// `δ(q, a)` is defined exactly for the actions of `∪Acc(q)`.
pub fn delta_acc_consistent(s: &Mas, q: StateId) -> Result<bool> {
    s.skel.check(q)?;
    Ok(delta_acc_ok(&s.skel, &s.acc, q))
}

/// All four predicates hold in every state (bottom counts as normal).
pub fn is_normal(s: &Mas) -> bool {
    if s.is_bottom() {
        return true;
    }
    let co = s.skel.co_reachable_marked();
    s.states().all(|q| {
        co[q.index()]
            && !s.acc(q).is_empty()
            && f_acc_ok(&s.skel, &s.acc, q)
            && delta_acc_ok(&s.skel, &s.acc, q)
    })
}

fn f_acc_ok(skel: &Skeleton, acc: &[AcceptanceSet], q: StateId) -> bool {
    !acc[q.index()].contains(ActionSet::EMPTY) || skel.is_marked(q)
}

fn delta_acc_ok(skel: &Skeleton, acc: &[AcceptanceSet], q: StateId) -> bool {
    skel.ready(q) == acc[q.index()].union_all()
}

/// `|Q| + Σ|Acc(q)| + |δ|`, which every changing sweep of the normal-form
/// loop strictly decreases.
pub fn size_measure(s: &Mas) -> usize {
    if s.is_bottom() {
        return 0;
    }
    s.len() + s.acc.iter().map(AcceptanceSet::len).sum::<usize>() + s.skel.transitions().count()
}

/// Repairs `s` until every state satisfies the four predicates: states
/// that are not attracted or have an empty acceptance set are deleted with
/// their incoming transitions, `∅` is dropped from unmarked states, and
/// transitions and entries are trimmed until `δ` and `∪Acc` agree.
/// Returns bottom when no state is left or the initial state is deleted.
pub fn normal_form(s: &Mas) -> Mas {
    normal_form_traced(s).0
}

/// [`normal_form`] plus the [`size_measure`] after each sweep.
pub fn normal_form_traced(s: &Mas) -> (Mas, Vec<usize>) {
    if s.is_bottom() {
        return (s.clone(), Vec::new());
    }
    let mut skel = s.skel.clone();
    let mut acc = s.acc.clone();
    let mut alive = vec![true; skel.len()];
    let mut trace = Vec::new();
    let bottom = || Mas::bottom(s.skel.alphabet.clone());
    loop {
        let mut unchanged = true;
        for q in s.states() {
            if !alive[q.index()] {
                continue;
            }
            let attracted = skel.co_reachable_marked()[q.index()];
            if !attracted || acc[q.index()].is_empty() {
                unchanged = false;
                for p in s.states() {
                    for a in s.skel.alphabet.actions() {
                        if skel.succ(p, a) == Some(q) {
                            skel.set_succ(p, a, None);
                        }
                    }
                }
                for a in s.skel.alphabet.actions() {
                    skel.set_succ(q, a, None);
                }
                alive[q.index()] = false;
                if q == skel.initial || !alive.iter().any(|&x| x) {
                    return (bottom(), trace);
                }
                continue;
            }
            if !f_acc_ok(&skel, &acc, q) {
                unchanged = false;
                acc[q.index()].remove(ActionSet::EMPTY);
            }
            if !delta_acc_ok(&skel, &acc, q) {
                unchanged = false;
                let allowed = acc[q.index()].union_all();
                for a in skel.ready(q).difference(allowed).iter() {
                    skel.set_succ(q, a, None);
                }
                let defined = skel.ready(q);
                acc[q.index()].retain(|x| x.is_subset(defined));
            }
        }
        let (out, _) = Mas {
            skel: skel.clone(),
            acc: acc.clone(),
            bottom: false,
        }
        .restrict(&alive);
        trace.push(size_measure(&out));
        if unchanged {
            return (out, trace);
        }
    }
}

impl Mas {
    /// Shorthand for [`normal_form`].
    pub fn normalized(&self) -> Mas {
        normal_form(self)
    }

    /// Looks up a state by name, as [`Structure::state`].
    pub fn id(&self, name: &str) -> Result<StateId> {
        self.state(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::mas::MasBuilder;

    fn s1_builder(al: Alphabet) -> MasBuilder {
        MasBuilder::new(al)
            .state("0", &[&["a"], &["a", "b"], &["a", "c"]])
            .marked("1", &[&[]])
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .edge("0", "c", "1")
            .init("0")
    }

    #[test]
    fn predicates_on_s1() {
        let s = s1_builder(Alphabet::new(["a", "b", "c"]).unwrap())
            .build()
            .unwrap();
        for q in s.states() {
            assert!(attracted(&s, q).unwrap());
            assert!(acc_consistent(&s, q).unwrap());
            assert!(f_acc_consistent(&s, q).unwrap());
            assert!(delta_acc_consistent(&s, q).unwrap());
        }
        assert!(is_normal(&s));
        assert_eq!(normal_form(&s), s);
    }

    #[test]
    fn predicate_failures() {
        let s = MasBuilder::new(Alphabet::new(["a", "b"]).unwrap())
            .state("q", &[&["a"], &["b"]])
            .state("u", &[])
            .marked("m", &[&[]])
            .edge("q", "a", "m")
            .init("q")
            .build()
            .unwrap();
        let (q, u) = (s.id("q").unwrap(), s.id("u").unwrap());
        assert!(!delta_acc_consistent(&s, q).unwrap());
        assert!(!acc_consistent(&s, u).unwrap());
        assert!(!attracted(&s, u).unwrap());
        assert!(attracted(&s, s.id("m").unwrap()).unwrap());
    }

    #[test]
    fn extra_sink_is_removed() {
        let al = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let s = MasBuilder::new(al.clone())
            .state("0", &[&["a"], &["a", "b"], &["a", "c"], &["a", "d"]])
            .marked("1", &[&[]])
            .state("t", &[&[]])
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .edge("0", "c", "1")
            .edge("0", "d", "t")
            .init("0")
            .build()
            .unwrap();
        let expected = s1_builder(al).build().unwrap();
        let (n, trace) = normal_form_traced(&s);
        assert_eq!(n, expected);
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn unattracted_initial_gives_bottom() {
        let s = MasBuilder::new(Alphabet::new(["a"]).unwrap())
            .state("0", &[&["a"]])
            .edge("0", "a", "0")
            .marked("z", &[&[]])
            .init("0")
            .build()
            .unwrap();
        assert!(normal_form(&s).is_bottom());
        let b = Mas::bottom(Alphabet::default());
        assert_eq!(normal_form(&b), b);
    }
}
