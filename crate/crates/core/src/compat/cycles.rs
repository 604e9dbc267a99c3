use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{AcceptanceSet, ActionSet};
use crate::automaton::StateId;
use crate::cycle::Cycle;
use crate::mas::Mas;
use crate::{Error, Result};

/// Default bound on the number of cycles any enumeration may hold.
pub const CYCLE_CAP: usize = 100_000;

struct Enumerator<'a> {
    s: &'a Mas,
    /// `reach[p][q]`: `q ∈ post(p)`.
    reach: Vec<Vec<bool>>,
    cap: usize,
}

impl Enumerator<'_> {
    fn new(s: &Mas, cap: usize) -> Enumerator<'_> {
        let reach = s
            .states()
            .map(|p| {
                let post = s.skel.post(p);
                s.states().map(|q| post.contains(&q)).collect()
            })
            .collect();
        Enumerator { s, reach, cap }
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CycleCap { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn rec(&self, q: StateId, cycle: &Cycle) -> Result<BTreeSet<Cycle>> {
        if cycle.contains(q) {
            return Ok(BTreeSet::from([cycle.clone()]));
        }
        let mut res = BTreeSet::new();
        for entry in self.s.acc(q).iter() {
            let cycle_acc: ActionSet = entry
                .iter()
                .filter(|&a| {
                    self.s
                        .succ(q, a)
                        .is_some_and(|t| self.reach[t.index()][q.index()])
                })
                .collect();
            for c in cycle_acc.subsets().filter(|c| !c.is_empty()) {
                let mut current = BTreeSet::from([cycle.clone()]);
                for a in c.iter() {
                    let next = self.s.succ(q, a).expect("cycle action has a target");
                    let mut acc = BTreeSet::new();
                    for cyc in &current {
                        // `cyc ∪ {q ↦ C}`; later iterations already hold the entry.
                        let merged = if cyc.contains(q) { cyc.clone() } else { cyc.with(q, c) };
                        acc.extend(self.rec(next, &merged)?);
                        self.guard(acc.len())?;
                    }
                    current = acc;
                }
                res.extend(current);
                self.guard(res.len())?;
            }
        }
        Ok(res)
    }
}

/// The cycles through `q` produced by the recursive enumeration that,
/// for each acceptance entry, tries every nonempty subset of the entry's
/// actions leading back to `q`, and follows each chosen action until the
/// map closes.
pub fn cycles_from(s: &Mas, q: StateId) -> Result<BTreeSet<Cycle>> {
    cycles_from_capped(s, q, CYCLE_CAP)
}

pub fn cycles_from_capped(s: &Mas, q: StateId, cap: usize) -> Result<BTreeSet<Cycle>> {
    s.skel.check(q)?;
    Enumerator::new(s, cap).rec(q, &Cycle::new())
}

/// `Cycle⊨(S)`: cycles through reachable states that contain a marked
/// state or leave room, in some state, for an action outside the cycle.
pub fn implementable_cycles(s: &Mas) -> Result<BTreeSet<Cycle>> {
    implementable_cycles_capped(s, CYCLE_CAP)
}

pub fn implementable_cycles_capped(s: &Mas, cap: usize) -> Result<BTreeSet<Cycle>> {
    if s.is_bottom() {
        return Ok(BTreeSet::new());
    }
    let en = Enumerator::new(s, cap);
    let reachable = s.skel.reachable();
    let mut out = BTreeSet::new();
    for q in s.states().filter(|q| reachable[q.index()]) {
        for c in en.rec(q, &Cycle::new())? {
            if implementable(s, &c) {
                out.insert(c);
            }
        }
        en.guard(out.len())?;
    }
    Ok(out)
}

pub(crate) fn implementable(s: &Mas, c: &Cycle) -> bool {
    c.domain().any(|q| s.is_marked(q))
        || c.iter()
            .any(|(q, set)| s.acc(q).iter().any(|x| set.is_proper_subset(x)))
}

/// `leaving(q, A) = {X \ A | X ∈ Acc(q), A ⊊ X}`.
pub fn leaving(s: &Mas, q: StateId, a: ActionSet) -> AcceptanceSet {
    s.acc(q)
        .iter()
        .filter(|&x| a.is_proper_subset(x))
        .map(|x| x.difference(a))
        .collect()
}

/// The exits of a cycle: `𝒜` where the cycle's own action set is not an
/// acceptance entry (so some exit is always taken), `𝒪` where it is and
/// exits are optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitionFamilies {
    pub a_map: BTreeMap<StateId, AcceptanceSet>,
    pub o_map: BTreeMap<StateId, AcceptanceSet>,
}

pub fn transition_families(s: &Mas, c: &Cycle) -> TransitionFamilies {
    let mut fam = TransitionFamilies::default();
    for (q, set) in c.iter() {
        let l = leaving(s, q, set);
        if !s.acc(q).contains(set) {
            fam.a_map.insert(q, l);
        } else if !l.is_empty() {
            fam.o_map.insert(q, l);
        }
    }
    fam
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

    fn s1() -> Mas {
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

    fn s2() -> Mas {
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

    fn fig3() -> Mas {
        MasBuilder::new(Alphabet::new(["a", "b"]).unwrap())
            .state("0", &[&["a"], &["b"]])
            .marked("1", &[&[]])
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .init("0")
            .build()
            .unwrap()
    }

    fn single(s: &Mas, q: &str, names: &[&str]) -> Cycle {
        let set = names.iter().map(|n| s.alphabet().action(n).unwrap()).collect();
        [(s.state(q).unwrap(), set)].into_iter().collect()
    }

    #[test]
    fn cycles_of_s1() {
        let s = s1();
        let c = single(&s, "0", &["a"]);
        let from = cycles_from(&s, s.initial()).unwrap();
        assert!(from.contains(&c));
        assert!(from.iter().all(|x| x.is_cycle_of(&s)));
        assert!(implementable_cycles(&s).unwrap().contains(&c));
        assert!(cycles_from(&s, s.state("1").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn figure_three_has_no_implementable_cycle() {
        let s = fig3();
        assert!(cycles_from(&s, s.initial())
            .unwrap()
            .contains(&single(&s, "0", &["a"])));
        assert!(implementable_cycles(&s).unwrap().is_empty());
    }

    #[test]
    fn families() {
        let s = s2();
        let al = abc();
        let f = transition_families(&s, &single(&s, "0'", &["a"]));
        assert!(f.o_map.is_empty());
        assert_eq!(al.show_acc(&f.a_map[&s.initial()]), "{{b}, {b,c}}");
        let t = s1();
        let f = transition_families(&t, &single(&t, "0", &["a"]));
        assert!(f.a_map.is_empty());
        assert_eq!(al.show_acc(&f.o_map[&t.initial()]), "{{b}, {c}}");
        let only = MasBuilder::new(al.clone())
            .marked("z", &[&["a"]])
            .edge("z", "a", "z")
            .init("z")
            .build()
            .unwrap();
        let f = transition_families(&only, &single(&only, "z", &["a"]));
        assert!(f.a_map.is_empty() && f.o_map.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let s = s1();
        assert_eq!(
            cycles_from_capped(&s, s.initial(), 0),
            Err(Error::CycleCap { cap: 0 })
        );
    }
}
