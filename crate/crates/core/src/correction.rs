//! Deadlock and livelock corrections, and the quotient.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{AcceptanceSet, ActionSet};
use crate::automaton::StateId;
use crate::compat::live::LiveCtx;
use crate::compat::{
    dead_unchecked, implementable_cycles, partners, reachable_pairs, transition_families,
    unfoldings, PartnerMap,
};
use crate::cycle::Cycle;
use crate::mas::{Mas, Masp, PrioritySet};
use crate::normalize::normal_form;
use crate::prequotient::pre_quotient;
use crate::Result;

/// Restricts `s1` so that no reachable pair with `s2` can deadlock, then
/// normalizes. For every pair failing `Dead`: against a terminal partner
/// only `{∅}` survives; otherwise only entries meeting every partner entry
/// survive. The offending pairs are those of the input.
pub fn dead_correction(s1: &Mas, s2: &Mas) -> Result<Mas> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    if s1.is_bottom() {
        return Ok(s1.clone());
    }
    let offending: Vec<(StateId, StateId)> = reachable_pairs(s1, s2)
        .into_iter()
        .filter(|&(q1, q2)| !dead_unchecked(s1.acc(q1), s2.acc(q2)))
        .collect();
    let mut out = s1.clone();
    for (q1, q2) in offending {
        let a2 = s2.acc(q2);
        let a1 = &mut out.acc[q1.index()];
        if a2.is_terminal() {
            *a1 = if a1.contains(ActionSet::EMPTY) {
                AcceptanceSet::terminal()
            } else {
                AcceptanceSet::new()
            };
        } else {
            a1.retain(|x1| a2.iter().all(|x2| !x1.intersection(x2).is_empty()));
        }
    }
    Ok(normal_form(&out))
}

/// `ρ` on a specification with priorities: the base is normalized, pairs
/// on deleted states are dropped, and priority sets left empty vanish.
pub fn rho_masp(sp: &Masp) -> Masp {
    let base = normal_form(&sp.base);
    if base.is_bottom() {
        return Masp::from_mas(base);
    }
    let map: Vec<Option<StateId>> = sp
        .base
        .states()
        .map(|q| base.skel.find(sp.base.name(q)))
        .collect();
    let priorities = Masp::remap(&sp.priorities, &map);
    Masp { base, priorities }
}

/// Partner lookups expressed in the ids of the specification being
/// corrected.
struct Partners<'a> {
    left: Box<dyn Fn(StateId) -> Option<StateId> + 'a>,
    right: Box<dyn Fn(StateId) -> Option<StateId> + 'a>,
}

/// Corrects one cycle `c1` of `s1p` whose partner cycle in `s2` is `c2`.
///
/// With mandatory exits on the partner cycle, priorities are added so that
/// every state able to meet all of them realizes one exit. Failing that,
/// an unmarked partner cycle with only optional exits restricts the
/// acceptance sets of the partnered states to entries meeting every
/// optional exit. Otherwise every entry containing an action that enters
/// the cycle is removed.
pub fn live_corr_cycle(s1p: &Masp, c1: &Cycle, s2: &Mas, c2: &Cycle) -> Result<Masp> {
    s1p.base.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let pm = partners(&s1p.base, s2)?;
    let p = Partners {
        left: Box::new(|q| pm.single_left(q)),
        right: Box::new(|q| pm.single_right(q)),
    };
    Ok(corr_cycle(s1p, c1, s2, c2, &p))
}

fn corr_cycle(s1p: &Masp, c1: &Cycle, s2: &Mas, c2: &Cycle, p: &Partners<'_>) -> Masp {
    let s1 = &s1p.base;
    let f2 = transition_families(s2, c2);
    if !f2.a_map.is_empty() {
        let q_a: Vec<(StateId, &AcceptanceSet)> = s1
            .states()
            .filter_map(|q1| {
                let a2 = f2.a_map.get(&(p.left)(q1)?)?;
                let ready = s1.skel.ready(q1);
                a2.iter()
                    .all(|a| !a.intersection(ready).is_empty())
                    .then_some((q1, a2))
            })
            .collect();
        if !q_a.is_empty() {
            let mut priorities = s1p.priorities.clone();
            priorities.extend(choice_products(s1, &q_a));
            return Masp {
                base: s1.clone(),
                priorities,
            };
        }
    } else if c2.domain().all(|q| !s2.is_marked(q)) {
        let mut base = s1.clone();
        for q2 in f2.o_map.keys() {
            let Some(q1) = (p.right)(*q2) else { continue };
            let Some(o) = (p.left)(q1).and_then(|q| f2.o_map.get(&q)) else {
                continue;
            };
            base.acc[q1.index()].retain(|x| o.iter().all(|y| !x.intersection(y).is_empty()));
        }
        return rho_masp(&Masp {
            base,
            priorities: s1p.priorities.clone(),
        });
    }
    let mut base = s1.clone();
    for q1 in s1.states() {
        base.acc[q1.index()].retain(|x| {
            x.iter()
                .all(|a| s1.succ(q1, a).is_none_or(|t| !c1.contains(t)))
        });
    }
    rho_masp(&Masp {
        base,
        priorities: s1p.priorities.clone(),
    })
}

/// One priority set per choice of `X_i ∈ {A ∩ ready(q_i) | A ∈ 𝒜(Q2(q_i))}`
/// for each `q_i`, holding the pairs `(q_i, a)` for `a ∈ X_i`.
fn choice_products(s1: &Mas, q_a: &[(StateId, &AcceptanceSet)]) -> BTreeSet<PrioritySet> {
    let mut partial: BTreeSet<BTreeSet<(StateId, crate::Action)>> = BTreeSet::from([BTreeSet::new()]);
    for &(q, a2) in q_a {
        let ready = s1.skel.ready(q);
        let choices: BTreeSet<ActionSet> = a2.iter().map(|a| a.intersection(ready)).collect();
        let mut next = BTreeSet::new();
        for base in &partial {
            for x in &choices {
                let mut set = base.clone();
                set.extend(x.iter().map(|a| (q, a)));
                next.insert(set);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(PrioritySet::new)
        .collect()
}

/// Folds [`live_corr_cycle`] over the implementable cycles of `s1`, in
/// canonical order, that are fully single-partnered and fail `Live`
/// against `s2`. `Live` and the partners are those of the original pair.
/// Cycles whose states were deleted by an earlier step are skipped.
pub fn live_correction(s1: &Mas, s2: &Mas) -> Result<Masp> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    if s1.is_bottom() {
        return Ok(Masp::from_mas(s1.clone()));
    }
    let pm = partners(s1, s2)?;
    let ctx = LiveCtx::new(s1, s2, &pm)?;
    let mut current = Masp::from_mas(s1.clone());
    for c1 in implementable_cycles(s1)? {
        if !c1.domain().all(|q| pm.of_left(q).len() == 1) || ctx.live(&c1)? {
            continue;
        }
        if current.is_bottom() {
            break;
        }
        let c2 = ctx.partner_cycle(&c1)?;
        let Some(mapped) = map_cycle(s1, &current.base, &c1) else {
            continue;
        };
        let next = {
            let p = renamed_partners(s1, &current.base, &pm);
            corr_cycle(&current, &mapped, s2, &c2, &p)
        };
        current = next;
    }
    Ok(current)
}

fn map_cycle(from: &Mas, to: &Mas, c: &Cycle) -> Option<Cycle> {
    c.iter()
        .map(|(q, set)| to.skel.find(from.name(q)).map(|t| (t, set)))
        .collect()
}

fn renamed_partners<'a>(orig: &'a Mas, cur: &'a Mas, pm: &'a PartnerMap) -> Partners<'a> {
    Partners {
        left: Box::new(move |q| pm.single_left(orig.skel.find(cur.name(q))?)),
        right: Box::new(move |q2| cur.skel.find(orig.name(pm.single_right(q2)?))),
    }
}

/// `ρ_T(S1, S2)`: deadlock correction, unfolding against `s2`, then
/// livelock correction. Inputs are normalized first. When every state of
/// the unfolding copies a distinct state, the copies take back the
/// original names.
pub fn rho_t(s1: &Mas, s2: &Mas) -> Result<Masp> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let (n1, n2) = (normal_form(s1), normal_form(s2));
    let d = dead_correction(&n1, &n2)?;
    if d.is_bottom() || n2.is_bottom() {
        return Ok(Masp::from_mas(d));
    }
    let (u1, u2) = unfoldings(&d, &n2)?;
    let mut out = live_correction(&u1.mas, &u2.mas)?;
    if out.is_bottom() {
        return Ok(out);
    }
    let sources: BTreeMap<StateId, StateId> = out
        .base
        .states()
        .map(|q| {
            let u = u1.mas.skel.find(out.base.name(q)).expect("state of the unfolding");
            (q, u1.source(u))
        })
        .collect();
    let distinct: BTreeSet<StateId> = sources.values().copied().collect();
    if distinct.len() == sources.len() {
        for (q, src) in sources {
            out.base.skel.names[q.index()] = d.name(src).to_string();
        }
    }
    Ok(out)
}

/// `S1 / S2 = ρ_T(S1 // S2, S2)`.
pub fn quotient(s1: &Mas, s2: &Mas) -> Result<Masp> {
    rho_t(&pre_quotient(s1, s2)?, s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::automaton::{AutomatonBuilder, Structure};
    use crate::mas::MasBuilder;
    use crate::semantics::satisfies_masp;

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

    fn named(sp: &Masp) -> BTreeSet<BTreeSet<(String, String)>> {
        sp.named_priorities()
    }

    fn prio(sets: &[&[(&str, &str)]]) -> BTreeSet<BTreeSet<(String, String)>> {
        sets.iter()
            .map(|s| {
                s.iter()
                    .map(|(q, a)| (q.to_string(), a.to_string()))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn dead_correction_examples() {
        assert_eq!(dead_correction(&s1(), &s2()).unwrap(), s1());
        let al = Alphabet::new(["a", "b"]).unwrap();
        let x = MasBuilder::new(al.clone())
            .marked("q", &[&["a"], &["b"]])
            .edge("q", "a", "q")
            .edge("q", "b", "q")
            .init("q")
            .build()
            .unwrap();
        let y = MasBuilder::new(al.clone())
            .marked("p", &[&["b"]])
            .edge("p", "b", "p")
            .init("p")
            .build()
            .unwrap();
        let d = dead_correction(&x, &y).unwrap();
        assert_eq!(d.show_acc(d.initial()), "{{b}}");
        let u = MasBuilder::new(al.clone())
            .state("u", &[&["a"]])
            .marked("f", &[&[]])
            .edge("u", "a", "f")
            .init("u")
            .build()
            .unwrap();
        let t = MasBuilder::new(al)
            .marked("t", &[&[]])
            .init("t")
            .build()
            .unwrap();
        assert!(dead_correction(&u, &t).unwrap().is_bottom());
    }

    #[test]
    fn live_correction_of_prequotient_adds_priorities() {
        let p = pre_quotient(&s1(), &s2()).unwrap();
        let out = live_correction(&p, &s2()).unwrap();
        assert_eq!(out.base, p);
        assert_eq!(
            named(&out),
            prio(&[&[("(0,0')", "b")], &[("(0,0')", "b"), ("(0,0')", "c")]])
        );
    }

    #[test]
    fn quotient_of_figure_pair() {
        let q = quotient(&s1(), &s2()).unwrap();
        let p = pre_quotient(&s1(), &s2()).unwrap();
        assert_eq!(q.base, p);
        assert_eq!(
            named(&q),
            prio(&[&[("(0,0')", "b")], &[("(0,0')", "b"), ("(0,0')", "c")]])
        );
        let m11 = AutomatonBuilder::new(abc())
            .state("0")
            .marked("2")
            .edge("0", "a", "0")
            .edge("0", "c", "2")
            .init("0")
            .build()
            .unwrap();
        let m12 = AutomatonBuilder::new(abc())
            .state("0")
            .state("1")
            .marked("2")
            .edge("0", "a", "1")
            .edge("0", "c", "2")
            .edge("1", "a", "0")
            .edge("1", "b", "2")
            .init("0")
            .build()
            .unwrap();
        assert!(!satisfies_masp(&m11, &q).unwrap().holds());
        assert!(satisfies_masp(&m12, &q).unwrap().holds());
    }

    #[test]
    fn acyclic_spec_is_unchanged() {
        let al = Alphabet::new(["a"]).unwrap();
        let s = MasBuilder::new(al)
            .state("x", &[&["a"]])
            .marked("y", &[&[]])
            .edge("x", "a", "y")
            .init("x")
            .build()
            .unwrap();
        let out = live_correction(&s, &s).unwrap();
        assert_eq!(out.base, s);
        assert_eq!(out.priority_count(), 0);
        let q = quotient(&s, &s).unwrap();
        assert_eq!(q.priority_count(), 0);
        let _ = q.base.state("(x,x)").unwrap();
    }

    #[test]
    fn bottom_stays_bottom() {
        let b = Mas::bottom(abc());
        assert!(rho_t(&b, &s2()).unwrap().is_bottom());
    }

    #[test]
    fn optional_exits_restrict_partner_entries() {
        // Partner cycle unmarked with only optional exits: branch two.
        let al = Alphabet::new(["a", "b"]).unwrap();
        let left = MasBuilder::new(al.clone())
            .state("p", &[&["a"], &["a", "b"]])
            .marked("f", &[&[]])
            .edge("p", "a", "p")
            .edge("p", "b", "f")
            .init("p")
            .build()
            .unwrap();
        let right = MasBuilder::new(al.clone())
            .state("r", &[&["a"], &["a", "b"]])
            .marked("g", &[&[]])
            .edge("r", "a", "r")
            .edge("r", "b", "g")
            .init("r")
            .build()
            .unwrap();
        let c1: Cycle = [(left.initial(), ActionSet::singleton(al.action("a").unwrap()))]
            .into_iter()
            .collect();
        let c2: Cycle = [(right.initial(), ActionSet::singleton(al.action("a").unwrap()))]
            .into_iter()
            .collect();
        let out = live_corr_cycle(&Masp::from_mas(left.clone()), &c1, &right, &c2).unwrap();
        assert_eq!(out.base.show_acc(out.base.initial()), "{{a,b}}");
        assert_eq!(out.priority_count(), 0);

        // Same cycle, but the partner loop is marked: the fallback removes
        // entries re-entering the loop.
        let marked = MasBuilder::new(al)
            .marked("r", &[&["a"], &["a", "b"]])
            .marked("g", &[&[]])
            .edge("r", "a", "r")
            .edge("r", "b", "g")
            .init("r")
            .build()
            .unwrap();
        let out = live_corr_cycle(&Masp::from_mas(left), &c1, &marked, &c2).unwrap();
        // The only entries of `p` contain `a`, so `p` loses them all.
        assert!(out.is_bottom());
    }
}
