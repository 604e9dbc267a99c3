//! The pre-quotient `S1 // S2`.

use crate::alphabet::{AcceptanceSet, ActionSet};
use crate::automaton::{pair_name, Explorer, Skeleton, StateId};
use crate::mas::Mas;
use crate::normalize::normal_form;
use crate::{Error, Result};

/// Largest `|∪Acc1(q1) ∩ ∪Acc2(q2)|` for which candidate ready sets are
/// enumerated.
pub const ACCEPTANCE_CAP: usize = 20;

/// Acceptance set of the pair `(q1, q2)`: the sets `X` within
/// `∪Acc1(q1) ∩ ∪Acc2(q2)` such that `X ∩ X2 ∈ Acc1(q1)` for every
/// `X2 ∈ Acc2(q2)`.
pub fn pair_acceptance(a1: &AcceptanceSet, a2: &AcceptanceSet) -> Result<AcceptanceSet> {
    let bound = a1.union_all().intersection(a2.union_all());
    if bound.len() > ACCEPTANCE_CAP {
        return Err(Error::AcceptanceCap {
            size: bound.len(),
            cap: ACCEPTANCE_CAP,
        });
    }
    Ok(bound
        .subsets()
        .filter(|&x| a2.iter().all(|x2| a1.contains(x.intersection(x2))))
        .collect())
}

/// Pre-quotient of normalized inputs followed by normalization. Inputs
/// not in normal form are normalized first; a bottom input gives bottom.
pub fn pre_quotient(s1: &Mas, s2: &Mas) -> Result<Mas> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let (n1, n2) = (normal_form(s1), normal_form(s2));
    if n1.is_bottom() || n2.is_bottom() {
        return Ok(Mas::bottom(s1.skel.alphabet.clone()));
    }
    Ok(normal_form(&pre_quotient_raw(&n1, &n2)?))
}

/// The construction on reachable pairs, without any normalization.
/// `(q1,q2)` is marked iff `q1 ∈ F1` or `q2 ∉ F2`.
pub fn pre_quotient_raw(s1: &Mas, s2: &Mas) -> Result<Mas> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    if s1.is_bottom() || s2.is_bottom() {
        return Ok(Mas::bottom(s1.skel.alphabet.clone()));
    }
    let mut skel = Skeleton::empty(s1.skel.alphabet.clone());
    let mut accs = Vec::new();
    let mut ex: Explorer<(StateId, StateId)> = Explorer::new();
    let add = |skel: &mut Skeleton, q1: StateId, q2: StateId| {
        skel.push_state(
            pair_name(s1.name(q1), s2.name(q2)),
            s1.is_marked(q1) || !s2.is_marked(q2),
        )
    };
    let start = (s1.initial(), s2.initial());
    ex.intern(start);
    add(&mut skel, start.0, start.1);
    while let Some((id, (q1, q2))) = ex.next() {
        let acc = pair_acceptance(s1.acc(q1), s2.acc(q2))?;
        let enabled: ActionSet = acc.union_all();
        for a in enabled.iter() {
            if let (Some(t1), Some(t2)) = (s1.succ(q1, a), s2.succ(q2, a)) {
                let (t, fresh) = ex.intern((t1, t2));
                if fresh {
                    add(&mut skel, t1, t2);
                }
                skel.set_succ(id, a, Some(t));
            }
        }
        accs.push(acc);
    }
    Ok(Mas::from_parts(skel, accs))
}
