use std::collections::BTreeSet;

use super::cycles::{implementable_cycles, transition_families, TransitionFamilies};
use super::unfold::{unfoldings, Unfolding, UNKNOWN};
use super::{compat, deadlock_free, partners, PartnerMap};
use crate::automaton::{pair_name, StateId};
use crate::cycle::Cycle;
use crate::mas::Mas;
use crate::normalize::normal_form;
use crate::{Error, Result};

/// Evaluation context for `Live`: the second specification's implementable
/// cycles are computed once.
pub(crate) struct LiveCtx<'a> {
    pub s1: &'a Mas,
    pub s2: &'a Mas,
    pub pm: &'a PartnerMap,
    pub cycles2: BTreeSet<Cycle>,
}

impl<'a> LiveCtx<'a> {
    pub fn new(s1: &'a Mas, s2: &'a Mas, pm: &'a PartnerMap) -> Result<Self> {
        Ok(LiveCtx {
            s1,
            s2,
            pm,
            cycles2: implementable_cycles(s2)?,
        })
    }

    fn left_partner(&self, q1: StateId) -> Result<StateId> {
        self.pm
            .single_left(q1)
            .ok_or_else(|| Error::NotSinglePartner(self.s1.name(q1).to_string()))
    }

    fn right_partner(&self, q2: StateId) -> Result<StateId> {
        self.pm
            .single_right(q2)
            .ok_or_else(|| Error::NotSinglePartner(self.s2.name(q2).to_string()))
    }

    /// `C2 = {Q2(q) ↦ C1(q)}`.
    pub fn partner_cycle(&self, c1: &Cycle) -> Result<Cycle> {
        c1.iter()
            .map(|(q, set)| Ok((self.left_partner(q)?, set)))
            .collect()
    }

    /// Every state of `c1` has a partner; errors when one has several.
    pub fn fully_partnered(&self, c1: &Cycle) -> Result<bool> {
        for q in c1.domain() {
            match self.pm.of_left(q).len() {
                0 => return Ok(false),
                1 => {}
                _ => return Err(Error::NotSinglePartner(self.s1.name(q).to_string())),
            }
        }
        Ok(true)
    }

    pub fn live(&self, c1: &Cycle) -> Result<bool> {
        let c2 = self.partner_cycle(c1)?;
        if !self.cycles2.contains(&c2) {
            return Ok(true);
        }
        let f1 = transition_families(self.s1, c1);
        let f2 = transition_families(self.s2, &c2);
        Ok(self.cond_a1_a2(&f1, &f2)?
            || self.cond_a1_o2(&f1, &f2, &c2)?
            || self.cond_o1_a2(&f1, &f2, c1)?)
    }

    /// Mandatory exits on both sides, and at one state they always meet.
    fn cond_a1_a2(&self, f1: &TransitionFamilies, f2: &TransitionFamilies) -> Result<bool> {
        if f1.a_map.is_empty() || f2.a_map.is_empty() {
            return Ok(false);
        }
        for (q1, a1) in &f1.a_map {
            let q2 = self.left_partner(*q1)?;
            if let Some(a2) = f2.a_map.get(&q2) {
                if compat(a1, a2) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Mandatory exits on the left only; the right cycle is unmarked and
    /// each of its optional exits meets the left's mandatory ones.
    fn cond_a1_o2(
        &self,
        f1: &TransitionFamilies,
        f2: &TransitionFamilies,
        c2: &Cycle,
    ) -> Result<bool> {
        if f1.a_map.is_empty() || !f2.a_map.is_empty() {
            return Ok(false);
        }
        if c2.domain().any(|q| self.s2.is_marked(q)) {
            return Ok(false);
        }
        for (q2, o2) in &f2.o_map {
            let q1 = self.right_partner(*q2)?;
            match f1.a_map.get(&q1) {
                Some(a1) if compat(a1, o2) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// The mirror image of [`Self::cond_a1_o2`].
    fn cond_o1_a2(
        &self,
        f1: &TransitionFamilies,
        f2: &TransitionFamilies,
        c1: &Cycle,
    ) -> Result<bool> {
        if !f1.a_map.is_empty() || f2.a_map.is_empty() {
            return Ok(false);
        }
        if c1.domain().any(|q| self.s1.is_marked(q)) {
            return Ok(false);
        }
        for (q1, o1) in &f1.o_map {
            let q2 = self.left_partner(*q1)?;
            match f2.a_map.get(&q2) {
                Some(a2) if compat(o1, a2) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// `Live(C1, S2)` for a cycle of `s1` whose states all have one partner.
pub fn live(c1: &Cycle, s1: &Mas, s2: &Mas, pm: &PartnerMap) -> Result<bool> {
    LiveCtx::new(s1, s2, pm)?.live(c1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LivelockReport {
    /// Implementable cycles of the first specification failing `Live`.
    pub offending: Vec<Cycle>,
}

impl LivelockReport {
    pub fn free(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Every implementable cycle of `s1` whose states have partners is `Live`.
/// Inputs must have single partners on those cycles.
pub fn livelock_free(s1: &Mas, s2: &Mas) -> Result<LivelockReport> {
    let pm = partners(s1, s2)?;
    let ctx = LiveCtx::new(s1, s2, &pm)?;
    let mut offending = Vec::new();
    for c1 in implementable_cycles(s1)? {
        if ctx.fully_partnered(&c1)? && !ctx.live(&c1)? {
            offending.push(c1);
        }
    }
    Ok(LivelockReport { offending })
}

/// Outcome of the compatible-reachability check on normalized inputs.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub s1: Mas,
    pub s2: Mas,
    /// Pairs of `s1 × s2` failing `Dead`.
    pub deadlocks: Vec<(StateId, StateId)>,
    /// The unfoldings the livelock test ran on; `None` when an input is bottom.
    pub unfolded: Option<(Unfolding, Unfolding)>,
    /// Offending cycles of the first unfolding.
    pub livelocks: Vec<Cycle>,
}

impl CompatReport {
    pub fn compatible(&self) -> bool {
        self.deadlocks.is_empty() && self.livelocks.is_empty()
    }

    /// One line per offence. Livelock cycles are shown over `(q1,q2)`
    /// pairs of the original states.
    pub fn reasons(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .deadlocks
            .iter()
            .map(|&(q1, q2)| {
                format!("deadlock pair {}", pair_name(self.s1.name(q1), self.s2.name(q2)))
            })
            .collect();
        if let Some((u1, _)) = &self.unfolded {
            for c in &self.livelocks {
                out.push(format!("livelock cycle {}", self.project(u1, c)));
            }
        }
        out
    }

    fn project(&self, u1: &Unfolding, c: &Cycle) -> String {
        let al = self.s1.skel.alphabet.clone();
        let parts: Vec<String> = c
            .iter()
            .map(|(u, set)| {
                let q1 = self.s1.name(u1.source(u));
                let q2 = u1.reference(u).map_or(UNKNOWN, |q| self.s2.name(q));
                format!("{} -> {}", pair_name(q1, q2), al.show_set(set))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `S1 ∼T S2`: the normalized inputs are deadlock-free, and their
/// unfoldings are livelock-free.
pub fn compatible_reachability(s1: &Mas, s2: &Mas) -> Result<CompatReport> {
    s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
    let (n1, n2) = (normal_form(s1), normal_form(s2));
    if n1.is_bottom() || n2.is_bottom() {
        return Ok(CompatReport {
            s1: n1,
            s2: n2,
            deadlocks: Vec::new(),
            unfolded: None,
            livelocks: Vec::new(),
        });
    }
    let deadlocks = deadlock_free(&n1, &n2)?.violating;
    let (u1, u2) = unfoldings(&n1, &n2)?;
    let livelocks = livelock_free(&u1.mas, &u2.mas)?.offending;
    Ok(CompatReport {
        s1: n1,
        s2: n2,
        deadlocks,
        unfolded: Some((u1, u2)),
        livelocks,
    })
}
