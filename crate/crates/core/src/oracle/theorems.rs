use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::{canonical_form, enumerate_automata, masp_models_among, models_among};
use crate::alphabet::Alphabet;
use crate::automaton::{classify, product_skeleton, skeleton_terminates, Automaton, Skeleton, StateClass};
use crate::compat::{compatible_reachability, deadlock_free, livelock_free, unfoldings};
use crate::correction::{dead_correction, live_correction, quotient};
use crate::mas::{Mas, Masp};
use crate::normalize::normal_form;
use crate::prequotient::pre_quotient;
use crate::semantics::{rho_u_skeleton, satisfies_masp_unchecked, satisfies_unchecked};
use crate::{Error, Result};

/// The executable theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Models of the pre-quotient composed with models of `S2` satisfy
    /// `S1` whenever the composition terminates.
    PrequoSound,
    /// `ρ_u(M, S2)` satisfies the pre-quotient when every composition of
    /// `M` with a model of `S2` satisfies `S1`.
    PrequoComplete,
    /// Deadlock-freedom of two specifications matches deadlock-freedom of
    /// all products of their models.
    DeadlockIff,
    /// The same for livelocks, on the single-partner unfoldings.
    LivelockIff,
    /// Compatible reachability matches termination of all products.
    CompatIff,
    /// Models of the deadlock correction are exactly the models of `S1`
    /// whose products with models of `S2` never deadlock.
    DeadCorrIff,
    /// The same for the livelock correction and livelocks.
    LiveCorrIff,
    /// Models of the quotient composed with models of `S2` terminate and
    /// satisfy `S1`.
    QuotientSound,
    /// `ρ_u(M, S2)` satisfies the quotient when every composition of `M`
    /// with a model of `S2` satisfies `S1`.
    QuotientComplete,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::PrequoSound,
        Theorem::PrequoComplete,
        Theorem::DeadlockIff,
        Theorem::LivelockIff,
        Theorem::CompatIff,
        Theorem::DeadCorrIff,
        Theorem::LiveCorrIff,
        Theorem::QuotientSound,
        Theorem::QuotientComplete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::PrequoSound => "prequo_sound",
            Theorem::PrequoComplete => "prequo_complete",
            Theorem::DeadlockIff => "deadlock_iff",
            Theorem::LivelockIff => "livelock_iff",
            Theorem::CompatIff => "compat_iff",
            Theorem::DeadCorrIff => "dead_corr_iff",
            Theorem::LiveCorrIff => "live_corr_iff",
            Theorem::QuotientSound => "quotient_sound",
            Theorem::QuotientComplete => "quotient_complete",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// A universally quantified statement failed on enumerated automata.
    HardFail,
    /// A converse failed, but its hypothesis was only checked at the bound.
    Suspect,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::HardFail => "HARD-FAIL",
            Verdict::Suspect => "SUSPECT",
        })
    }
}

/// State bounds for the enumerated automata: `left` for candidates of the
/// first specification (or of the quotients), `right` for models of `S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub left: usize,
    pub right: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { left: 3, right: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub verdict: Verdict,
    /// Canonical forms of the automata that decided the verdict.
    pub witness: Option<String>,
    /// Free-form explanation, not part of the report line.
    pub note: String,
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "THEOREM {} {}", self.theorem, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        Ok(())
    }
}

fn show(m: &Automaton) -> String {
    format!("[{}]", canonical_form(m))
}

fn show_pair(m1: &Automaton, m2: &Automaton) -> String {
    format!("{}x{}", show(m1), show(m2))
}

fn deadlock_free_skel(s: &Skeleton) -> bool {
    let reach = s.reachable();
    s.states()
        .all(|r| !reach[r.index()] || s.is_marked(r) || !s.ready(r).is_empty())
}

fn livelock_free_skel(s: &Skeleton) -> bool {
    let reach = s.reachable();
    s.states()
        .all(|r| !reach[r.index()] || classify(s, r) != StateClass::InLivelock)
}

/// First pair `(m1, m2)` in enumeration order where `bad` holds.
fn find_pair(
    left: &[Automaton],
    right: &[Automaton],
    bad: impl Fn(&Skeleton) -> bool + Sync,
) -> Option<String> {
    left.par_iter().find_map_first(|m1| {
        right
            .iter()
            .find(|m2| bad(&product_skeleton(&m1.skel, &m2.skel)))
            .map(|m2| show_pair(m1, m2))
    })
}

/// Memoizes the enumerated automata per alphabet and bound.
#[derive(Default)]
pub struct Oracle {
    universes: HashMap<(Alphabet, usize), Arc<Vec<Automaton>>>,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    pub fn universe(&mut self, al: &Alphabet, max_states: usize) -> Result<Arc<Vec<Automaton>>> {
        if let Some(u) = self.universes.get(&(al.clone(), max_states)) {
            return Ok(u.clone());
        }
        let u = Arc::new(enumerate_automata(al, max_states)?);
        self.universes.insert((al.clone(), max_states), u.clone());
        Ok(u)
    }

    /// Instantiates `th` on the normal forms of `s1` and `s2`.
    pub fn check(&mut self, th: Theorem, s1: &Mas, s2: &Mas, bounds: Bounds) -> Result<TheoremReport> {
        s1.skel.alphabet.ensure_same(&s2.skel.alphabet)?;
        if bounds.left == 0 || bounds.right == 0 {
            return Err(Error::InvalidBound("state bounds must be at least 1".into()));
        }
        let al = s1.skel.alphabet.clone();
        let left = self.universe(&al, bounds.left)?;
        let right = self.universe(&al, bounds.right)?;
        let (n1, n2) = (normal_form(s1), normal_form(s2));
        let ctx = Ctx { left: &left, m2s: models_among(&right, &n2), n1: &n1, n2: &n2 };
        let (verdict, witness, note) = match th {
            Theorem::PrequoSound => ctx.prequo_sound()?,
            Theorem::PrequoComplete => ctx.prequo_complete()?,
            Theorem::DeadlockIff => ctx.deadlock_iff()?,
            Theorem::LivelockIff => ctx.livelock_iff(&right)?,
            Theorem::CompatIff => ctx.compat_iff()?,
            Theorem::DeadCorrIff => ctx.dead_corr_iff()?,
            Theorem::LiveCorrIff => ctx.live_corr_iff()?,
            Theorem::QuotientSound => ctx.quotient_sound()?,
            Theorem::QuotientComplete => ctx.quotient_complete()?,
        };
        Ok(TheoremReport { theorem: th, verdict, witness, note })
    }
}

/// Checks one theorem with a fresh [`Oracle`].
pub fn check_theorem(th: Theorem, s1: &Mas, s2: &Mas, bounds: Bounds) -> Result<TheoremReport> {
    Oracle::new().check(th, s1, s2, bounds)
}

type Outcome = (Verdict, Option<String>, String);

struct Ctx<'a> {
    left: &'a [Automaton],
    m2s: Vec<Automaton>,
    n1: &'a Mas,
    n2: &'a Mas,
}

impl Ctx<'_> {
    /// Every product of `m` with an enumerated model of `S2` satisfies `S1`.
    fn all_products_satisfy(&self, m: &Automaton) -> bool {
        self.m2s
            .iter()
            .all(|m2| satisfies_unchecked(&product_skeleton(&m.skel, &m2.skel), self.n1).holds())
    }

    fn all_products(&self, m: &Automaton, good: impl Fn(&Skeleton) -> bool) -> bool {
        self.m2s
            .iter()
            .all(|m2| good(&product_skeleton(&m.skel, &m2.skel)))
    }

    fn sound(&self, models: Vec<Automaton>, what: &str, require_termination: bool) -> Outcome {
        let bad = find_pair(&models, &self.m2s, |p| {
            if require_termination {
                !skeleton_terminates(p) || !satisfies_unchecked(p, self.n1).holds()
            } else {
                skeleton_terminates(p) && !satisfies_unchecked(p, self.n1).holds()
            }
        });
        let note = format!("{} models of the {what}, {} models of S2", models.len(), self.m2s.len());
        match bad {
            Some(w) => (Verdict::HardFail, Some(w), note),
            None => (Verdict::Pass, None, note),
        }
    }

    /// Enumerated `M` whose products with every model of `S2` satisfy
    /// `S1` must have `ρ_u(M, S2)` in the target.
    fn complete(&self, target: impl Fn(&Skeleton) -> bool + Sync) -> Outcome {
        let bad = self.left.par_iter().find_first(|m| {
            self.all_products_satisfy(m) && !target(&rho_u_skeleton(&m.skel, self.n2))
        });
        match bad {
            Some(m) => (Verdict::Suspect, Some(show(m)), "ρ_u(M, S2) rejected".into()),
            None => (Verdict::Pass, None, String::new()),
        }
    }

    fn prequo_sound(&self) -> Result<Outcome> {
        let pq = pre_quotient(self.n1, self.n2)?;
        Ok(self.sound(models_among(self.left, &pq), "pre-quotient", false))
    }

    fn prequo_complete(&self) -> Result<Outcome> {
        let pq = pre_quotient(self.n1, self.n2)?;
        Ok(self.complete(|m| satisfies_unchecked(m, &pq).holds()))
    }

    fn quotient_sound(&self) -> Result<Outcome> {
        let q = quotient(self.n1, self.n2)?;
        Ok(self.sound(masp_models_among(self.left, &q), "quotient", true))
    }

    fn quotient_complete(&self) -> Result<Outcome> {
        let q = quotient(self.n1, self.n2)?;
        Ok(self.complete(|m| satisfies_masp_unchecked(m, &q).holds()))
    }

    /// `claimed` is the syntactic verdict; `m1s × m2s` is searched for a
    /// product failing `good`.
    /// `claimed` is the syntactic verdict and `reason` its first offence;
    /// `m1s × m2s` is searched for a product failing `good`.
    fn iff(
        claimed: bool,
        reason: Option<String>,
        m1s: &[Automaton],
        m2s: &[Automaton],
        good: impl Fn(&Skeleton) -> bool + Sync,
    ) -> Outcome {
        let bad = find_pair(m1s, m2s, |p| !good(p));
        let note = format!("syntactic verdict {claimed}");
        match (claimed, bad) {
            (true, Some(w)) => (Verdict::HardFail, Some(w), note),
            (true, None) => (Verdict::Pass, None, note),
            (false, Some(w)) => (Verdict::Pass, Some(w), note),
            (false, None) => (Verdict::Suspect, reason, note + ", but every bounded product is fine"),
        }
    }

    fn deadlock_iff(&self) -> Result<Outcome> {
        let report = deadlock_free(self.n1, self.n2)?;
        let reason = report.violating.first().map(|&(q1, q2)| {
            format!("deadlock pair ({},{})", self.n1.name(q1), self.n2.name(q2))
        });
        let m1s = models_among(self.left, self.n1);
        Ok(Self::iff(report.free(), reason, &m1s, &self.m2s, deadlock_free_skel))
    }

    fn livelock_iff(&self, right: &[Automaton]) -> Result<Outcome> {
        if self.n1.is_bottom() || self.n2.is_bottom() {
            return Ok((Verdict::Pass, None, "bottom input".into()));
        }
        let (u1, u2) = unfoldings(self.n1, self.n2)?;
        let report = livelock_free(&u1.mas, &u2.mas)?;
        let reason = report
            .offending
            .first()
            .map(|c| format!("livelock cycle {}", c.show(&u1.mas)));
        let m1s = models_among(self.left, &u1.mas);
        let m2s = models_among(right, &u2.mas);
        Ok(Self::iff(report.free(), reason, &m1s, &m2s, livelock_free_skel))
    }

    fn compat_iff(&self) -> Result<Outcome> {
        let report = compatible_reachability(self.n1, self.n2)?;
        let reason = report.reasons().into_iter().next();
        let m1s = models_among(self.left, self.n1);
        Ok(Self::iff(report.compatible(), reason, &m1s, &self.m2s, skeleton_terminates))
    }

    /// Shared shape of the two correction theorems: over enumerated `M`,
    /// membership in the correction must imply `M ⊨ S1` and the product
    /// property, and conversely (suspect at the bound).
    fn correction_iff(
        &self,
        in_corr: impl Fn(&Skeleton) -> bool + Sync,
        good: impl Fn(&Skeleton) -> bool + Sync,
    ) -> Outcome {
        let hard = self.left.par_iter().find_map_first(|m| {
            if !in_corr(&m.skel) {
                return None;
            }
            if !satisfies_unchecked(&m.skel, self.n1).holds() {
                return Some((show(m), "model of the correction fails S1"));
            }
            (!self.all_products(m, &good)).then(|| (show(m), "model of the correction has a bad product"))
        });
        if let Some((w, note)) = hard {
            return (Verdict::HardFail, Some(w), note.to_string());
        }
        let suspect = self.left.par_iter().find_first(|m| {
            !in_corr(&m.skel)
                && satisfies_unchecked(&m.skel, self.n1).holds()
                && self.all_products(m, &good)
        });
        match suspect {
            Some(m) => (
                Verdict::Suspect,
                Some(show(m)),
                "rejected model whose bounded products are all fine".into(),
            ),
            None => (Verdict::Pass, None, String::new()),
        }
    }

    fn dead_corr_iff(&self) -> Result<Outcome> {
        let dc = dead_correction(self.n1, self.n2)?;
        Ok(self.correction_iff(|m| satisfies_unchecked(m, &dc).holds(), deadlock_free_skel))
    }

    fn live_corr_iff(&self) -> Result<Outcome> {
        if self.n1.is_bottom() || self.n2.is_bottom() {
            return Ok((Verdict::Pass, None, "bottom input".into()));
        }
        let (u1, u2) = unfoldings(self.n1, self.n2)?;
        let lc: Masp = live_correction(&u1.mas, &u2.mas)?;
        Ok(self.correction_iff(|m| satisfies_masp_unchecked(m, &lc).holds(), livelock_free_skel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("nope".parse::<Theorem>().is_err());
    }

    #[test]
    fn report_line() {
        let r = TheoremReport {
            theorem: Theorem::QuotientSound,
            verdict: Verdict::HardFail,
            witness: Some("[r0*]x[r0*]".into()),
            note: String::new(),
        };
        assert_eq!(r.to_string(), "THEOREM quotient_sound HARD-FAIL witness=[r0*]x[r0*]");
    }
}
