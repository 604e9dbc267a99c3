//! Deterministic automata with marked states, and the automaton-level
//! operations: fireable sets, reachability closures, product,
//! bisimilarity and the deadlock / livelock classification.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::alphabet::{Action, ActionSet, Alphabet};
use crate::witness::{Clause, SimWitness};
use crate::{Error, Result};

/// Dense index of a state inside one structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[derive(Default)]
pub struct StateId(pub(crate) u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        StateId(i as u32)
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The transition structure shared by automata and specifications:
/// named states, an initial state, a deterministic transition table and
/// the set of marked states.
///
/// The table is keyed by `(state, action)`, so nondeterminism cannot be
/// represented at all.
#[derive(Clone, Debug, Default)]
pub struct Skeleton {
    pub(crate) alphabet: Alphabet,
    pub(crate) names: Vec<String>,
    pub(crate) initial: StateId,
    pub(crate) delta: Vec<Option<StateId>>,
    pub(crate) marked: Vec<bool>,
}


impl Skeleton {
    pub(crate) fn empty(alphabet: Alphabet) -> Self {
        Skeleton {
            alphabet,
            ..Skeleton::default()
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len()).map(StateId::from_index)
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(StateId::from_index)
    }

    pub fn contains(&self, s: StateId) -> bool {
        s.index() < self.names.len()
    }

    pub(crate) fn check(&self, s: StateId) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::UnknownState(s.to_string()))
        }
    }

    pub fn is_marked(&self, s: StateId) -> bool {
        self.marked[s.index()]
    }

    pub fn succ(&self, s: StateId, a: Action) -> Option<StateId> {
        self.delta[s.index() * self.alphabet.len() + a.index()]
    }

    pub(crate) fn set_succ(&mut self, s: StateId, a: Action, t: Option<StateId>) {
        let k = self.alphabet.len();
        self.delta[s.index() * k + a.index()] = t;
    }

    pub fn ready(&self, s: StateId) -> ActionSet {
        self.alphabet
            .actions()
            .filter(|&a| self.succ(s, a).is_some())
            .collect()
    }

    /// Outgoing transitions of `s` in action order.
    pub fn out(&self, s: StateId) -> impl Iterator<Item = (Action, StateId)> + '_ {
        self.alphabet
            .actions()
            .filter_map(move |a| self.succ(s, a).map(|t| (a, t)))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Action, StateId)> + '_ {
        self.states()
            .flat_map(move |s| self.out(s).map(move |(a, t)| (s, a, t)))
    }

    pub(crate) fn push_state(&mut self, name: String, marked: bool) -> StateId {
        let id = StateId::from_index(self.names.len());
        self.names.push(name);
        self.marked.push(marked);
        self.delta
            .extend(std::iter::repeat_n(None, self.alphabet.len()));
        id
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        if self.is_empty() {
            return seen;
        }
        self.forward_closure_into(self.initial, &mut seen);
        seen
    }

    fn forward_closure_into(&self, from: StateId, seen: &mut [bool]) {
        let mut stack = vec![from];
        seen[from.index()] = true;
        while let Some(s) = stack.pop() {
            for (_, t) in self.out(s) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
    }

    pub(crate) fn predecessors(&self) -> Vec<Vec<StateId>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (s, _, t) in self.transitions() {
            preds[t.index()].push(s);
        }
        preds
    }

    /// `post(s)`: reflexive-transitive successors.
    pub fn post(&self, s: StateId) -> BTreeSet<StateId> {
        let mut seen = vec![false; self.len()];
        self.forward_closure_into(s, &mut seen);
        collect_set(&seen)
    }

    /// `pre(s)`: reflexive-transitive predecessors.
    pub fn pre(&self, s: StateId) -> BTreeSet<StateId> {
        let preds = self.predecessors();
        let mut seen = vec![false; self.len()];
        seen[s.index()] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &p in &preds[x.index()] {
                if !seen[p.index()] {
                    seen[p.index()] = true;
                    stack.push(p);
                }
            }
        }
        collect_set(&seen)
    }

    /// States from which some marked state is reachable.
    pub fn co_reachable_marked(&self) -> Vec<bool> {
        let preds = self.predecessors();
        let mut seen = self.marked.clone();
        let mut stack: Vec<StateId> = self.states().filter(|&s| self.is_marked(s)).collect();
        while let Some(x) = stack.pop() {
            for &p in &preds[x.index()] {
                if !seen[p.index()] {
                    seen[p.index()] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps the states flagged in `keep`, renumbering them in order.
    /// Transitions into dropped states disappear. Returns the new
    /// skeleton and the old-to-new index map. The caller guarantees the
    /// initial state is kept.
    pub(crate) fn restrict(&self, keep: &[bool]) -> (Skeleton, Vec<Option<StateId>>) {
        let mut map = vec![None; self.len()];
        let mut out = Skeleton::empty(self.alphabet.clone());
        for s in self.states().filter(|s| keep[s.index()]) {
            map[s.index()] = Some(out.push_state(self.names[s.index()].clone(), self.is_marked(s)));
        }
        for (s, a, t) in self.transitions() {
            if let (Some(ns), Some(nt)) = (map[s.index()], map[t.index()]) {
                out.set_succ(ns, a, Some(nt));
            }
        }
        out.initial = map[self.initial.index()].unwrap_or_default();
        (out, map)
    }
}

fn collect_set(flags: &[bool]) -> BTreeSet<StateId> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(i, _)| StateId::from_index(i))
        .collect()
}

/// Anything with a transition skeleton: automata and specifications.
pub trait Structure {
    fn skeleton(&self) -> &Skeleton;

    fn alphabet(&self) -> &Alphabet {
        &self.skeleton().alphabet
    }

    fn state(&self, name: &str) -> Result<StateId> {
        self.skeleton()
            .find(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }
}

/// Interns composite state keys during breadth-first construction of
/// product-like structures.
pub(crate) struct Explorer<K> {
    ids: HashMap<K, StateId>,
    pub(crate) keys: Vec<K>,
    queue: VecDeque<StateId>,
}

impl<K: Hash + Eq + Clone> Explorer<K> {
    pub(crate) fn new() -> Self {
        Explorer {
            ids: HashMap::new(),
            keys: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Returns the id of `key`, allocating and enqueuing it when new.
    pub(crate) fn intern(&mut self, key: K) -> (StateId, bool) {
        if let Some(&id) = self.ids.get(&key) {
            return (id, false);
        }
        let id = StateId::from_index(self.keys.len());
        self.ids.insert(key.clone(), id);
        self.keys.push(key);
        self.queue.push_back(id);
        (id, true)
    }

    pub(crate) fn next(&mut self) -> Option<(StateId, K)> {
        let id = self.queue.pop_front()?;
        Some((id, self.keys[id.index()].clone()))
    }
}

pub(crate) fn pair_name(left: &str, right: &str) -> String {
    format!("({left},{right})")
}

/// A deterministic automaton `(R, r0, λ, G)`: an implementation or model.
#[derive(Clone, Debug)]
pub struct Automaton {
    pub(crate) skel: Skeleton,
}

impl Structure for Automaton {
    fn skeleton(&self) -> &Skeleton {
        &self.skel
    }
}

impl Automaton {
    pub(crate) fn from_skeleton(skel: Skeleton) -> Self {
        Automaton { skel }
    }

    pub fn len(&self) -> usize {
        self.skel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skel.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.skel.initial
    }

    pub fn name(&self, s: StateId) -> &str {
        self.skel.name(s)
    }

    pub fn is_marked(&self, s: StateId) -> bool {
        self.skel.is_marked(s)
    }

    pub fn succ(&self, s: StateId, a: Action) -> Option<StateId> {
        self.skel.succ(s, a)
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        self.skel.states()
    }

    /// Drops states unreachable from the initial state.
    pub fn gc(&self) -> Automaton {
        let keep = self.skel.reachable();
        Automaton::from_skeleton(self.skel.restrict(&keep).0)
    }

    fn keyed(&self) -> KeyedSkeleton<'_> {
        KeyedSkeleton::of(&self.skel)
    }
}

/// Name-keyed view used for structural equality independent of the
/// internal state numbering.
#[derive(PartialEq, Eq)]
pub(crate) struct KeyedSkeleton<'a> {
    alphabet: &'a Alphabet,
    initial: Option<&'a str>,
    states: std::collections::BTreeMap<&'a str, (bool, Vec<Option<&'a str>>)>,
}

impl<'a> KeyedSkeleton<'a> {
    pub(crate) fn of(skel: &'a Skeleton) -> Self {
        let states = skel
            .states()
            .map(|s| {
                let row = skel
                    .alphabet
                    .actions()
                    .map(|a| skel.succ(s, a).map(|t| skel.name(t)))
                    .collect();
                (skel.name(s), (skel.is_marked(s), row))
            })
            .collect();
        KeyedSkeleton {
            alphabet: &skel.alphabet,
            initial: (!skel.is_empty()).then(|| skel.name(skel.initial)),
            states,
        }
    }
}

impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        self.keyed() == other.keyed()
    }
}

impl Eq for Automaton {}

/// Chained builder for automata; errors are reported by [`build`](Self::build).
#[derive(Clone, Debug)]
pub struct AutomatonBuilder {
    alphabet: Alphabet,
    states: Vec<(String, bool)>,
    edges: Vec<(String, String, String)>,
    initial: Option<String>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        AutomatonBuilder {
            alphabet,
            states: Vec::new(),
            edges: Vec::new(),
            initial: None,
        }
    }

    pub fn state(mut self, name: &str) -> Self {
        self.states.push((name.to_string(), false));
        self
    }

    pub fn marked(mut self, name: &str) -> Self {
        self.states.push((name.to_string(), true));
        self
    }

    pub fn edge(mut self, from: &str, action: &str, to: &str) -> Self {
        self.edges
            .push((from.to_string(), action.to_string(), to.to_string()));
        self
    }

    pub fn init(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    pub fn build(self) -> Result<Automaton> {
        let skel = build_skeleton(self.alphabet, &self.states, &self.edges, self.initial)?;
        Ok(Automaton::from_skeleton(skel))
    }
}

pub(crate) fn build_skeleton(
    alphabet: Alphabet,
    states: &[(String, bool)],
    edges: &[(String, String, String)],
    initial: Option<String>,
) -> Result<Skeleton> {
    let mut skel = Skeleton::empty(alphabet);
    let mut ids = HashMap::new();
    for (name, marked) in states {
        if ids.contains_key(name.as_str()) {
            return Err(Error::DuplicateState(name.clone()));
        }
        let id = skel.push_state(name.clone(), *marked);
        ids.insert(name.as_str(), id);
    }
    let lookup = |n: &str| {
        ids.get(n)
            .copied()
            .ok_or_else(|| Error::UnknownState(n.to_string()))
    };
    for (from, action, to) in edges {
        let s = lookup(from)?;
        let t = lookup(to)?;
        let a = skel
            .alphabet
            .action(action)
            .ok_or_else(|| Error::UnknownAction(action.clone()))?;
        if skel.succ(s, a).is_some() {
            return Err(Error::DuplicateTransition {
                state: from.clone(),
                action: action.clone(),
            });
        }
        skel.set_succ(s, a, Some(t));
    }
    let initial = initial.ok_or(Error::MissingInitial)?;
    skel.initial = lookup(&initial)?;
    Ok(skel)
}

/// `ready(s)`: the actions fireable from `s`.
pub fn ready<S: Structure + ?Sized>(structure: &S, s: StateId) -> Result<ActionSet> {
    let skel = structure.skeleton();
    skel.check(s)?;
    Ok(skel.ready(s))
}

/// The closures `pre`, `post`, `pre+`, `post+` of a state and
/// `Cycle(s) = pre+(s) ∩ post+(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilitySets {
    pub pre: BTreeSet<StateId>,
    pub post: BTreeSet<StateId>,
    pub pre_plus: BTreeSet<StateId>,
    pub post_plus: BTreeSet<StateId>,
    pub cycle: BTreeSet<StateId>,
}

pub fn reachability_sets<S: Structure + ?Sized>(
    structure: &S,
    s: StateId,
) -> Result<ReachabilitySets> {
    let skel = structure.skeleton();
    skel.check(s)?;
    Ok(closures(skel, s))
}

fn closures(skel: &Skeleton, s: StateId) -> ReachabilitySets {
    let preds = skel.predecessors();
    let mut pre_plus = BTreeSet::new();
    for &p in &preds[s.index()] {
        pre_plus.extend(skel.pre(p));
    }
    let mut post_plus = BTreeSet::new();
    for (_, t) in skel.out(s) {
        post_plus.extend(skel.post(t));
    }
    let cycle = pre_plus.intersection(&post_plus).copied().collect();
    ReachabilitySets {
        pre: skel.pre(s),
        post: skel.post(s),
        pre_plus,
        post_plus,
        cycle,
    }
}

/// Synchronous product: transitions on shared actions only, marked iff
/// both components are marked. Only reachable pairs are built.
pub fn product(m1: &Automaton, m2: &Automaton) -> Result<Automaton> {
    m1.skel.alphabet.ensure_same(&m2.skel.alphabet)?;
    Ok(Automaton::from_skeleton(product_skeleton(&m1.skel, &m2.skel)))
}

pub(crate) fn product_skeleton(s1: &Skeleton, s2: &Skeleton) -> Skeleton {
    let mut out = Skeleton::empty(s1.alphabet.clone());
    let mut ex = Explorer::new();
    ex.intern((s1.initial, s2.initial));
    out.push_state(pair_name(s1.name(s1.initial), s2.name(s2.initial)), {
        s1.is_marked(s1.initial) && s2.is_marked(s2.initial)
    });
    while let Some((id, (r1, r2))) = ex.next() {
        for a in s1.alphabet.actions() {
            if let (Some(t1), Some(t2)) = (s1.succ(r1, a), s2.succ(r2, a)) {
                let (t, fresh) = ex.intern((t1, t2));
                if fresh {
                    out.push_state(
                        pair_name(s1.name(t1), s2.name(t2)),
                        s1.is_marked(t1) && s2.is_marked(t2),
                    );
                }
                out.set_succ(id, a, Some(t));
            }
        }
    }
    out
}

/// Bisimilarity of two deterministic automata. The candidate relation is
/// forced by determinism: it pairs the states along joint runs from the
/// initial pair.
pub fn bisimilar(m1: &Automaton, m2: &Automaton) -> Result<SimWitness> {
    m1.skel.alphabet.ensure_same(&m2.skel.alphabet)?;
    let (a, b) = (&m1.skel, &m2.skel);
    let mut w = SimWitness::new();
    let mut queue = VecDeque::from([(a.initial, b.initial)]);
    w.pairs.insert((a.initial, b.initial));
    while let Some((r1, r2)) = queue.pop_front() {
        let (z1, z2) = (a.ready(r1), b.ready(r2));
        if z1 != z2 {
            return Ok(w.fail((r1, r2), Clause::ReadyMismatch { left: z1, right: z2 }));
        }
        if a.is_marked(r1) != b.is_marked(r2) {
            return Ok(w.fail((r1, r2), Clause::MarkingMismatch));
        }
        for x in z1.iter() {
            let next = (a.succ(r1, x).unwrap(), b.succ(r2, x).unwrap());
            if w.pairs.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(w)
}

/// Classification of a reachable state of an automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateClass {
    Deadlock,
    InLivelock,
    Normal,
}

pub fn classify_state(m: &Automaton, r: StateId) -> Result<StateClass> {
    m.skel.check(r)?;
    if !m.skel.reachable()[r.index()] {
        return Err(Error::Unreachable(m.name(r).to_string()));
    }
    Ok(classify(&m.skel, r))
}

pub(crate) fn classify(skel: &Skeleton, r: StateId) -> StateClass {
    if !skel.is_marked(r) && skel.ready(r).is_empty() {
        return StateClass::Deadlock;
    }
    let cycle = closures(skel, r).cycle;
    let closed = cycle
        .iter()
        .all(|&x| skel.out(x).all(|(_, y)| cycle.contains(&y)));
    if !cycle.is_empty() && cycle.iter().all(|&x| !skel.is_marked(x)) && closed {
        StateClass::InLivelock
    } else {
        StateClass::Normal
    }
}

/// Verdict of [`is_terminating`] with the offending reachable states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Termination {
    pub offending: Vec<(StateId, StateClass)>,
}

impl Termination {
    pub fn terminating(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Deadlock- and livelock-freedom, decided by the literal classifier on
/// every reachable state.
pub fn is_terminating(m: &Automaton) -> Termination {
    let reach = m.skel.reachable();
    let offending = m
        .states()
        .filter(|s| reach[s.index()])
        .filter_map(|s| match classify(&m.skel, s) {
            StateClass::Normal => None,
            c => Some((s, c)),
        })
        .collect();
    Termination { offending }
}

/// Equivalent termination criterion: every reachable state can reach a
/// marked state. Linear time.
pub fn always_reaches_marked(m: &Automaton) -> bool {
    skeleton_terminates(&m.skel)
}

pub(crate) fn skeleton_terminates(skel: &Skeleton) -> bool {
    let reach = skel.reachable();
    let co = skel.co_reachable_marked();
    reach.iter().zip(&co).all(|(&r, &c)| !r || c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    /// M′: 0′ -a-> 0′, 0′ -b-> 1′ (marked).
    fn m_prime() -> Automaton {
        AutomatonBuilder::new(abc())
            .state("0'")
            .marked("1'")
            .edge("0'", "a", "0'")
            .edge("0'", "b", "1'")
            .init("0'")
            .build()
            .unwrap()
    }

    /// M″: 0″ -a-> 1″ -a-> 0″, 1″ -c-> 2″ (marked).
    fn m_second() -> Automaton {
        AutomatonBuilder::new(abc())
            .state("0''")
            .state("1''")
            .marked("2''")
            .edge("0''", "a", "1''")
            .edge("1''", "a", "0''")
            .edge("1''", "c", "2''")
            .init("0''")
            .build()
            .unwrap()
    }

    fn id(m: &Automaton, n: &str) -> StateId {
        m.state(n).unwrap()
    }

    #[test]
    fn ready_sets() {
        let m = m_prime();
        let al = abc();
        assert_eq!(
            ready(&m, id(&m, "0'")).unwrap(),
            ActionSet::from_actions([al.action("a").unwrap(), al.action("b").unwrap()])
        );
        assert!(ready(&m, id(&m, "1'")).unwrap().is_empty());
        assert!(matches!(
            ready(&m, StateId(9)),
            Err(Error::UnknownState(_))
        ));
    }

    #[test]
    fn closures_on_m_prime() {
        let m = m_prime();
        let (s0, s1) = (id(&m, "0'"), id(&m, "1'"));
        let r0 = reachability_sets(&m, s0).unwrap();
        assert_eq!(r0.cycle, BTreeSet::from([s0]));
        let r1 = reachability_sets(&m, s1).unwrap();
        assert!(r1.cycle.is_empty());
        assert_eq!(r1.pre, BTreeSet::from([s0, s1]));
    }

    #[test]
    fn closures_on_isolated_state() {
        let m = AutomatonBuilder::new(abc())
            .state("x")
            .init("x")
            .build()
            .unwrap();
        let x = id(&m, "x");
        let r = reachability_sets(&m, x).unwrap();
        assert_eq!(r.pre, BTreeSet::from([x]));
        assert_eq!(r.post, BTreeSet::from([x]));
        assert!(r.pre_plus.is_empty() && r.post_plus.is_empty() && r.cycle.is_empty());
        assert!(ready(&m, x).unwrap().is_empty());
    }

    #[test]
    fn product_of_figure_models() {
        let p = product(&m_prime(), &m_second()).unwrap();
        // (0′,0″) -a-> (0′,1″) -a-> (0′,0″); b and c never synchronize.
        assert_eq!(p.len(), 2);
        let init = p.initial();
        assert_eq!(p.name(init), "(0',0'')");
        let al = abc();
        let a = al.action("a").unwrap();
        let next = p.succ(init, a).unwrap();
        assert_eq!(p.name(next), "(0',1'')");
        assert_eq!(p.succ(next, a), Some(init));
        assert!(p.states().all(|s| !p.is_marked(s)));
        assert!(!is_terminating(&p).terminating());
    }

    #[test]
    fn product_rejects_alphabet_mismatch() {
        let other = AutomatonBuilder::new(Alphabet::new(["a"]).unwrap())
            .state("x")
            .init("x")
            .build()
            .unwrap();
        assert!(matches!(
            product(&m_prime(), &other),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn bisimilarity() {
        assert!(bisimilar(&m_prime(), &m_prime()).unwrap().holds());
        let w = bisimilar(&m_prime(), &m_second()).unwrap();
        assert!(!w.holds());
        assert!(matches!(
            w.violation().unwrap().clause,
            Clause::ReadyMismatch { .. }
        ));
    }

    #[test]
    fn classification() {
        let m = m_prime();
        assert_eq!(classify_state(&m, id(&m, "1'")).unwrap(), StateClass::Normal);
        assert_eq!(classify_state(&m, id(&m, "0'")).unwrap(), StateClass::Normal);
        assert!(is_terminating(&m).terminating());
        assert!(is_terminating(&m_second()).terminating());

        let sink = AutomatonBuilder::new(abc())
            .state("x")
            .init("x")
            .build()
            .unwrap();
        assert_eq!(classify_state(&sink, id(&sink, "x")).unwrap(), StateClass::Deadlock);

        let loop_ = AutomatonBuilder::new(abc())
            .state("x")
            .edge("x", "a", "x")
            .init("x")
            .build()
            .unwrap();
        assert_eq!(
            classify_state(&loop_, id(&loop_, "x")).unwrap(),
            StateClass::InLivelock
        );

        let only_marked = AutomatonBuilder::new(abc())
            .marked("x")
            .init("x")
            .build()
            .unwrap();
        assert!(is_terminating(&only_marked).terminating());
    }

    #[test]
    fn unreachable_states_are_not_classified() {
        let m = AutomatonBuilder::new(abc())
            .marked("x")
            .state("y")
            .init("x")
            .build()
            .unwrap();
        assert!(matches!(
            classify_state(&m, id(&m, "y")),
            Err(Error::Unreachable(_))
        ));
        assert!(is_terminating(&m).terminating());
        assert_eq!(m.gc().len(), 1);
    }

    #[test]
    fn builder_rejects_nondeterminism() {
        let r = AutomatonBuilder::new(abc())
            .state("x")
            .edge("x", "a", "x")
            .edge("x", "a", "x")
            .init("x")
            .build();
        assert!(matches!(r, Err(Error::DuplicateTransition { .. })));
    }

    #[test]
    fn structural_equality_ignores_numbering() {
        let a = AutomatonBuilder::new(abc())
            .state("p")
            .marked("q")
            .edge("p", "a", "q")
            .init("p")
            .build()
            .unwrap();
        let b = AutomatonBuilder::new(abc())
            .marked("q")
            .state("p")
            .edge("p", "a", "q")
            .init("p")
            .build()
            .unwrap();
        assert_eq!(a, b);
    }
}
