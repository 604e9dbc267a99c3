use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{AcceptanceSet, ActionSet, Alphabet};
use crate::automaton::{Automaton, Skeleton, StateId};
use crate::mas::Mas;
use crate::normalize::normal_form;

fn random_skeleton<R: Rng>(rng: &mut R, al: &Alphabet, max_states: usize, prefix: &str) -> Skeleton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut skel = Skeleton::empty(al.clone());
    for i in 0..n {
        skel.push_state(format!("{prefix}{i}"), rng.gen_bool(0.4));
    }
    for s in 0..n {
        for a in al.actions() {
            if rng.gen_bool(0.5) {
                let t = StateId::from_index(rng.gen_range(0..n));
                skel.set_succ(StateId::from_index(s), a, Some(t));
            }
        }
    }
    skel
}

/// An automaton with up to `max_states` states; some may be unreachable.
pub fn random_automaton<R: Rng>(rng: &mut R, al: &Alphabet, max_states: usize) -> Automaton {
    Automaton::from_skeleton(random_skeleton(rng, al, max_states, "r"))
}

/// A specification with up to `max_states` states, not necessarily in
/// normal form. Each state gets one to three acceptance entries drawn
/// among the subsets of its defined actions.
pub fn random_mas<R: Rng>(rng: &mut R, al: &Alphabet, max_states: usize) -> Mas {
    let skel = random_skeleton(rng, al, max_states, "");
    let acc = skel
        .states()
        .map(|q| {
            let ready = skel.ready(q);
            let subsets: Vec<ActionSet> = ready.subsets().collect();
            let entries = rng.gen_range(1..=3);
            (0..entries)
                .map(|_| subsets[rng.gen_range(0..subsets.len())])
                .collect::<AcceptanceSet>()
        })
        .collect();
    Mas::from_parts(skel, acc)
}

/// A non-bottom specification in normal form.
pub fn random_spec<R: Rng>(rng: &mut R, al: &Alphabet, max_states: usize) -> Mas {
    loop {
        let s = normal_form(&random_mas(rng, al, max_states));
        if !s.is_bottom() {
            return s;
        }
    }
}

/// A reproducible pair of normal-form specifications; the second one's
/// states carry a prime.
pub fn random_spec_pair(seed: u64, al: &Alphabet, max_states: usize) -> (Mas, Mas) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s1 = random_spec(&mut rng, al, max_states);
    let mut s2 = random_spec(&mut rng, al, max_states);
    for name in &mut s2.skel.names {
        name.push('\'');
    }
    (s1, s2)
}
