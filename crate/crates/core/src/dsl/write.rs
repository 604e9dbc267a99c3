use std::fmt::Write as _;

use super::Value;
use crate::alphabet::{AcceptanceSet, Alphabet};
use crate::automaton::{Automaton, Skeleton, StateId};
use crate::mas::{Mas, Masp};

/// Values that have a text and a DOT rendering.
pub trait Render {
    fn kind(&self) -> &'static str;
    fn skeleton(&self) -> &Skeleton;
    /// `None` for plain automata.
    fn acceptance(&self, q: StateId) -> Option<&AcceptanceSet>;
    fn is_bottom(&self) -> bool {
        false
    }
    /// Priority lines, already rendered and sorted.
    fn priority_lines(&self) -> Vec<String> {
        Vec::new()
    }
}

impl Render for Automaton {
    fn kind(&self) -> &'static str {
        "automaton"
    }
    fn skeleton(&self) -> &Skeleton {
        &self.skel
    }
    fn acceptance(&self, _: StateId) -> Option<&AcceptanceSet> {
        None
    }
}

impl Render for Mas {
    fn kind(&self) -> &'static str {
        "mas"
    }
    fn skeleton(&self) -> &Skeleton {
        &self.skel
    }
    fn acceptance(&self, q: StateId) -> Option<&AcceptanceSet> {
        Some(self.acc(q))
    }
    fn is_bottom(&self) -> bool {
        Mas::is_bottom(self)
    }
}

impl Render for Masp {
    fn kind(&self) -> &'static str {
        "masp"
    }
    fn skeleton(&self) -> &Skeleton {
        &self.base.skel
    }
    fn acceptance(&self, q: StateId) -> Option<&AcceptanceSet> {
        Some(self.base.acc(q))
    }
    fn is_bottom(&self) -> bool {
        self.base.is_bottom()
    }
    fn priority_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .named_priorities()
            .iter()
            .map(|p| {
                let pairs: Vec<String> = p.iter().map(|(q, a)| format!("({q},{a})")).collect();
                format!("priority {{ {} }}", pairs.join(" | "))
            })
            .collect();
        lines.sort();
        lines
    }
}

impl Render for Value {
    fn kind(&self) -> &'static str {
        Value::kind(self)
    }
    fn skeleton(&self) -> &Skeleton {
        match self {
            Value::Automaton(a) => a.skeleton(),
            Value::Mas(m) => Render::skeleton(m),
            Value::Masp(p) => Render::skeleton(p),
        }
    }
    fn acceptance(&self, q: StateId) -> Option<&AcceptanceSet> {
        match self {
            Value::Automaton(a) => a.acceptance(q),
            Value::Mas(m) => m.acceptance(q),
            Value::Masp(p) => p.acceptance(q),
        }
    }
    fn is_bottom(&self) -> bool {
        match self {
            Value::Automaton(_) => false,
            Value::Mas(m) => m.is_bottom(),
            Value::Masp(p) => p.is_bottom(),
        }
    }
    fn priority_lines(&self) -> Vec<String> {
        match self {
            Value::Masp(p) => p.priority_lines(),
            _ => Vec::new(),
        }
    }
}

/// States in name order.
fn sorted_states(skel: &Skeleton) -> Vec<StateId> {
    let mut states: Vec<StateId> = skel.states().collect();
    states.sort_by(|&x, &y| skel.name(x).cmp(skel.name(y)));
    states
}

/// `{ {a}, {a,b} }`, entries ordered by size then contents; `{}` is the empty set.
fn acc_text(al: &Alphabet, acc: &AcceptanceSet) -> String {
    if acc.is_empty() {
        return "{ }".to_string();
    }
    let entries: Vec<String> = acc.iter().map(|x| al.show_set(x)).collect();
    format!("{{ {} }}", entries.join(", "))
}

/// Canonical text: states by name, acceptance entries by size and then
/// contents, transitions by source name and action. Equal values give
/// identical bytes.
pub fn serialize<R: Render + ?Sized>(name: &str, x: &R) -> String {
    let skel = x.skeleton();
    let al = &skel.alphabet;
    let mut out = String::new();
    let actions = al.names().join(", ");
    if actions.is_empty() {
        out.push_str("alphabet:\n");
    } else {
        let _ = writeln!(out, "alphabet: {actions}");
    }
    let _ = writeln!(out, "{} {name} {{", x.kind());
    if x.is_bottom() {
        out.push_str("  bottom\n}\n");
        return out;
    }
    let _ = writeln!(out, "  init {}", skel.name(skel.initial()));
    let states = sorted_states(skel);
    for &q in &states {
        let _ = write!(out, "  state {}", skel.name(q));
        if skel.is_marked(q) {
            out.push_str(" marked");
        }
        if let Some(acc) = x.acceptance(q) {
            let _ = write!(out, " acc {}", acc_text(al, acc));
        }
        out.push('\n');
    }
    for &q in &states {
        for (a, t) in skel.out(q) {
            let _ = writeln!(out, "  {} -{}-> {}", skel.name(q), al.name(a), skel.name(t));
        }
    }
    for line in x.priority_lines() {
        let _ = writeln!(out, "  {line}");
    }
    out.push_str("}\n");
    out
}

/// Ids never contain quotes or backslashes, so labels keep their `\n`.
fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

/// Graphviz rendering: marked states are double circles and specification
/// states carry their acceptance set under the name. Priorities become
/// comment lines.
pub fn to_dot<R: Render + ?Sized>(name: &str, x: &R) -> String {
    let skel = x.skeleton();
    let al = &skel.alphabet;
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n");
    if x.is_bottom() {
        out.push_str("  // bottom: no models\n}\n");
        return out;
    }
    out.push_str("  __init [shape=point];\n");
    let states = sorted_states(skel);
    for &q in &states {
        let shape = if skel.is_marked(q) { "doublecircle" } else { "circle" };
        let label = match x.acceptance(q) {
            Some(acc) => format!("{}\\n{}", skel.name(q), al.show_acc(acc)),
            None => skel.name(q).to_string(),
        };
        let _ = writeln!(out, "  {} [shape={shape}, label={}];", quote(skel.name(q)), quote(&label));
    }
    let _ = writeln!(out, "  __init -> {};", quote(skel.name(skel.initial())));
    for &q in &states {
        for (a, t) in skel.out(q) {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(skel.name(q)),
                quote(skel.name(t)),
                quote(al.name(a))
            );
        }
    }
    for line in x.priority_lines() {
        let _ = writeln!(out, "  // {line}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::mas::MasBuilder;

    fn s1() -> Mas {
        MasBuilder::new(Alphabet::new(["a", "b", "c"]).unwrap())
            .state("0", &[&["a", "c"], &["a"], &["a", "b"]])
            .marked("1", &[&[]])
            .edge("0", "c", "1")
            .edge("0", "a", "0")
            .edge("0", "b", "1")
            .init("0")
            .build()
            .unwrap()
    }

    #[test]
    fn canonical_text() {
        let text = serialize("S1", &s1());
        assert_eq!(
            text,
            "alphabet: a, b, c\nmas S1 {\n  init 0\n  state 0 acc { {a}, {a,b}, {a,c} }\n  state 1 marked acc { {} }\n  0 -a-> 0\n  0 -b-> 1\n  0 -c-> 1\n}\n"
        );
        let back = parse(&text).unwrap();
        assert_eq!(back.value, Value::Mas(s1()));
        assert_eq!(serialize(&back.name, &back.value), text);
    }

    #[test]
    fn masp_and_bottom_round_trip() {
        let p = MasBuilder::new(Alphabet::new(["a", "b"]).unwrap())
            .state("(x,y)", &[&["a"], &["b"]])
            .marked("z", &[&[]])
            .edge("(x,y)", "a", "z")
            .edge("(x,y)", "b", "z")
            .init("(x,y)")
            .priority(&[("(x,y)", "b"), ("(x,y)", "a")])
            .build_masp()
            .unwrap();
        let text = serialize("P", &p);
        assert!(text.contains("  priority { ((x,y),a) | ((x,y),b) }\n"));
        assert_eq!(parse(&text).unwrap().value, Value::Masp(p));
        let b = Mas::bottom(Alphabet::new(["a"]).unwrap());
        let text = serialize("B", &b);
        assert_eq!(text, "alphabet: a\nmas B {\n  bottom\n}\n");
        assert_eq!(parse(&text).unwrap().value, Value::Mas(b));
    }

    #[test]
    fn dot_output() {
        let dot = to_dot("S1", &s1());
        assert!(dot.contains("\"1\" [shape=doublecircle, label=\"1\\n{{}}\"];"));
        assert!(dot.contains("\"0\" [shape=circle, label=\"0\\n{{a}, {a,b}, {a,c}}\"];"));
        assert!(dot.contains("__init -> \"0\";"));
        assert!(dot.contains("\"0\" -> \"1\" [label=\"c\"];"));
    }
}
