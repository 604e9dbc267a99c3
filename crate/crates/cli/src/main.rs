//! Command-line front end for marked acceptance specifications.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 resource cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mas_core::compat::{compatible_reachability, cycles_from, implementable_cycles, partners, unfoldings};
use mas_core::correction::{dead_correction, live_correction, quotient};
use mas_core::dsl::{self, Document, Render};
use mas_core::normalize::normal_form;
use mas_core::oracle::{self, canonical_form, Bounds, Oracle, Theorem, Verdict};
use mas_core::prequotient::pre_quotient;
use mas_core::semantics::satisfies_masp;
use mas_core::{bisimilar, product, Alphabet, Automaton, Clause, Mas, Masp, SimWitness, Structure};

#[derive(Parser)]
#[command(name = "mas", version, about = "Marked acceptance specifications: satisfaction, quotient, compatibility")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Out {
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a file.
    Validate { file: PathBuf },
    /// Normal form of a specification.
    Normalize {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Synchronous product of two automata.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Whether an automaton satisfies a specification; exit 1 when not.
    Sat { model: PathBuf, spec: PathBuf },
    /// Whether two automata are bisimilar; exit 1 when not.
    Bisim { left: PathBuf, right: PathBuf },
    /// Pre-quotient of two specifications.
    Prequotient {
        s1: PathBuf,
        s2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Quotient `S1 / S2`, a specification with priorities.
    Quotient {
        s1: PathBuf,
        s2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Compatible reachability; exit 1 with reasons when incompatible.
    Compat { s1: PathBuf, s2: PathBuf },
    /// Implementable cycles of a specification.
    Cycles {
        spec: PathBuf,
        /// List every enumerated cycle, implementable or not.
        #[arg(long)]
        all: bool,
    },
    /// Deadlock correction of `S1` against `S2`.
    CorrectDead {
        s1: PathBuf,
        s2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Livelock correction of `S1` against `S2`, unfolding both first when
    /// some state has several partners.
    CorrectLive {
        s1: PathBuf,
        s2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate automata up to a bound, or the models of a specification.
    Enumerate {
        /// Comma-separated alphabet; defaults to the specification's.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value_t = 2)]
        states: usize,
        spec: Option<PathBuf>,
    },
    /// Run the theorem oracle on a pair of specifications or on random pairs.
    CheckTheorems {
        s1: Option<PathBuf>,
        s2: Option<PathBuf>,
        /// Restrict to these theorems (repeatable).
        #[arg(long = "theorem")]
        theorems: Vec<Theorem>,
        /// State bound for candidate automata.
        #[arg(long, default_value_t = 3)]
        left: usize,
        /// State bound for models of the second specification.
        #[arg(long, default_value_t = 3)]
        right: usize,
        /// Also check this many random normal-form pairs.
        #[arg(long, default_value_t = 0)]
        random: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Alphabet of the random pairs.
        #[arg(long, default_value = "a,b,c")]
        alphabet: String,
        /// State bound of the random specifications.
        #[arg(long, default_value_t = 3)]
        spec_states: usize,
        /// Print each pair as comment lines, and a note for every verdict.
        #[arg(long)]
        verbose: bool,
    },
    /// Graphviz rendering of any file.
    Dot {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

/// A failure with its exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl From<mas_core::Error> for Fail {
    fn from(e: mas_core::Error) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 2 };
        Fail { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

type Res<T> = Result<T, Fail>;

fn load(path: &Path) -> Res<Document> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|e| usage(format!("{}:{e}", path.display())))
}

fn load_automaton(path: &Path) -> Res<(String, Automaton)> {
    let d = load(path)?;
    let kind = d.value.kind();
    match d.value.into_automaton() {
        Some(a) => Ok((d.name, a)),
        None => Err(usage(format!("{}: expected an automaton, found a {kind}", path.display()))),
    }
}

fn load_mas(path: &Path) -> Res<(String, Mas)> {
    let d = load(path)?;
    let kind = d.value.kind();
    match d.value.into_mas() {
        Some(m) => Ok((d.name, m)),
        None => Err(usage(format!("{}: expected a mas block, found a {kind}", path.display()))),
    }
}

fn load_spec(path: &Path) -> Res<(String, Masp)> {
    let d = load(path)?;
    match d.value.into_masp() {
        Some(m) => Ok((d.name, m)),
        None => Err(usage(format!("{}: expected a specification, found an automaton", path.display()))),
    }
}

fn emit(out: &Out, text: &str) -> Res<()> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<R: Render + ?Sized>(out: &Out, name: &str, x: &R) -> Res<u8> {
    emit(out, &dsl::serialize(name, x))?;
    Ok(0)
}

fn describe(clause: &Clause, al: &Alphabet) -> String {
    match clause {
        Clause::ReadyNotAccepted { ready } => format!("ready set {} is not accepted", al.show_set(*ready)),
        Clause::MarkingMismatch => "marked model state paired with an unmarked state".into(),
        Clause::MissingTransition { action } => format!("no specification transition on {}", al.name(*action)),
        Clause::Unnecessary { action } => format!("unnecessary transition on {}", al.name(*action)),
        Clause::ReadyMismatch { left, right } => {
            format!("ready sets differ: {} vs {}", al.show_set(*left), al.show_set(*right))
        }
        Clause::NotTerminating { .. } => "the automaton is not terminating".into(),
        Clause::PriorityUnmet { index } => format!("priority set {index} is not met"),
        Clause::Bottom => "the specification is bottom".into(),
    }
}

fn show_relation<A: Structure, B: Structure>(w: &SimWitness, a: &A, b: &B) -> String {
    let pairs: Vec<String> = w
        .pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.skeleton().name(x), b.skeleton().name(y)))
        .collect();
    format!("{{{}}}", pairs.join(", "))
}

fn verdict<A: Structure, B: Structure>(w: &SimWitness, a: &A, b: &B) -> u8 {
    match w.violation() {
        None => {
            println!("holds");
            println!("relation {}", show_relation(w, a, b));
            0
        }
        Some(v) => {
            let at = v
                .pair
                .map(|(x, y)| format!(" at ({},{})", a.skeleton().name(x), b.skeleton().name(y)))
                .unwrap_or_default();
            println!("fails{at}: {}", describe(&v.clause, a.alphabet()));
            1
        }
    }
}

fn parse_alphabet(text: &str) -> Res<Alphabet> {
    let names = text.split(',').map(str::trim).filter(|s| !s.is_empty());
    Ok(Alphabet::new(names)?)
}

fn run(cmd: Command) -> Res<u8> {
    match cmd {
        Command::Validate { file } => {
            let d = load(&file)?;
            println!("ok: {} {}", d.value.kind(), d.name);
            Ok(0)
        }
        Command::Normalize { file, out } => {
            let (name, m) = load_mas(&file)?;
            render(&out, &name, &normal_form(&m))
        }
        Command::Product { left, right, out } => {
            let (n1, a) = load_automaton(&left)?;
            let (n2, b) = load_automaton(&right)?;
            render(&out, &format!("{n1}_x_{n2}"), &product(&a, &b)?)
        }
        Command::Sat { model, spec } => {
            let (_, m) = load_automaton(&model)?;
            let (_, s) = load_spec(&spec)?;
            let w = satisfies_masp(&m, &s)?;
            Ok(verdict(&w, &m, &s))
        }
        Command::Bisim { left, right } => {
            let (_, a) = load_automaton(&left)?;
            let (_, b) = load_automaton(&right)?;
            let w = bisimilar(&a, &b)?;
            Ok(verdict(&w, &a, &b))
        }
        Command::Prequotient { s1, s2, out } => {
            let (n1, a) = load_mas(&s1)?;
            let (n2, b) = load_mas(&s2)?;
            render(&out, &format!("{n1}_par_{n2}"), &pre_quotient(&a, &b)?)
        }
        Command::Quotient { s1, s2, out } => {
            let (n1, a) = load_mas(&s1)?;
            let (n2, b) = load_mas(&s2)?;
            render(&out, &format!("{n1}_quo_{n2}"), &quotient(&a, &b)?)
        }
        Command::Compat { s1, s2 } => {
            let (_, a) = load_mas(&s1)?;
            let (_, b) = load_mas(&s2)?;
            let r = compatible_reachability(&a, &b)?;
            if r.compatible() {
                println!("compatible");
                Ok(0)
            } else {
                println!("incompatible");
                for reason in r.reasons() {
                    println!("{reason}");
                }
                Ok(1)
            }
        }
        Command::Cycles { spec, all } => {
            let (_, s) = load_mas(&spec)?;
            let cycles = if all {
                let mut set = std::collections::BTreeSet::new();
                for q in s.states() {
                    set.extend(cycles_from(&s, q)?);
                }
                set
            } else {
                implementable_cycles(&s)?
            };
            if cycles.is_empty() {
                println!("no cycles");
            }
            for c in &cycles {
                println!("{}", c.show(&s));
            }
            Ok(0)
        }
        Command::CorrectDead { s1, s2, out } => {
            let (n1, a) = load_mas(&s1)?;
            let (_, b) = load_mas(&s2)?;
            let d = dead_correction(&normal_form(&a), &normal_form(&b))?;
            render(&out, &format!("{n1}_dead"), &d)
        }
        Command::CorrectLive { s1, s2, out } => {
            let (n1, a) = load_mas(&s1)?;
            let (_, b) = load_mas(&s2)?;
            let (a, b) = (normal_form(&a), normal_form(&b));
            let single = a.is_bottom() || b.is_bottom() || partners(&a, &b)?.single_partners();
            let corrected = if single {
                live_correction(&a, &b)?
            } else {
                let (u1, u2) = unfoldings(&a, &b)?;
                live_correction(&u1.mas, &u2.mas)?
            };
            render(&out, &format!("{n1}_live"), &corrected)
        }
        Command::Enumerate { alphabet, states, spec } => {
            let list = match spec {
                Some(p) => {
                    let (_, s) = load_spec(&p)?;
                    if let Some(a) = &alphabet {
                        s.alphabet().ensure_same(&parse_alphabet(a)?)?;
                    }
                    oracle::enumerate_models_masp(&s, states)?
                }
                None => {
                    let al = parse_alphabet(alphabet.as_deref().unwrap_or(""))?;
                    oracle::enumerate_automata(&al, states)?
                }
            };
            for m in &list {
                println!("{}", canonical_form(m));
            }
            eprintln!("{} automata", list.len());
            Ok(0)
        }
        Command::CheckTheorems { s1, s2, theorems, left, right, random, seed, alphabet, spec_states, verbose } => {
            let theorems = if theorems.is_empty() { Theorem::ALL.to_vec() } else { theorems };
            let bounds = Bounds { left, right };
            let mut pairs = Vec::new();
            match (s1, s2) {
                (Some(a), Some(b)) => {
                    let (n1, x) = load_mas(&a)?;
                    let (n2, y) = load_mas(&b)?;
                    pairs.push((format!("{n1},{n2}"), x, y));
                }
                (None, None) => {}
                _ => return Err(usage("check-theorems takes two specifications or none")),
            }
            let al = parse_alphabet(&alphabet)?;
            for i in 0..random {
                let (x, y) = oracle::random_spec_pair(seed + i, &al, spec_states);
                pairs.push((format!("random seed={}", seed + i), x, y));
            }
            if pairs.is_empty() {
                return Err(usage("nothing to check: give two specifications or --random N"));
            }
            let mut oracle = Oracle::new();
            let mut hard = false;
            for (label, x, y) in &pairs {
                println!("# pair {label}");
                if verbose {
                    for (n, s) in [("S1", x), ("S2", y)] {
                        for line in dsl::serialize(n, s).lines() {
                            println!("#   {line}");
                        }
                    }
                }
                for &t in &theorems {
                    let r = oracle.check(t, x, y, bounds)?;
                    hard |= r.verdict == Verdict::HardFail;
                    println!("{r}");
                    if verbose && !r.note.is_empty() {
                        println!("#   {}", r.note);
                    }
                }
            }
            Ok(if hard { 1 } else { 0 })
        }
        Command::Dot { file, out } => {
            let d = load(&file)?;
            emit(&out, &dsl::to_dot(&d.name, &d.value))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
