//! Text format for automata, specifications and specifications with
//! priorities.
//!
//! ```text
//! # comments run to the end of the line
//! alphabet: a, b, c
//! mas S1 {
//!   init 0
//!   state 0 acc { {a}, {a,b}, {a,c} }
//!   state 1 marked acc { {} }
//!   0 -a-> 0
//!   0 -b-> 1
//!   0 -c-> 1
//! }
//! ```
//!
//! A file holds one `automaton`, `mas` or `masp` block. Automaton states
//! take no `acc`; `masp` blocks add `priority { (q,a) | (q,b) }` lines, one
//! per conjunct. A `mas` or `masp` block containing only `bottom` denotes
//! the specification without models. State ids are plain identifiers
//! (letters, digits, `_`, `'` and `.`) or pairs `(left,right)` of ids.
//! `q_unknown` is reserved for the fresh partner state and rejected as a
//! bare id.

mod parse;
mod write;

use std::fmt;

pub use parse::parse;
pub use write::{serialize, to_dot, Render};

use crate::automaton::Automaton;
use crate::mas::{Mas, Masp};

/// A parse or validation failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// The structure a file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Automaton(Automaton),
    Mas(Mas),
    Masp(Masp),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Automaton(_) => "automaton",
            Value::Mas(_) => "mas",
            Value::Masp(_) => "masp",
        }
    }

    /// A specification block as a [`Masp`]; plain MAS get no priorities.
    pub fn into_masp(self) -> Option<Masp> {
        match self {
            Value::Automaton(_) => None,
            Value::Mas(m) => Some(Masp::from_mas(m)),
            Value::Masp(p) => Some(p),
        }
    }

    /// A `mas` block, or a `masp` block without priorities.
    pub fn into_mas(self) -> Option<Mas> {
        match self {
            Value::Mas(m) => Some(m),
            Value::Masp(p) if p.priority_count() == 0 => Some(p.base),
            _ => None,
        }
    }

    pub fn into_automaton(self) -> Option<Automaton> {
        match self {
            Value::Automaton(a) => Some(a),
            _ => None,
        }
    }
}

/// A parsed block: its name and contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub value: Value,
}
