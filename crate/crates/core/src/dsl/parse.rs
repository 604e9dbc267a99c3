use std::collections::{BTreeSet, HashMap};

use super::{Document, ParseError, Value};
use crate::alphabet::{AcceptanceSet, ActionSet, Alphabet};
use crate::automaton::{Automaton, Skeleton, StateId};
use crate::compat::UNKNOWN;
use crate::mas::{Mas, Masp, PrioritySet};

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    /// `-a->`, carrying the action name.
    Arrow(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Pipe,
    Colon,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '?')
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Pipe),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            bump!();
            out.push(Token { tok, line: l, col: k });
        } else if c.is_whitespace() {
            bump!();
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
        } else if c == '-' {
            bump!();
            let mut name = String::new();
            while chars.peek().is_some_and(|&c| ident_char(c)) {
                name.push(bump!().unwrap());
            }
            if name.is_empty() || bump!() != Some('-') || bump!() != Some('>') {
                return Err(ParseError::new(l, k, "malformed transition arrow, expected `-action->`"));
            }
            out.push(Token { tok: Tok::Arrow(name), line: l, col: k });
        } else if ident_char(c) {
            let mut name = String::new();
            while chars.peek().is_some_and(|&c| ident_char(c)) {
                name.push(bump!().unwrap());
            }
            out.push(Token { tok: Tok::Ident(name), line: l, col: k });
        } else {
            return Err(ParseError::new(l, k, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A name together with the position it was written at.
#[derive(Clone, Debug)]
struct Spanned {
    text: String,
    line: usize,
    col: usize,
}

impl Spanned {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Automaton,
    Mas,
    Masp,
}

struct StateDecl {
    name: Spanned,
    marked: bool,
    acc: Option<Vec<Vec<Spanned>>>,
}

#[derive(Default)]
struct Block {
    init: Option<Spanned>,
    states: Vec<StateDecl>,
    edges: Vec<(Spanned, Spanned, Spanned)>,
    priorities: Vec<Vec<(Spanned, Spanned)>>,
    bottom: Option<Spanned>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.col, msg)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Arrow(a) => format!("`-{a}->`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<Token> {
        if self.peek().tok == want {
            Ok(self.next())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                Self::describe(&want),
                Self::describe(&self.peek().tok)
            )))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Spanned> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.next();
                Ok(Spanned { text: s, line: t.line, col: t.col })
            }
            other => Err(self.error_here(format!("expected {what}, found {}", Self::describe(&other)))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Spanned> {
        let s = self.ident(&format!("`{kw}`"))?;
        if s.text == kw {
            Ok(s)
        } else {
            Err(s.err(format!("expected `{kw}`, found `{}`", s.text)))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    /// A plain or compound state id; pairs are normalized to `(l,r)`.
    fn state_id(&mut self) -> PResult<Spanned> {
        let start = self.peek().clone();
        let text = self.state_text()?;
        Ok(Spanned { text, line: start.line, col: start.col })
    }

    fn state_text(&mut self) -> PResult<String> {
        if self.peek().tok == Tok::LParen {
            self.next();
            let l = self.state_text()?;
            self.expect(Tok::Comma)?;
            let r = self.state_text()?;
            self.expect(Tok::RParen)?;
            Ok(format!("({l},{r})"))
        } else {
            Ok(self.ident("a state id")?.text)
        }
    }

    fn header(&mut self) -> PResult<Vec<Spanned>> {
        self.keyword("alphabet")?;
        self.expect(Tok::Colon)?;
        let block_next = |p: &Parser| {
            matches!(p.peek_at(0), Tok::Ident(k) if ["automaton", "mas", "masp"].contains(&k.as_str()))
                && *p.peek_at(2) == Tok::LBrace
        };
        let mut actions = Vec::new();
        if block_next(self) || self.peek().tok == Tok::Eof {
            return Ok(actions);
        }
        loop {
            actions.push(self.ident("an action name")?);
            if self.peek().tok != Tok::Comma {
                return Ok(actions);
            }
            self.next();
        }
    }

    fn action_set(&mut self) -> PResult<Vec<Spanned>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.peek().tok == Tok::RBrace {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.ident("an action name")?);
            match self.next() {
                Token { tok: Tok::Comma, .. } => {}
                Token { tok: Tok::RBrace, .. } => return Ok(out),
                t => {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("expected `,` or `}}`, found {}", Self::describe(&t.tok)),
                    ))
                }
            }
        }
    }

    fn acceptance(&mut self) -> PResult<Vec<Vec<Spanned>>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.peek().tok == Tok::RBrace {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.action_set()?);
            match self.next() {
                Token { tok: Tok::Comma, .. } => {}
                Token { tok: Tok::RBrace, .. } => return Ok(out),
                t => {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("expected `,` or `}}`, found {}", Self::describe(&t.tok)),
                    ))
                }
            }
        }
    }

    fn priority(&mut self) -> PResult<Vec<(Spanned, Spanned)>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            self.expect(Tok::LParen)?;
            let q = self.state_id()?;
            self.expect(Tok::Comma)?;
            let a = self.ident("an action name")?;
            self.expect(Tok::RParen)?;
            out.push((q, a));
            match self.next() {
                Token { tok: Tok::Pipe, .. } => {}
                Token { tok: Tok::RBrace, .. } => return Ok(out),
                t => {
                    return Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("expected `|` or `}}`, found {}", Self::describe(&t.tok)),
                    ))
                }
            }
        }
    }

    fn block(&mut self, kind: Kind) -> PResult<(Block, Token)> {
        self.expect(Tok::LBrace)?;
        let mut b = Block::default();
        loop {
            if self.peek().tok == Tok::RBrace {
                return Ok((b, self.next()));
            }
            let arrow_next = matches!(self.peek_at(1), Tok::Arrow(_));
            let kw = match &self.peek().tok {
                Tok::Ident(s) if !arrow_next => s.clone(),
                _ => String::new(),
            };
            match kw.as_str() {
                "init" => {
                    let at = self.next();
                    let q = self.state_id()?;
                    if b.init.is_some() {
                        return Err(ParseError::new(at.line, at.col, "initial state declared twice"));
                    }
                    b.init = Some(q);
                }
                "state" => {
                    self.next();
                    let name = self.state_id()?;
                    let marked = if self.is_keyword("marked") {
                        self.next();
                        true
                    } else {
                        false
                    };
                    let acc = if self.is_keyword("acc") {
                        let at = self.next();
                        if kind == Kind::Automaton {
                            return Err(ParseError::new(at.line, at.col, "automaton states take no acceptance set"));
                        }
                        Some(self.acceptance()?)
                    } else {
                        None
                    };
                    b.states.push(StateDecl { name, marked, acc });
                }
                "priority" => {
                    let at = self.next();
                    if kind != Kind::Masp {
                        return Err(ParseError::new(at.line, at.col, "priorities are only allowed in a masp block"));
                    }
                    b.priorities.push(self.priority()?);
                }
                "bottom" => {
                    let at = self.ident("`bottom`")?;
                    if kind == Kind::Automaton {
                        return Err(at.err("an automaton cannot be bottom"));
                    }
                    b.bottom = Some(at);
                }
                _ => {
                    let from = self.state_id()?;
                    let arrow = self.next();
                    let Tok::Arrow(a) = arrow.tok else {
                        return Err(ParseError::new(
                            arrow.line,
                            arrow.col,
                            format!("expected a statement or `-action->`, found {}", Self::describe(&arrow.tok)),
                        ));
                    };
                    let action = Spanned { text: a, line: arrow.line, col: arrow.col + 1 };
                    let to = self.state_id()?;
                    b.edges.push((from, action, to));
                }
            }
        }
    }
}

fn check_reserved(s: &Spanned) -> PResult<()> {
    if s.text == UNKNOWN || s.text == "q?" {
        Err(s.err(format!("`{}` is a reserved state id", s.text)))
    } else if s.text.contains('?') {
        Err(s.err(format!("`?` is not allowed in state id `{}`", s.text)))
    } else {
        Ok(())
    }
}

struct Builder<'a> {
    skel: Skeleton,
    ids: HashMap<&'a str, StateId>,
}

impl<'a> Builder<'a> {
    fn lookup(&self, s: &Spanned) -> PResult<StateId> {
        self.ids
            .get(s.text.as_str())
            .copied()
            .ok_or_else(|| s.err(format!("unknown state `{}`", s.text)))
    }

    fn action(&self, s: &Spanned) -> PResult<crate::Action> {
        self.skel
            .alphabet
            .action(&s.text)
            .ok_or_else(|| s.err(format!("unknown action `{}`", s.text)))
    }
}

fn build(alphabet: Alphabet, kind: Kind, b: &Block, close: &Token) -> PResult<Value> {
    if let Some(at) = &b.bottom {
        if !b.states.is_empty() || !b.edges.is_empty() || b.init.is_some() || !b.priorities.is_empty() {
            return Err(at.err("a bottom block declares nothing else"));
        }
        let m = Mas::bottom(alphabet);
        return Ok(match kind {
            Kind::Masp => Value::Masp(Masp::from_mas(m)),
            _ => Value::Mas(m),
        });
    }
    let mut bl = Builder { skel: Skeleton::empty(alphabet), ids: HashMap::new() };
    let mut accs = Vec::new();
    for d in &b.states {
        check_reserved(&d.name)?;
        if bl.ids.contains_key(d.name.text.as_str()) {
            return Err(d.name.err(format!("state `{}` declared twice", d.name.text)));
        }
        let id = bl.skel.push_state(d.name.text.clone(), d.marked);
        bl.ids.insert(&d.name.text, id);
        if kind != Kind::Automaton {
            let Some(entries) = &d.acc else {
                return Err(d.name.err(format!("state `{}` has no acceptance set", d.name.text)));
            };
            let mut acc = AcceptanceSet::new();
            for entry in entries {
                let mut x = ActionSet::EMPTY;
                for a in entry {
                    x = x.with(bl.action(a)?);
                }
                acc.insert(x);
            }
            accs.push(acc);
        }
    }
    for (from, a, to) in &b.edges {
        let (s, t, act) = (bl.lookup(from)?, bl.lookup(to)?, bl.action(a)?);
        if bl.skel.succ(s, act).is_some() {
            return Err(from.err(format!(
                "nondeterminism: second transition from `{}` on `{}`",
                from.text, a.text
            )));
        }
        bl.skel.set_succ(s, act, Some(t));
    }
    let init = b
        .init
        .as_ref()
        .ok_or_else(|| ParseError::new(close.line, close.col, "no initial state declared"))?;
    bl.skel.initial = bl.lookup(init)?;
    let mut priorities = Vec::new();
    for p in &b.priorities {
        let mut pairs = BTreeSet::new();
        for (q, a) in p {
            pairs.insert((bl.lookup(q)?, bl.action(a)?));
        }
        priorities.push(PrioritySet::new(pairs));
    }
    Ok(match kind {
        Kind::Automaton => Value::Automaton(Automaton::from_skeleton(bl.skel)),
        Kind::Mas => Value::Mas(Mas::from_parts(bl.skel, accs)),
        Kind::Masp => {
            let base = Mas::from_parts(bl.skel, accs);
            let m = Masp::new(base, priorities)
                .map_err(|e| ParseError::new(close.line, close.col, e.to_string()))?;
            Value::Masp(m)
        }
    })
}

/// Parses one block, validating determinism, the alphabet, acceptance
/// sets and priority references.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let actions = p.header()?;
    let mut seen = BTreeSet::new();
    for a in &actions {
        if !seen.insert(a.text.as_str()) {
            return Err(a.err(format!("duplicate action `{}` in alphabet", a.text)));
        }
    }
    let alphabet = Alphabet::new(actions.iter().map(|a| a.text.clone()))
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    let head = p.ident("`automaton`, `mas` or `masp`")?;
    let kind = match head.text.as_str() {
        "automaton" => Kind::Automaton,
        "mas" => Kind::Mas,
        "masp" => Kind::Masp,
        other => return Err(head.err(format!("expected `automaton`, `mas` or `masp`, found `{other}`"))),
    };
    let name = p.ident("a block name")?;
    let (block, close) = p.block(kind)?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here("only one block is allowed per file"));
    }
    let value = build(alphabet, kind, &block, &close)?;
    Ok(Document { name: name.text, value })
}
