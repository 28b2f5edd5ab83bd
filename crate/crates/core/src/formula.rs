//! Propositional formulas: AST, text grammar, classical evaluation and the
//! enumeration machinery behind tautology, equivalence and valuation search.
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! formula := iff
//! iff     := imp (("<->" | "=") imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "(" formula ")" | "T" | "F" | IDENT
//! ```
//!
//! `T` and `F` are the constants top and bottom, so they are reserved and
//! cannot be used as atom names.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest atom count accepted by the two-valued enumerators.
pub const MAX_ENUM_ATOMS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Meta-level identity of sentences. Classically it behaves like `Iff`.
    Identity(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn identity(l: Formula, r: Formula) -> Formula {
        Formula::Identity(Box::new(l), Box::new(r))
    }

    /// Atom names in first-occurrence order, without duplicates.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.iter().any(|a| a == name) {
                    out.push(name.clone());
                }
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r)
            | Formula::Identity(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r)
            | Formula::Identity(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn contains_identity(&self) -> bool {
        match self {
            Formula::Identity(..) => true,
            Formula::Atom(_) | Formula::Top | Formula::Bottom => false,
            Formula::Not(f) => f.contains_identity(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.contains_identity() || r.contains_identity(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) | Formula::Identity(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 6,
        }
    }
}

/// True when `name` is a legal atom identifier (and not one of the reserved constants).
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "T" && name != "F"
}

// ---------------------------------------------------------------------------
// Rendering

/// Minimal-parenthesis text that reparses to the same tree.
pub fn render(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => write!(out, "{name}"),
            Formula::Top => write!(out, "T"),
            Formula::Bottom => write!(out, "F"),
            Formula::Not(inner) => {
                if inner.precedence() < 5 {
                    write!(out, "!({inner})")
                } else {
                    write!(out, "!{inner}")
                }
            }
            Formula::And(l, r) => write_binary(out, self, l, r, "&"),
            Formula::Or(l, r) => write_binary(out, self, l, r, "|"),
            Formula::Implies(l, r) => write_binary(out, self, l, r, "->"),
            Formula::Iff(l, r) => write_binary(out, self, l, r, "<->"),
            Formula::Identity(l, r) => write_binary(out, self, l, r, "="),
        }
    }
}

fn write_binary(
    out: &mut fmt::Formatter<'_>,
    node: &Formula,
    l: &Formula,
    r: &Formula,
    op: &str,
) -> fmt::Result {
    let p = node.precedence();
    let right_assoc = matches!(node, Formula::Implies(..));
    let wrap_left = l.precedence() < p || (l.precedence() == p && right_assoc);
    let wrap_right = r.precedence() < p || (r.precedence() == p && !right_assoc);
    write_operand(out, l, wrap_left)?;
    write!(out, " {op} ")?;
    write_operand(out, r, wrap_right)
}

fn write_operand(out: &mut fmt::Formatter<'_>, f: &Formula, wrap: bool) -> fmt::Result {
    if wrap {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Not,
    And,
    Or,
    Arrow,
    BiArrow,
    Equals,
    LParen,
    RParen,
    Top,
    Bottom,
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::BiArrow => "`<->`".into(),
            Tok::Equals => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Top => "`T`".into(),
            Tok::Bottom => "`F`".into(),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '=' => Tok::Equals,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Tok::BiArrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "T" => Tok::Top,
                    "F" => Tok::Bottom,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    expected: vec!["a token".into()],
                    found: format!("character `{other}`"),
                })
            }
        };
        toks.push((start, tok));
        i += 1;
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const UNARY_START: [&str; 5] = ["`!`", "`(`", "`T`", "`F`", "identifier"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (position, tok) = &self.toks[self.pos];
        Error::Syntax {
            position: *position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        loop {
            match self.peek() {
                Tok::BiArrow => {
                    self.bump();
                    lhs = Formula::iff(lhs, self.imp()?);
                }
                Tok::Equals => {
                    self.bump();
                    lhs = Formula::identity(lhs, self.imp()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok(Formula::implies(lhs, self.imp()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`", "`=`"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            _ => Err(self.error(&UNARY_START)),
        }
    }
}

/// Parse formula text. Positions in syntax errors are character offsets.
pub fn parse(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = parser.formula()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["`&`", "`|`", "`->`", "`<->`", "`=`", "end of input"]));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Two-valued semantics

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TruthValue2 {
    False,
    True,
}

impl TruthValue2 {
    pub fn as_bool(self) -> bool {
        self == TruthValue2::True
    }
}

impl From<bool> for TruthValue2 {
    fn from(b: bool) -> Self {
        if b {
            TruthValue2::True
        } else {
            TruthValue2::False
        }
    }
}

impl std::ops::Not for TruthValue2 {
    type Output = TruthValue2;

    fn not(self) -> TruthValue2 {
        (!self.as_bool()).into()
    }
}

impl fmt::Display for TruthValue2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue2::True => "TRUE",
            TruthValue2::False => "FALSE",
        })
    }
}

/// Assignment of truth values to atom names.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation<V> {
    values: BTreeMap<String, V>,
}

pub type Valuation2 = Valuation<TruthValue2>;

impl<V: Copy> Valuation<V> {
    pub fn new() -> Self {
        Valuation {
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, atom: impl Into<String>, value: V) {
        self.values.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: V) -> Self {
        self.insert(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Option<V> {
        self.values.get(atom).copied()
    }

    pub fn lookup(&self, atom: &str) -> Result<V> {
        self.get(atom)
            .ok_or_else(|| Error::MissingAtom(atom.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, V)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<V: Copy, S: Into<String>> FromIterator<(S, V)> for Valuation<V> {
    fn from_iter<I: IntoIterator<Item = (S, V)>>(iter: I) -> Self {
        Valuation {
            values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

pub fn eval2(f: &Formula, v: &Valuation2) -> Result<TruthValue2> {
    let b = match f {
        Formula::Atom(name) => v.lookup(name)?.as_bool(),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(g) => !eval2(g, v)?.as_bool(),
        Formula::And(l, r) => eval2(l, v)?.as_bool() & eval2(r, v)?.as_bool(),
        Formula::Or(l, r) => eval2(l, v)?.as_bool() | eval2(r, v)?.as_bool(),
        // Philo: A -> B is !A | B
        Formula::Implies(l, r) => !eval2(l, v)?.as_bool() | eval2(r, v)?.as_bool(),
        Formula::Iff(l, r) | Formula::Identity(l, r) => eval2(l, v)? == eval2(r, v)?,
    };
    Ok(b.into())
}

// ---------------------------------------------------------------------------
// Enumeration

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Const(bool),
    Not,
    And,
    Or,
    Implies,
    Iff,
}

/// Formula flattened to postfix over a fixed atom index, for fast row evaluation.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    ops: Vec<Op>,
}

impl Compiled {
    pub(crate) fn new(f: &Formula, atoms: &[String]) -> Compiled {
        let mut ops = Vec::new();
        Self::emit(f, atoms, &mut ops);
        Compiled { ops }
    }

    fn emit(f: &Formula, atoms: &[String], ops: &mut Vec<Op>) {
        match f {
            Formula::Atom(name) => {
                let idx = atoms
                    .iter()
                    .position(|a| a == name)
                    .expect("atom index covers formula");
                ops.push(Op::Var(idx));
            }
            Formula::Top => ops.push(Op::Const(true)),
            Formula::Bottom => ops.push(Op::Const(false)),
            Formula::Not(g) => {
                Self::emit(g, atoms, ops);
                ops.push(Op::Not);
            }
            Formula::And(l, r) => Self::emit_binary(l, r, Op::And, atoms, ops),
            Formula::Or(l, r) => Self::emit_binary(l, r, Op::Or, atoms, ops),
            Formula::Implies(l, r) => Self::emit_binary(l, r, Op::Implies, atoms, ops),
            Formula::Iff(l, r) | Formula::Identity(l, r) => {
                Self::emit_binary(l, r, Op::Iff, atoms, ops)
            }
        }
    }

    fn emit_binary(l: &Formula, r: &Formula, op: Op, atoms: &[String], ops: &mut Vec<Op>) {
        Self::emit(l, atoms, ops);
        Self::emit(r, atoms, ops);
        ops.push(op);
    }

    /// Evaluate with atom `i` read from `value(i)`.
    pub(crate) fn eval(&self, stack: &mut Vec<bool>, value: impl Fn(usize) -> bool) -> bool {
        stack.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => value(i),
                Op::Const(b) => b,
                Op::Not => !stack.pop().unwrap(),
                bin => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    match bin {
                        Op::And => l & r,
                        Op::Or => l | r,
                        Op::Implies => !l | r,
                        _ => l == r,
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().unwrap()
    }
}

/// Union of atoms of several formulas, first-occurrence order.
pub fn combined_atoms<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<String> {
    let mut out = Vec::new();
    for f in formulas {
        f.collect_atoms(&mut out);
    }
    out
}

fn check_bound(count: usize, limit: usize) -> Result<()> {
    if count > limit {
        return Err(Error::TooManyAtoms { count, limit });
    }
    Ok(())
}

/// Value of atom `i` (of `n`) in row `row`: the first atom is the most
/// significant bit, so rows run lexicographically with False before True.
#[inline]
pub(crate) fn row_bit(row: u64, i: usize, n: usize) -> bool {
    (row >> (n - 1 - i)) & 1 == 1
}

pub fn is_tautology(f: &Formula) -> Result<bool> {
    let atoms = f.atoms();
    check_bound(atoms.len(), MAX_ENUM_ATOMS)?;
    let n = atoms.len();
    let prog = Compiled::new(f, &atoms);
    let mut stack = Vec::new();
    Ok((0..1u64 << n).all(|row| prog.eval(&mut stack, |i| row_bit(row, i, n))))
}

pub fn equivalent2(f: &Formula, g: &Formula) -> Result<bool> {
    let atoms = combined_atoms([f, g]);
    check_bound(atoms.len(), MAX_ENUM_ATOMS)?;
    let n = atoms.len();
    let (pf, pg) = (Compiled::new(f, &atoms), Compiled::new(g, &atoms));
    let mut stack = Vec::new();
    Ok((0..1u64 << n).all(|row| {
        pf.eval(&mut stack, |i| row_bit(row, i, n)) == pg.eval(&mut stack, |i| row_bit(row, i, n))
    }))
}

/// Full truth table of `f` over `atoms`, rows in lexicographic order.
pub fn row_values(f: &Formula, atoms: &[String]) -> Result<Vec<(Vec<TruthValue2>, TruthValue2)>> {
    if let Some(missing) = f.atoms().into_iter().find(|a| !atoms.contains(a)) {
        return Err(Error::MissingAtom(missing));
    }
    check_bound(atoms.len(), MAX_ENUM_ATOMS)?;
    let n = atoms.len();
    let prog = Compiled::new(f, atoms);
    let mut stack = Vec::new();
    Ok((0..1u64 << n)
        .map(|row| {
            let vals = (0..n).map(|i| row_bit(row, i, n).into()).collect();
            (vals, prog.eval(&mut stack, |i| row_bit(row, i, n)).into())
        })
        .collect())
}

/// Every valuation over the combined atoms making all `constraints` and
/// `require` true. Atoms are ordered by first occurrence (constraints first,
/// then `require`); rows come out in lexicographic order, False before True.
pub fn find_valuations(constraints: &[Formula], require: &Formula) -> Result<Vec<Valuation2>> {
    let atoms = combined_atoms(constraints.iter().chain(std::iter::once(require)));
    check_bound(atoms.len(), MAX_ENUM_ATOMS)?;
    let n = atoms.len();
    let progs: Vec<Compiled> = constraints
        .iter()
        .chain(std::iter::once(require))
        .map(|f| Compiled::new(f, &atoms))
        .collect();
    let mut stack = Vec::new();
    let mut found = Vec::new();
    for row in 0..1u64 << n {
        if progs
            .iter()
            .all(|p| p.eval(&mut stack, |i| row_bit(row, i, n)))
        {
            found.push(
                atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), TruthValue2::from(row_bit(row, i, n))))
                    .collect(),
            );
        }
    }
    Ok(found)
}
