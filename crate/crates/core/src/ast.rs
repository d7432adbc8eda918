//! Parse tree of a single rule.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diag::Span;
use crate::vocab::{NameId, TermId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modality {
    Obligation,
    Prohibition,
    Necessity,
    Impossibility,
    Permission,
    Possibility,
}

impl Modality {
    pub const ALL: [Modality; 6] = [
        Modality::Obligation,
        Modality::Prohibition,
        Modality::Necessity,
        Modality::Impossibility,
        Modality::Permission,
        Modality::Possibility,
    ];
}

/// Quantifier keywords. `AtLeast`, `AtMost` and `Exactly` take a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantifierWord {
    Each,
    Some,
    AtLeastOne,
    AtLeast,
    AtMost,
    Exactly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Article {
    A,
    An,
    The,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Connective {
    And,
    Or,
}

impl Connective {
    pub fn as_str(self) -> &'static str {
        match self {
            Connective::And => "and",
            Connective::Or => "or",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subordinator {
    If,
    Then,
    Who,
    That,
    Which,
}

/// Semantic reading of a noun phrase's determiner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Determiner {
    Universal,
    AtLeastOne,
    AtLeastN(u32),
    AtMostN(u32),
    ExactlyN(u32),
    Definite,
}

/// A determiner as written: its reading plus the surface text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminerPhrase {
    pub kind: Determiner,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleAst {
    pub modality: Modality,
    pub modality_text: String,
    pub statement: Statement,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Statement {
    /// `consequence if condition`
    Conditional {
        condition: Box<Statement>,
        consequence: Box<Statement>,
    },
    Junction {
        op: Connective,
        operands: Vec<Statement>,
    },
    Simple {
        subject: NounPhrase,
        predicates: Coordination<Predicate>,
    },
}

/// One or more items joined by `and`/`or`, with `and` binding tighter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordination<T> {
    Single(T),
    Junction {
        op: Connective,
        operands: Vec<Coordination<T>>,
    },
}

impl<T> Coordination<T> {
    /// Items in source order.
    pub fn items(&self) -> Vec<&T> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a T>) {
        match self {
            Coordination::Single(t) => out.push(t),
            Coordination::Junction { operands, .. } => {
                for o in operands {
                    o.collect(out);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    /// Pre-order index within the rule, used to key verb bindings.
    pub id: usize,
    pub verb_words: Vec<String>,
    pub verb_span: Span,
    pub object: Option<Object>,
    pub span: Span,
}

impl Predicate {
    pub fn verb_text(&self) -> String {
        self.verb_words.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Noun(Box<NounPhrase>),
    Str { value: String, span: Span },
    Number { value: String, span: Span },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NounHead {
    Term { id: TermId, text: String, span: Span },
    Name { id: NameId, text: String, span: Span },
}

impl NounHead {
    pub fn span(&self) -> Span {
        match self {
            NounHead::Term { span, .. } | NounHead::Name { span, .. } => *span,
        }
    }

    pub fn text(&self) -> &str {
        match self {
            NounHead::Term { text, .. } | NounHead::Name { text, .. } => text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounPhrase {
    /// Pre-order index within the rule, used to key referents.
    pub id: usize,
    pub determiner: Option<DeterminerPhrase>,
    pub head: NounHead,
    pub instance: Option<(String, Span)>,
    pub qualifier: Option<Qualifier>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qualifier {
    pub pronoun: Subordinator,
    pub pronoun_text: String,
    pub predicates: Coordination<Predicate>,
}

impl RuleAst {
    /// Every noun phrase, in source order.
    pub fn noun_phrases(&self) -> Vec<&NounPhrase> {
        let mut out = Vec::new();
        walk_statement(&self.statement, &mut |n| out.push(n), &mut |_| {});
        out.sort_by_key(|n| n.span.start);
        out
    }

    /// Every predicate, in source order.
    pub fn predicates(&self) -> Vec<&Predicate> {
        let mut out = Vec::new();
        walk_statement(&self.statement, &mut |_| {}, &mut |p| out.push(p));
        out.sort_by_key(|p| p.span.start);
        out
    }
}

fn walk_statement<'a>(s: &'a Statement, np: &mut dyn FnMut(&'a NounPhrase), pred: &mut dyn FnMut(&'a Predicate)) {
    match s {
        Statement::Conditional { condition, consequence } => {
            walk_statement(consequence, np, pred);
            walk_statement(condition, np, pred);
        }
        Statement::Junction { operands, .. } => {
            for o in operands {
                walk_statement(o, np, pred);
            }
        }
        Statement::Simple { subject, predicates } => {
            walk_np(subject, np, pred);
            for p in predicates.items() {
                walk_pred(p, np, pred);
            }
        }
    }
}

fn walk_np<'a>(n: &'a NounPhrase, np: &mut dyn FnMut(&'a NounPhrase), pred: &mut dyn FnMut(&'a Predicate)) {
    np(n);
    if let Some(q) = &n.qualifier {
        for p in q.predicates.items() {
            walk_pred(p, np, pred);
        }
    }
}

fn walk_pred<'a>(p: &'a Predicate, np: &mut dyn FnMut(&'a NounPhrase), pred: &mut dyn FnMut(&'a Predicate)) {
    pred(p);
    if let Some(Object::Noun(n)) = &p.object {
        walk_np(n, np, pred);
    }
}

// Pretty-printing reproduces the rule text up to whitespace.

impl fmt::Display for RuleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.modality_text, self.statement)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Conditional { condition, consequence } => write!(f, "{consequence} if {condition}"),
            Statement::Junction { op, operands } => write_joined(f, operands, op.as_str()),
            Statement::Simple { subject, predicates } => write!(f, "{subject} {predicates}"),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Coordination<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordination::Single(t) => t.fmt(f),
            Coordination::Junction { op, operands } => write_joined(f, operands, op.as_str()),
        }
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            write!(f, " {sep} ")?;
        }
        item.fmt(f)?;
    }
    Ok(())
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.verb_text())?;
        match &self.object {
            None => Ok(()),
            Some(Object::Noun(n)) => write!(f, " {n}"),
            Some(Object::Str { value, .. }) => write!(f, " \"{value}\""),
            Some(Object::Number { value, .. }) => write!(f, " {value}"),
        }
    }
}

impl fmt::Display for NounPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.determiner {
            write!(f, "{} ", d.text)?;
        }
        f.write_str(self.head.text())?;
        if let Some((value, _)) = &self.instance {
            write!(f, " \"{value}\"")?;
        }
        if let Some(q) = &self.qualifier {
            write!(f, " {} {}", q.pronoun_text, q.predicates)?;
        }
        Ok(())
    }
}
