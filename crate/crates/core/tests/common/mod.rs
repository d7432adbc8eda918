//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use rulecnl::ast::{Coordination, NounHead, NounPhrase, Object, Predicate, Statement};
use rulecnl::lexer::{KeywordRole, Resolved};
use rulecnl::vocab::{TermId, VerbId};
use rulecnl::{KeywordTable, RuleAst, Span, Token, TokenKind, Vocabulary};

pub const ORDERS_VOCAB: &str = include_str!("../data/orders.voc");
pub const ORDER_RULES: &str = include_str!("../data/order_rules.txt");

pub const SIMPLE: &str = "It is obligatory that each customer places at least one order";
pub const COMPOUND: &str = "It is necessary that each order is shipped if the customer who places the order \
                            is adult and holds an account that has a outstanding balance that is greater than 0";
pub const RULE_1: &str = "It is obligatory that the customer \"John\" places at least one order";

pub fn order_rules() -> Vec<&'static str> {
    ORDER_RULES
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .collect()
}

// ---------------------------------------------------------------------------
// tokenizer oracle: enumerate every segmentation of each unquoted run and
// keep the one whose segment lengths are lexicographically greatest

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleToken {
    pub kind: TokenKind,
    pub span: Span,
    pub resolved: String,
}

impl OracleToken {
    pub fn of(t: &Token) -> Self {
        let resolved = match t.resolved {
            None => String::new(),
            Some(Resolved::Term(id)) => format!("term#{}", id.index()),
            Some(Resolved::Name(id)) => format!("name#{}", id.index()),
            Some(Resolved::Keyword(k)) => format!("{k:?}"),
            Some(Resolved::Verb { first, last }) => format!("verb{}{}", u8::from(first), u8::from(last)),
        };
        OracleToken {
            kind: t.kind,
            span: t.span,
            resolved,
        }
    }
}

#[derive(Debug, Clone)]
enum Class {
    Keyword(KeywordRole),
    Term(TermId),
    Name(usize),
    Verb,
}

fn rank(c: &Class) -> u8 {
    match c {
        Class::Keyword(_) => 0,
        Class::Term(_) => 1,
        Class::Name(_) => 2,
        Class::Verb => 3,
    }
}

pub struct TokenOracle {
    /// Phrases keyed by lowercase words; names are kept apart since they
    /// match with exact case.
    folded: HashMap<Vec<String>, Vec<Class>>,
    names: HashMap<Vec<String>, usize>,
    verb_words: Vec<String>,
}

impl TokenOracle {
    pub fn new(v: &Vocabulary) -> Self {
        let mut folded: HashMap<Vec<String>, Vec<Class>> = HashMap::new();
        let key = |s: &str| s.split_whitespace().map(|w| w.to_lowercase()).collect::<Vec<_>>();
        for (phrase, role) in KeywordTable::english().entries() {
            folded.entry(key(phrase)).or_default().push(Class::Keyword(role));
        }
        for (id, t) in v.terms() {
            folded.entry(key(&t.label)).or_default().push(Class::Term(id));
        }
        let mut verb_words = Vec::new();
        for (_, s) in v.all_verbs() {
            folded.entry(key(&s.text)).or_default().push(Class::Verb);
            if s.arity() == 1 && !s.is_builtin() {
                folded
                    .entry(key(&format!("is {}", s.text)))
                    .or_default()
                    .push(Class::Verb);
            }
            verb_words.extend(key(&s.text));
        }
        let mut names = HashMap::new();
        for (id, n) in v.names() {
            names.insert(n.label.split_whitespace().map(String::from).collect(), id.index());
        }
        TokenOracle {
            folded,
            names,
            verb_words,
        }
    }

    fn classify(&self, words: &[&str]) -> Option<Class> {
        let folded: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
        let exact: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let mut found: Vec<Class> = self.folded.get(&folded).cloned().unwrap_or_default();
        if let Some(n) = self.names.get(&exact) {
            found.push(Class::Name(*n));
        }
        found.into_iter().min_by_key(rank)
    }

    pub fn tokenize(&self, src: &str) -> Vec<OracleToken> {
        // pieces: (span, quoted)
        let mut pieces: Vec<(Span, bool)> = Vec::new();
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        let mut k = 0;
        while k < chars.len() {
            let (i, c) = chars[k];
            if c.is_whitespace() {
                k += 1;
            } else if c == '"' {
                let mut j = k + 1;
                while j < chars.len() && chars[j].1 != '"' {
                    j += 1;
                }
                let end = if j < chars.len() { chars[j].0 + 1 } else { src.len() };
                pieces.push((Span::new(i, end), true));
                k = j + 1;
            } else {
                let mut j = k;
                while j < chars.len() && !chars[j].1.is_whitespace() && chars[j].1 != '"' {
                    j += 1;
                }
                let end = if j < chars.len() { chars[j].0 } else { src.len() };
                pieces.push((Span::new(i, end), false));
                k = j;
            }
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < pieces.len() {
            let (span, quoted) = pieces[i];
            if quoted {
                let text = &src[span.range()];
                let closed = text.len() >= 2 && text.ends_with('"');
                out.push(OracleToken {
                    kind: if closed {
                        TokenKind::StringLiteral
                    } else {
                        TokenKind::Unknown
                    },
                    span,
                    resolved: String::new(),
                });
                i += 1;
                continue;
            }
            let run_end = (i..pieces.len()).find(|&j| pieces[j].1).unwrap_or(pieces.len());
            let words: Vec<&str> = pieces[i..run_end].iter().map(|(s, _)| &src[s.range()]).collect();
            let spans: Vec<Span> = pieces[i..run_end].iter().map(|(s, _)| *s).collect();
            out.extend(self.run(&words, &spans));
            i = run_end;
        }
        out
    }

    /// Best segmentation of one unquoted run by exhaustive search.
    fn run(&self, words: &[&str], spans: &[Span]) -> Vec<OracleToken> {
        let n = words.len();
        if n == 0 {
            return Vec::new();
        }
        // class of words[i..i + l], computed once per window
        let table: Vec<Vec<Option<Class>>> = (0..n)
            .map(|i| (1..=n - i).map(|l| self.classify(&words[i..i + l])).collect())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        // bit b set: a segment boundary after word b
        for mask in 0u32..(1 << (n - 1)) {
            let mut lens = Vec::new();
            let mut start = 0;
            for b in 0..n {
                if b == n - 1 || mask & (1 << b) != 0 {
                    lens.push(b + 1 - start);
                    start = b + 1;
                }
            }
            let mut pos = 0;
            let valid = lens.iter().all(|&l| {
                let ok = l == 1 || table[pos][l - 1].is_some();
                pos += l;
                ok
            });
            if valid && best.as_ref().is_none_or(|b| lens > *b) {
                best = Some(lens);
            }
        }
        let mut out = Vec::new();
        let mut pos = 0;
        for l in best.expect("single words always segment") {
            let seg = &words[pos..pos + l];
            let span = spans[pos].to(spans[pos + l - 1]);
            match table[pos][l - 1].clone() {
                Some(Class::Verb) => {
                    for k in 0..l {
                        out.push(OracleToken {
                            kind: TokenKind::VerbRef,
                            span: spans[pos + k],
                            resolved: format!("verb{}{}", u8::from(k == 0), u8::from(k + 1 == l)),
                        });
                    }
                }
                Some(c) => {
                    let (kind, resolved) = match c {
                        Class::Keyword(r @ KeywordRole::Quantifier(_)) => (TokenKind::Quantifier, format!("{r:?}")),
                        Class::Keyword(r) => (TokenKind::Keyword, format!("{r:?}")),
                        Class::Term(t) => (TokenKind::TermRef, format!("term#{}", t.index())),
                        Class::Name(n) => (TokenKind::NameRef, format!("name#{n}")),
                        Class::Verb => unreachable!(),
                    };
                    out.push(OracleToken { kind, span, resolved });
                }
                None => {
                    let w = seg[0];
                    let (kind, resolved) = if self.verb_words.iter().any(|v| *v == w.to_lowercase()) {
                        (TokenKind::VerbRef, "verb00".to_string())
                    } else if is_decimal(w) {
                        (TokenKind::NumberLiteral, String::new())
                    } else {
                        (TokenKind::Unknown, String::new())
                    };
                    out.push(OracleToken { kind, span, resolved });
                }
            }
            pos += l;
        }
        out
    }
}

fn is_decimal(w: &str) -> bool {
    let mut parts = w.splitn(2, '.');
    let int = parts.next().unwrap_or_default();
    let frac = parts.next();
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

// ---------------------------------------------------------------------------
// verb-candidate oracle: every signature a predicate could mean

/// The term a noun phrase ranges over; `None` for an untyped name.
pub fn np_term(v: &Vocabulary, np: &NounPhrase) -> Option<TermId> {
    match &np.head {
        NounHead::Term { id, .. } => Some(*id),
        NounHead::Name { id, .. } => v.name(*id).of_term,
    }
}

/// Every predicate with the noun phrase it is said of.
pub fn predicates_with_subjects(ast: &RuleAst) -> Vec<(&Predicate, &NounPhrase)> {
    fn stmt<'a>(s: &'a Statement, out: &mut Vec<(&'a Predicate, &'a NounPhrase)>) {
        match s {
            Statement::Conditional { condition, consequence } => {
                stmt(condition, out);
                stmt(consequence, out);
            }
            Statement::Junction { operands, .. } => operands.iter().for_each(|o| stmt(o, out)),
            Statement::Simple { subject, predicates } => {
                np(subject, out);
                preds(subject, predicates, out);
            }
        }
    }
    fn np<'a>(n: &'a NounPhrase, out: &mut Vec<(&'a Predicate, &'a NounPhrase)>) {
        if let Some(q) = &n.qualifier {
            preds(n, &q.predicates, out);
        }
    }
    fn preds<'a>(
        subject: &'a NounPhrase,
        c: &'a Coordination<Predicate>,
        out: &mut Vec<(&'a Predicate, &'a NounPhrase)>,
    ) {
        for p in c.items() {
            out.push((p, subject));
            if let Some(Object::Noun(o)) = &p.object {
                np(o, out);
            }
        }
    }
    let mut out = Vec::new();
    stmt(&ast.statement, &mut out);
    out.sort_by_key(|(p, _)| p.id);
    out
}

/// Signatures a predicate may denote, found by checking every signature.
pub fn oracle_candidates(v: &Vocabulary, p: &Predicate, subject: &NounPhrase) -> Vec<VerbId> {
    let said = p.verb_words.join(" ");
    let subject_term = np_term(v, subject);
    let mut out = Vec::new();
    for (id, s) in v.all_verbs() {
        let text = s.text.to_lowercase();
        let text_ok = said == text || (s.arity() == 1 && !s.is_builtin() && said == format!("is {text}"));
        let subject_ok = s.is_builtin() || subject_term.is_none() || subject_term == Some(s.subject);
        let object_ok = match &p.object {
            None => s.object.is_none(),
            Some(Object::Number { .. }) => s.is_builtin(),
            Some(Object::Str { .. }) => s.object.is_some() && !s.is_builtin(),
            Some(Object::Noun(o)) => match (s.object, np_term(v, o)) {
                (None, _) => false,
                (Some(_), _) if s.is_builtin() => true,
                (Some(_), None) => true,
                (Some(want), Some(got)) => want == got,
            },
        };
        if text_ok && subject_ok && object_ok {
            out.push(id);
        }
    }
    out
}
