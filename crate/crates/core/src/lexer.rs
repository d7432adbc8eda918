//! Vocabulary-driven tokenizer.
//!
//! Tokens are found by leftmost-longest matching of word sequences against
//! the keyword table, the term and name labels, and the verb texts of the
//! vocabulary. Ties on length go to the first of: keyword or quantifier,
//! term, name, verb word, number, unknown. Verb texts are emitted one
//! `VerbRef` token per word so the parser can assemble them in context.

use std::collections::{HashMap, HashSet};

use crate::ast::{Article, Connective, Modality, QuantifierWord, Subordinator};
use crate::diag::Span;
use crate::vocab::{NameId, TermId, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeywordRole {
    Modality(Modality),
    Quantifier(QuantifierWord),
    Determiner(Article),
    Coordinator(Connective),
    Subordinator(Subordinator),
}

/// Grammar keywords for one locale. Phrases are lowercase.
#[derive(Debug, Clone)]
pub struct KeywordTable {
    pub locale: String,
    pub modalities: Vec<(String, Modality)>,
    pub quantifiers: Vec<(String, QuantifierWord)>,
    pub determiners: Vec<(String, Article)>,
    pub coordinators: Vec<(String, Connective)>,
    pub subordinators: Vec<(String, Subordinator)>,
}

impl Default for KeywordTable {
    fn default() -> Self {
        KeywordTable::english()
    }
}

impl KeywordTable {
    pub fn english() -> Self {
        fn own<T: Copy>(items: &[(&str, T)]) -> Vec<(String, T)> {
            items.iter().map(|(s, t)| (s.to_string(), *t)).collect()
        }
        KeywordTable {
            locale: "en".into(),
            modalities: own(&[
                ("it is obligatory that", Modality::Obligation),
                ("it is prohibited that", Modality::Prohibition),
                ("it is necessary that", Modality::Necessity),
                ("it is impossible that", Modality::Impossibility),
                ("it is permitted that", Modality::Permission),
                ("it is possible that", Modality::Possibility),
            ]),
            quantifiers: own(&[
                ("each", QuantifierWord::Each),
                ("some", QuantifierWord::Some),
                ("at least one", QuantifierWord::AtLeastOne),
                ("at least", QuantifierWord::AtLeast),
                ("at most", QuantifierWord::AtMost),
                ("exactly", QuantifierWord::Exactly),
            ]),
            determiners: own(&[("a", Article::A), ("an", Article::An), ("the", Article::The)]),
            coordinators: own(&[("and", Connective::And), ("or", Connective::Or)]),
            subordinators: own(&[
                ("if", Subordinator::If),
                ("then", Subordinator::Then),
                ("who", Subordinator::Who),
                ("that", Subordinator::That),
                ("which", Subordinator::Which),
            ]),
        }
    }

    /// Every phrase with its role, in table order.
    pub fn entries(&self) -> Vec<(&str, KeywordRole)> {
        let mut out: Vec<(&str, KeywordRole)> = Vec::new();
        out.extend(
            self.modalities
                .iter()
                .map(|(s, m)| (s.as_str(), KeywordRole::Modality(*m))),
        );
        out.extend(
            self.quantifiers
                .iter()
                .map(|(s, q)| (s.as_str(), KeywordRole::Quantifier(*q))),
        );
        out.extend(
            self.determiners
                .iter()
                .map(|(s, a)| (s.as_str(), KeywordRole::Determiner(*a))),
        );
        out.extend(
            self.coordinators
                .iter()
                .map(|(s, c)| (s.as_str(), KeywordRole::Coordinator(*c))),
        );
        out.extend(
            self.subordinators
                .iter()
                .map(|(s, c)| (s.as_str(), KeywordRole::Subordinator(*c))),
        );
        out
    }

    /// The phrase for a role, e.g. `"who"` for `Subordinator(Who)`.
    pub fn phrase(&self, role: KeywordRole) -> Option<&str> {
        self.entries().into_iter().find(|(_, r)| *r == role).map(|(s, _)| s)
    }

    /// Modality phrase as it opens a sentence.
    pub fn modality_surface(&self, m: Modality) -> String {
        let phrase = self.phrase(KeywordRole::Modality(m)).unwrap_or_default();
        let mut chars = phrase.chars();
        match chars.next() {
            Some(c) => c.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Keyword,
    Quantifier,
    TermRef,
    NameRef,
    VerbRef,
    NumberLiteral,
    StringLiteral,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolved {
    Term(TermId),
    Name(NameId),
    Keyword(KeywordRole),
    /// Position of a verb word within a matched verb phrase. A word that
    /// only occurs inside longer verb texts is neither first nor last.
    Verb {
        first: bool,
        last: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Exact source text, quotes included for string literals.
    pub lexeme: String,
    pub span: Span,
    pub resolved: Option<Resolved>,
}

impl Token {
    pub fn keyword(&self) -> Option<KeywordRole> {
        match self.resolved {
            Some(Resolved::Keyword(k)) => Some(k),
            _ => None,
        }
    }

    pub fn term(&self) -> Option<TermId> {
        match self.resolved {
            Some(Resolved::Term(t)) => Some(t),
            _ => None,
        }
    }

    pub fn name(&self) -> Option<NameId> {
        match self.resolved {
            Some(Resolved::Name(n)) => Some(n),
            _ => None,
        }
    }

    /// Whether this verb word opens a complete verb phrase.
    pub fn opens_verb(&self) -> bool {
        matches!(self.resolved, Some(Resolved::Verb { first: true, .. }))
    }

    /// Whether this verb word closes a complete verb phrase.
    pub fn closes_verb(&self) -> bool {
        matches!(self.resolved, Some(Resolved::Verb { last: true, .. }))
    }

    /// Contents of a string literal without its quotes.
    pub fn string_value(&self) -> &str {
        let inner = self.lexeme.strip_prefix('"').unwrap_or(&self.lexeme);
        inner.strip_suffix('"').unwrap_or(inner)
    }

    /// Lexeme with whitespace collapsed, for printing multi-word tokens.
    pub fn text(&self) -> String {
        crate::vocab::normalize(&self.lexeme)
    }
}

/// A whitespace-delimited piece of source: a word or a quoted string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Piece {
    pub span: Span,
    pub quoted: bool,
}

/// Splits source into words and quoted strings. An unterminated quote runs
/// to the end of the text.
pub(crate) fn pieces(source: &str) -> Vec<Piece> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = source[i..].chars().next().unwrap_or(' ');
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if c == '"' {
            let end = source[i + 1..].find('"').map_or(source.len(), |j| i + 1 + j + 1);
            out.push(Piece {
                span: Span::new(i, end),
                quoted: true,
            });
            i = end;
        } else {
            let start = i;
            while i < bytes.len() {
                let c = source[i..].chars().next().unwrap_or(' ');
                if c.is_whitespace() || c == '"' {
                    break;
                }
                i += c.len_utf8();
            }
            out.push(Piece {
                span: Span::new(start, i),
                quoted: false,
            });
        }
    }
    out
}

pub fn is_number(word: &str) -> bool {
    let mut parts = word.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Entry {
    Keyword(KeywordRole),
    Term(TermId),
    Name(NameId),
    Verb,
    VerbWord,
}

impl Entry {
    fn priority(self) -> u8 {
        match self {
            Entry::Keyword(_) => 0,
            Entry::Term(_) => 1,
            Entry::Name(_) => 2,
            Entry::Verb | Entry::VerbWord => 3,
        }
    }
}

/// Lookup tables built once per vocabulary.
#[derive(Debug, Clone)]
pub struct Lexer {
    // Keyed by lowercase words joined with single spaces (names: exact case).
    folded: HashMap<String, Entry>,
    names: HashMap<String, NameId>,
    verb_words: HashSet<String>,
    max_words: usize,
}

impl Lexer {
    pub fn new(v: &Vocabulary, k: &KeywordTable) -> Self {
        let mut folded: HashMap<String, Entry> = HashMap::new();
        let mut max_words = 1;
        let mut put = |key: String, e: Entry, folded: &mut HashMap<String, Entry>| {
            max_words = max_words.max(key.split(' ').count());
            match folded.get(&key) {
                Some(old) if old.priority() <= e.priority() => {}
                _ => {
                    folded.insert(key, e);
                }
            }
        };
        for (phrase, role) in k.entries() {
            put(phrase.to_lowercase(), Entry::Keyword(role), &mut folded);
        }
        for (id, t) in v.terms() {
            put(t.label.to_lowercase(), Entry::Term(id), &mut folded);
        }
        let mut verb_words = HashSet::new();
        for (_, s) in v.all_verbs() {
            let text = s.text.to_lowercase();
            verb_words.extend(text.split(' ').map(str::to_string));
            // unary verbs also read with a copula: "is shipped"
            if s.arity() == 1 && !s.is_builtin() {
                put(format!("is {text}"), Entry::Verb, &mut folded);
            }
            put(text, Entry::Verb, &mut folded);
        }
        let mut names = HashMap::new();
        for (id, n) in v.names() {
            max_words = max_words.max(n.label.split(' ').count());
            names.insert(n.label.clone(), id);
        }
        Lexer {
            folded,
            names,
            verb_words,
            max_words,
        }
    }

    pub fn tokenize(&self, source: &str) -> Vec<Token> {
        let pieces = pieces(source);
        let mut out = Vec::new();
        let mut i = 0;
        while i < pieces.len() {
            let p = pieces[i];
            if p.quoted {
                let text = &source[p.span.range()];
                let closed = text.len() >= 2 && text.ends_with('"');
                out.push(Token {
                    kind: if closed {
                        TokenKind::StringLiteral
                    } else {
                        TokenKind::Unknown
                    },
                    lexeme: text.to_string(),
                    span: p.span,
                    resolved: None,
                });
                i += 1;
                continue;
            }
            let run = pieces[i..]
                .iter()
                .take(self.max_words)
                .take_while(|p| !p.quoted)
                .count();
            let words: Vec<&str> = pieces[i..i + run].iter().map(|p| &source[p.span.range()]).collect();
            let (len, entry) = self.best_match(&words);
            let span = pieces[i].span.to(pieces[i + len - 1].span);
            match entry {
                Some(e @ (Entry::Verb | Entry::VerbWord)) => {
                    let phrase = e == Entry::Verb;
                    for (k, p) in pieces[i..i + len].iter().enumerate() {
                        out.push(Token {
                            kind: TokenKind::VerbRef,
                            lexeme: source[p.span.range()].to_string(),
                            span: p.span,
                            resolved: Some(Resolved::Verb {
                                first: phrase && k == 0,
                                last: phrase && k + 1 == len,
                            }),
                        });
                    }
                }
                Some(e) => {
                    let (kind, resolved) = match e {
                        Entry::Keyword(role @ KeywordRole::Quantifier(_)) => {
                            (TokenKind::Quantifier, Resolved::Keyword(role))
                        }
                        Entry::Keyword(role) => (TokenKind::Keyword, Resolved::Keyword(role)),
                        Entry::Term(t) => (TokenKind::TermRef, Resolved::Term(t)),
                        Entry::Name(n) => (TokenKind::NameRef, Resolved::Name(n)),
                        Entry::Verb | Entry::VerbWord => unreachable!(),
                    };
                    out.push(Token {
                        kind,
                        lexeme: source[span.range()].to_string(),
                        span,
                        resolved: Some(resolved),
                    });
                }
                None => {
                    let kind = if is_number(words[0]) {
                        TokenKind::NumberLiteral
                    } else {
                        TokenKind::Unknown
                    };
                    out.push(Token {
                        kind,
                        lexeme: words[0].to_string(),
                        span,
                        resolved: None,
                    });
                }
            }
            i += len;
        }
        out
    }

    /// Longest phrase at the start of `words`; `None` means a one-word
    /// number or unknown.
    fn best_match(&self, words: &[&str]) -> (usize, Option<Entry>) {
        for n in (1..=words.len()).rev() {
            let window = &words[..n];
            let folded = window.join(" ").to_lowercase();
            let mut best = self.folded.get(&folded).copied();
            if let Some(id) = self.names.get(&window.join(" ")) {
                if best.is_none_or(|b| b.priority() > Entry::Name(*id).priority()) {
                    best = Some(Entry::Name(*id));
                }
            }
            if best.is_none() && n == 1 && self.verb_words.contains(&folded) {
                best = Some(Entry::VerbWord);
            }
            if best.is_some() {
                return (n, best);
            }
        }
        (1, None)
    }
}

pub fn tokenize(source: &str, v: &Vocabulary, k: &KeywordTable) -> Vec<Token> {
    Lexer::new(v, k).tokenize(source)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HighlightClass {
    Term,
    Verb,
    Particle,
    Literal,
    Error,
}

impl HighlightClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HighlightClass::Term => "term",
            HighlightClass::Verb => "verb",
            HighlightClass::Particle => "particle",
            HighlightClass::Literal => "literal",
            HighlightClass::Error => "error",
        }
    }
}

pub fn classify_for_highlighting(tokens: &[Token]) -> Vec<(Span, HighlightClass)> {
    let mut out: Vec<(Span, HighlightClass)> = tokens
        .iter()
        .map(|t| {
            let class = match t.kind {
                TokenKind::TermRef | TokenKind::NameRef => HighlightClass::Term,
                TokenKind::VerbRef => HighlightClass::Verb,
                TokenKind::Keyword | TokenKind::Quantifier => HighlightClass::Particle,
                TokenKind::NumberLiteral | TokenKind::StringLiteral => HighlightClass::Literal,
                TokenKind::Unknown => HighlightClass::Error,
            };
            (t.span, class)
        })
        .collect();
    out.sort_by_key(|(s, _)| *s);
    out
}
