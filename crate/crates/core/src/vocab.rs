//! Business vocabulary: domain terms, domain names, and verb signatures.
//!
//! A vocabulary is loaded from a line-oriented text file:
//!
//! ```text
//! # comment
//! Term: customer
//! Term: order
//! Name: France : country
//! Verb: customer places order
//! Verb(passive): order is placed by customer
//! Verb: order shipped
//! ```
//!
//! Verb lines are split by matching the longest declared term label at the
//! start (subject) and the longest at the end (object). A verb line with no
//! object term declares a unary verb. Six comparison verbs over the reserved
//! term `quantity` are always present.

use std::collections::HashMap;
use std::fmt;

use crate::diag::{has_errors, Code, Diagnostic, Span};

/// Reserved noun concept that builtin comparison verbs range over.
pub const QUANTITY: &str = "quantity";

/// The builtin comparison verbs, in table order.
pub const BUILTIN_VERBS: [&str; 6] = [
    "is equal to",
    "is not equal to",
    "is greater than",
    "is less than",
    "is greater than or equal to",
    "is less than or equal to",
];

const ARTICLES: [&str; 3] = ["a", "an", "the"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NameId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerbId(pub(crate) u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl NameId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl VerbId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainTerm {
    pub label: String,
    pub definition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainName {
    pub label: String,
    pub of_term: Option<TermId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerbForm {
    Active,
    Passive,
    Builtin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbSignature {
    pub subject: TermId,
    pub text: String,
    pub object: Option<TermId>,
    pub form: VerbForm,
    pub paired: Option<VerbId>,
}

impl VerbSignature {
    pub fn arity(&self) -> usize {
        if self.object.is_some() {
            2
        } else {
            1
        }
    }

    pub fn is_builtin(&self) -> bool {
        self.form == VerbForm::Builtin
    }
}

/// Where a declaration sits in the vocabulary source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decl {
    Term(TermId),
    Name(NameId),
    Verb(VerbId),
}

/// An immutable, validated vocabulary.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    // Index 0 is the reserved `quantity` term.
    terms: Vec<DomainTerm>,
    names: Vec<DomainName>,
    // Indices 0..6 are the builtins.
    verbs: Vec<VerbSignature>,
    term_index: HashMap<String, TermId>,
    name_index: HashMap<String, NameId>,
    decl_spans: HashMap<Decl, Span>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.names == other.names && self.verbs == other.verbs
    }
}

impl Eq for Vocabulary {}

impl Default for Vocabulary {
    fn default() -> Self {
        Vocabulary::builtins_only()
    }
}

pub(crate) fn normalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn term_key(text: &str) -> String {
    normalize(text).to_lowercase()
}

impl Vocabulary {
    fn builtins_only() -> Self {
        let quantity = TermId(0);
        let verbs = BUILTIN_VERBS
            .iter()
            .map(|text| VerbSignature {
                subject: quantity,
                text: (*text).to_string(),
                object: Some(quantity),
                form: VerbForm::Builtin,
                paired: None,
            })
            .collect();
        Vocabulary {
            terms: vec![DomainTerm {
                label: QUANTITY.to_string(),
                definition: None,
            }],
            names: Vec::new(),
            verbs,
            term_index: HashMap::new(),
            name_index: HashMap::new(),
            decl_spans: HashMap::new(),
        }
    }

    /// The reserved term builtin comparisons range over.
    pub fn quantity(&self) -> TermId {
        TermId(0)
    }

    pub fn term(&self, id: TermId) -> &DomainTerm {
        &self.terms[id.index()]
    }

    pub fn name(&self, id: NameId) -> &DomainName {
        &self.names[id.index()]
    }

    pub fn verb(&self, id: VerbId) -> &VerbSignature {
        &self.verbs[id.index()]
    }

    /// User-declared terms, in declaration order.
    pub fn terms(&self) -> impl Iterator<Item = (TermId, &DomainTerm)> {
        self.terms
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, t)| (TermId(i as u32), t))
    }

    pub fn names(&self) -> impl Iterator<Item = (NameId, &DomainName)> {
        self.names.iter().enumerate().map(|(i, n)| (NameId(i as u32), n))
    }

    /// User-declared verbs, in declaration order.
    pub fn user_verbs(&self) -> impl Iterator<Item = (VerbId, &VerbSignature)> {
        self.all_verbs().filter(|(_, v)| !v.is_builtin())
    }

    pub fn builtins(&self) -> impl Iterator<Item = (VerbId, &VerbSignature)> {
        self.all_verbs().filter(|(_, v)| v.is_builtin())
    }

    pub fn all_verbs(&self) -> impl Iterator<Item = (VerbId, &VerbSignature)> {
        self.verbs.iter().enumerate().map(|(i, v)| (VerbId(i as u32), v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn name_count(&self) -> usize {
        self.names.len()
    }

    pub fn user_verb_count(&self) -> usize {
        self.verbs.len() - BUILTIN_VERBS.len()
    }

    /// Case-insensitive exact lookup of a user term.
    pub fn lookup_term(&self, words: &str) -> Option<&DomainTerm> {
        self.term_id(words).map(|id| self.term(id))
    }

    pub fn term_id(&self, words: &str) -> Option<TermId> {
        self.term_index.get(&term_key(words)).copied()
    }

    /// Case-sensitive exact lookup of a domain name.
    pub fn name_id(&self, label: &str) -> Option<NameId> {
        self.name_index.get(&normalize(label)).copied()
    }

    pub fn decl_span(&self, decl: Decl) -> Option<Span> {
        self.decl_spans.get(&decl).copied()
    }

    /// Signatures whose subject is `subject`, sorted by their rendered text.
    /// Builtins are returned for the reserved `quantity` term only.
    pub fn verbs_for_subject(&self, subject: TermId) -> Vec<VerbId> {
        let mut out: Vec<VerbId> = self
            .all_verbs()
            .filter(|(_, v)| v.subject == subject)
            .map(|(id, _)| id)
            .collect();
        out.sort_by_cached_key(|id| (self.describe(*id), *id));
        out
    }

    /// "customer places order"
    pub fn describe(&self, id: VerbId) -> String {
        let v = self.verb(id);
        match v.object {
            Some(o) => format!("{} {} {}", self.term(v.subject).label, v.text, self.term(o).label),
            None => format!("{} {}", self.term(v.subject).label, v.text),
        }
    }

    /// Writes the vocabulary back in the file format.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for (_, t) in self.terms() {
            out.push_str(&format!("Term: {}\n", t.label));
        }
        for (_, n) in self.names() {
            match n.of_term {
                Some(t) => out.push_str(&format!("Name: {} : {}\n", n.label, self.term(t).label)),
                None => out.push_str(&format!("Name: {}\n", n.label)),
            }
        }
        for (id, v) in self.user_verbs() {
            let head = if v.form == VerbForm::Passive {
                "Verb(passive)"
            } else {
                "Verb"
            };
            out.push_str(&format!("{head}: {}\n", self.describe(id)));
        }
        out
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

/// Parses a vocabulary, failing on any error-severity diagnostic.
pub fn parse_vocabulary(source: &str) -> Result<Vocabulary, Vec<Diagnostic>> {
    let (vocab, diags) = load_vocabulary(source);
    if has_errors(&diags) {
        Err(diags)
    } else {
        Ok(vocab)
    }
}

/// Lenient load: keeps every valid declaration and reports the rest.
pub fn load_vocabulary(source: &str) -> (Vocabulary, Vec<Diagnostic>) {
    let mut loader = Loader {
        vocab: Vocabulary::builtins_only(),
        diags: Vec::new(),
    };
    let lines: Vec<Line<'_>> = lines(source).collect();

    for line in &lines {
        if let Some(rest) = line.body.strip_prefix("Term:") {
            loader.term(line.sub(rest));
        }
    }
    for line in &lines {
        let body = line.body;
        if body.starts_with("Term:") {
            continue;
        } else if let Some(rest) = body.strip_prefix("Name:") {
            loader.name(line.sub(rest));
        } else if let Some(rest) = body.strip_prefix("Verb(passive):") {
            loader.verb(line.sub(rest), VerbForm::Passive);
        } else if let Some(rest) = body.strip_prefix("Verb:") {
            loader.verb(line.sub(rest), VerbForm::Active);
        } else {
            loader.diags.push(
                Diagnostic::error(
                    Code::VocabMalformed,
                    line.span(),
                    "expected a declaration starting with `Term:`, `Name:`, `Verb:` or `Verb(passive):`",
                )
                .in_vocab(),
            );
        }
    }

    let (vocab, warnings) = link_passive_pairs(loader.vocab);
    let mut diags = loader.diags;
    diags.extend(warnings);
    diags.sort_by_key(|d| (d.span, d.code));
    (vocab, diags)
}

/// Links each passive signature to the active signature with swapped roles.
///
/// With several swapped-role actives, the one whose verb text shares the
/// longest word prefix (at least three letters) with a word of the passive
/// text wins; a tie leaves the passive unpaired.
pub fn link_passive_pairs(mut v: Vocabulary) -> (Vocabulary, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    for verb in &mut v.verbs {
        verb.paired = None;
    }
    let passives: Vec<VerbId> = v
        .all_verbs()
        .filter(|(_, s)| s.form == VerbForm::Passive)
        .map(|(id, _)| id)
        .collect();
    for p in passives {
        let ps = v.verb(p).clone();
        let candidates: Vec<VerbId> = v
            .all_verbs()
            .filter(|(_, a)| a.form == VerbForm::Active && Some(a.subject) == ps.object && a.object == Some(ps.subject))
            .map(|(id, _)| id)
            .collect();
        let chosen = match candidates.as_slice() {
            [] => None,
            [only] => Some(*only),
            many => pick_by_stem(&v, &ps.text, many),
        };
        match chosen {
            Some(a) => {
                v.verbs[p.index()].paired = Some(a);
                if v.verbs[a.index()].paired.is_none() {
                    v.verbs[a.index()].paired = Some(p);
                }
            }
            None => {
                let span = v.decl_span(Decl::Verb(p)).unwrap_or_default();
                let msg = if candidates.is_empty() {
                    format!("passive verb `{}` has no active counterpart", v.describe(p))
                } else {
                    format!(
                        "passive verb `{}` matches several active verbs: {}",
                        v.describe(p),
                        candidates
                            .iter()
                            .map(|c| format!("`{}`", v.describe(*c)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                };
                diags.push(Diagnostic::warning(Code::VocabUnpairedPassive, span, msg).in_vocab());
            }
        }
    }
    (v, diags)
}

fn pick_by_stem(v: &Vocabulary, passive_text: &str, candidates: &[VerbId]) -> Option<VerbId> {
    let score = |id: VerbId| {
        let active = v.verb(id).text.to_lowercase();
        let first = active.split(' ').next().unwrap_or("");
        passive_text
            .to_lowercase()
            .split(' ')
            .map(|w| w.chars().zip(first.chars()).take_while(|(a, b)| a == b).count())
            .max()
            .unwrap_or(0)
    };
    let mut scored: Vec<(usize, VerbId)> = candidates.iter().map(|c| (score(*c), *c)).collect();
    scored.sort_by_key(|s| std::cmp::Reverse(s.0));
    match scored.as_slice() {
        [(best, id), rest @ ..] if *best >= 3 && rest.first().is_none_or(|r| r.0 < *best) => Some(*id),
        _ => None,
    }
}

struct Line<'a> {
    body: &'a str,
    offset: usize,
}

impl<'a> Line<'a> {
    fn span(&self) -> Span {
        Span::new(self.offset, self.offset + self.body.len())
    }

    /// The part of the line after a `Keyword:` prefix, trimmed, with its span.
    fn sub(&self, rest: &'a str) -> Field<'a> {
        let start = self.offset + (self.body.len() - rest.len());
        let lead = rest.len() - rest.trim_start().len();
        let text = rest.trim();
        Field {
            text,
            span: Span::new(start + lead, start + lead + text.len()),
            line: self.span(),
        }
    }
}

struct Field<'a> {
    text: &'a str,
    span: Span,
    line: Span,
}

fn lines(source: &str) -> impl Iterator<Item = Line<'_>> {
    let mut offset = 0;
    source.split_inclusive('\n').filter_map(move |raw| {
        let start = offset;
        offset += raw.len();
        let content = raw.trim_end_matches(['\n', '\r']);
        let lead = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() || body.starts_with('#') {
            None
        } else {
            Some(Line {
                body,
                offset: start + lead,
            })
        }
    })
}

struct Loader {
    vocab: Vocabulary,
    diags: Vec<Diagnostic>,
}

impl Loader {
    fn err(&mut self, code: Code, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::error(code, span, msg).in_vocab());
    }

    fn term(&mut self, field: Field<'_>) {
        let label = normalize(field.text);
        if label.is_empty() {
            return self.err(Code::VocabMalformed, field.line, "term label is empty");
        }
        let first = label.split(' ').next().unwrap_or_default().to_lowercase();
        if label.contains(' ') && ARTICLES.contains(&first.as_str()) {
            return self.err(
                Code::VocabArticle,
                field.span,
                "term label must not begin with an article",
            );
        }
        if label.contains('"') {
            return self.err(Code::VocabMalformed, field.span, "term label must not contain quotes");
        }
        let key = label.to_lowercase();
        if key == QUANTITY {
            return self.err(
                Code::VocabReserved,
                field.span,
                "`quantity` is reserved for builtin comparison verbs",
            );
        }
        if self.vocab.term_index.contains_key(&key) {
            return self.err(
                Code::VocabDuplicateTerm,
                field.span,
                format!("term `{label}` is already declared"),
            );
        }
        let id = TermId(self.vocab.terms.len() as u32);
        self.vocab.terms.push(DomainTerm {
            label,
            definition: None,
        });
        self.vocab.term_index.insert(key, id);
        self.vocab.decl_spans.insert(Decl::Term(id), field.span);
    }

    fn name(&mut self, field: Field<'_>) {
        let (label_part, term_part) = match field.text.split_once(':') {
            Some((l, t)) => (l, Some(t)),
            None => (field.text, None),
        };
        let label = normalize(label_part);
        if label.is_empty() {
            return self.err(Code::VocabMalformed, field.line, "name label is empty");
        }
        if label.contains('"') {
            return self.err(Code::VocabMalformed, field.span, "name label must not contain quotes");
        }
        let of_term = match term_part {
            None => None,
            Some(t) => match self.vocab.term_id(t) {
                Some(id) => Some(id),
                None => {
                    return self.err(
                        Code::VocabUndeclaredTerm,
                        field.span,
                        format!("name `{label}` refers to undeclared term `{}`", normalize(t)),
                    )
                }
            },
        };
        if self.vocab.name_index.contains_key(&label) {
            return self.err(
                Code::VocabDuplicateName,
                field.span,
                format!("name `{label}` is already declared"),
            );
        }
        let id = NameId(self.vocab.names.len() as u32);
        self.vocab.name_index.insert(label.clone(), id);
        self.vocab.names.push(DomainName { label, of_term });
        self.vocab.decl_spans.insert(Decl::Name(id), field.span);
    }

    fn verb(&mut self, field: Field<'_>, form: VerbForm) {
        let words: Vec<&str> = field.text.split_whitespace().collect();
        let Some((subject, n_subj)) = self.longest_term(&words, |n| &words[..n]) else {
            let first = words.first().copied().unwrap_or("");
            return self.err(
                if words.len() < 2 {
                    Code::VocabMalformed
                } else {
                    Code::VocabUndeclaredTerm
                },
                field.span,
                format!("verb declaration must start with a declared term, found `{first}`"),
            );
        };
        let rest = &words[n_subj..];
        // The object may not swallow the whole remainder: verb text is non-empty.
        let object = if rest.len() >= 2 {
            self.longest_term(&rest[1..], |n| &rest[rest.len() - n..])
        } else {
            None
        };
        let (object, verb_words) = match object {
            Some((o, n)) => (Some(o), &rest[..rest.len() - n]),
            None => (None, rest),
        };
        if verb_words.is_empty() {
            return self.err(Code::VocabMalformed, field.span, "verb text is empty");
        }
        if form == VerbForm::Passive && object.is_none() {
            return self.err(
                Code::VocabUndeclaredTerm,
                field.span,
                "passive verb must end with a declared object term",
            );
        }
        let text = verb_words.join(" ");
        let key = text.to_lowercase();
        let dup = self
            .vocab
            .user_verbs()
            .any(|(_, v)| v.subject == subject && v.object == object && v.text.to_lowercase() == key);
        if dup {
            return self.err(
                Code::VocabDuplicateVerb,
                field.span,
                format!("verb `{}` is already declared", normalize(field.text)),
            );
        }
        let id = VerbId(self.vocab.verbs.len() as u32);
        self.vocab.verbs.push(VerbSignature {
            subject,
            text,
            object,
            form,
            paired: None,
        });
        self.vocab.decl_spans.insert(Decl::Verb(id), field.span);
    }

    /// Longest term label among the word windows `window(n)` for n = len..1.
    fn longest_term<'w>(
        &self,
        words: &'w [&'w str],
        window: impl Fn(usize) -> &'w [&'w str],
    ) -> Option<(TermId, usize)> {
        (1..=words.len())
            .rev()
            .find_map(|n| self.vocab.term_id(&window(n).join(" ")).map(|id| (id, n)))
    }
}
