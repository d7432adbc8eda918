//! Random vocabularies and grammar-driven random rules for property tests
//! and benchmarks.
//!
//! Rules are rendered so that they parse with the intended structure: a
//! predicate whose object carries a relative clause only ever closes a
//! coordination, since a following `and <verb>` would attach to the inner
//! clause.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::vocab::{parse_vocabulary, TermId, VerbForm, VerbId, Vocabulary};

const HEAD_WORDS: &[&str] = &[
    "customer",
    "order",
    "account",
    "invoice",
    "product",
    "supplier",
    "shipment",
    "payment",
    "contract",
    "warehouse",
    "employee",
    "region",
];
const MODIFIERS: &[&str] = &["gold", "premium", "overseas", "archived"];
/// Active verb with its passive counterpart.
const BINARY_VERBS: &[(&str, &str)] = &[
    ("places", "is placed by"),
    ("holds", "is held by"),
    ("owns", "is owned by"),
    ("pays", "is paid by"),
    ("approves", "is approved by"),
    ("signs", "is signed by"),
    ("stores", "is stored by"),
    ("references", "is referenced by"),
];
const UNARY_VERBS: &[&str] = &["active", "overdue", "valid", "suspended", "verified"];
const NAMES: &[&str] = &["John", "Acme", "France", "Globex", "Mary"];
const INSTANCES: &[&str] = &["A-17", "B 2", "John", "north"];

#[derive(Debug, Clone)]
pub struct VocabConfig {
    pub max_terms: usize,
    pub max_multi_word: usize,
    /// Declare a unary verb both bare and with a copula for some subject,
    /// so that `is X` matches two signatures.
    pub allow_ambiguity: bool,
}

impl Default for VocabConfig {
    fn default() -> Self {
        VocabConfig {
            max_terms: 10,
            max_multi_word: 4,
            allow_ambiguity: false,
        }
    }
}

/// Vocabulary source text for a seeded random vocabulary.
pub fn random_vocabulary_source(rng: &mut StdRng, cfg: &VocabConfig) -> String {
    let n_terms = rng.gen_range(2..=cfg.max_terms.max(2));
    let mut heads: Vec<&str> = HEAD_WORDS.to_vec();
    heads.shuffle(rng);
    let mut terms: Vec<String> = Vec::new();
    let mut multi = 0;
    for head in heads.into_iter().take(n_terms) {
        if multi < cfg.max_multi_word && rng.gen_bool(0.3) {
            let m = MODIFIERS.choose(rng).expect("non-empty");
            terms.push(format!("{m} {head}"));
            multi += 1;
            // the bare head is usually declared too, so longest match matters
            if rng.gen_bool(0.5) && terms.len() < n_terms {
                terms.push(head.to_string());
            }
        } else {
            terms.push(head.to_string());
        }
    }
    terms.truncate(n_terms);
    let mut out = String::new();
    for t in &terms {
        out.push_str(&format!("Term: {t}\n"));
    }
    let mut names: Vec<&str> = NAMES.to_vec();
    names.shuffle(rng);
    for name in names.into_iter().take(rng.gen_range(0..=2)) {
        match rng.gen_bool(0.8) {
            true => out.push_str(&format!("Name: {name}: {}\n", terms.choose(rng).expect("non-empty"))),
            false => out.push_str(&format!("Name: {name}\n")),
        }
    }
    let mut declared = std::collections::BTreeSet::new();
    for _ in 0..rng.gen_range(1..=terms.len() * 2) {
        let subject = terms.choose(rng).expect("non-empty");
        if rng.gen_bool(0.3) {
            let verb = UNARY_VERBS.choose(rng).expect("non-empty");
            if declared.insert((subject.clone(), verb.to_string(), String::new())) {
                out.push_str(&format!("Verb: {subject} {verb}\n"));
                if cfg.allow_ambiguity && rng.gen_bool(0.3) {
                    out.push_str(&format!("Verb: {subject} is {verb}\n"));
                }
            }
        } else {
            let (active, passive) = BINARY_VERBS.choose(rng).expect("non-empty");
            let object = terms.choose(rng).expect("non-empty");
            if declared.insert((subject.clone(), active.to_string(), object.clone())) {
                out.push_str(&format!("Verb: {subject} {active} {object}\n"));
                if rng.gen_bool(0.4) && declared.insert((object.clone(), passive.to_string(), subject.clone())) {
                    out.push_str(&format!("Verb(passive): {object} {passive} {subject}\n"));
                }
            }
        }
    }
    out
}

pub fn random_vocabulary(rng: &mut StdRng, cfg: &VocabConfig) -> (String, Vocabulary) {
    let src = random_vocabulary_source(rng, cfg);
    let v = parse_vocabulary(&src).unwrap_or_else(|d| panic!("generated vocabulary is invalid: {d:?}\n{src}"));
    (src, v)
}

/// Produces rule texts that parse against one vocabulary.
pub struct RuleGenerator<'v> {
    v: &'v Vocabulary,
    rng: StdRng,
    pub max_depth: usize,
}

/// A way of saying something about a subject of a given term.
#[derive(Debug, Clone, Copy)]
enum Usage {
    Verb(VerbId),
    Copula(VerbId),
}

impl<'v> RuleGenerator<'v> {
    pub fn new(v: &'v Vocabulary, seed: u64) -> Self {
        RuleGenerator {
            v,
            rng: StdRng::seed_from_u64(seed),
            max_depth: 2,
        }
    }

    pub fn rule(&mut self) -> String {
        let modalities = [
            "It is obligatory that",
            "It is prohibited that",
            "It is necessary that",
            "It is impossible that",
            "It is permitted that",
            "It is possible that",
        ];
        let m = modalities.choose(&mut self.rng).expect("non-empty");
        let depth = self.max_depth;
        format!("{m} {}", self.statement(depth))
    }

    fn statement(&mut self, depth: usize) -> String {
        if depth > 0 && self.rng.gen_bool(0.2) {
            let consequence = self.disjunction(depth - 1);
            let condition = self.statement(depth - 1);
            return format!("{consequence} if {condition}");
        }
        self.disjunction(depth)
    }

    fn disjunction(&mut self, depth: usize) -> String {
        let n = if depth > 0 && self.rng.gen_bool(0.15) { 2 } else { 1 };
        (0..n).map(|_| self.conjunction(depth)).collect::<Vec<_>>().join(" or ")
    }

    fn conjunction(&mut self, depth: usize) -> String {
        let n = if depth > 0 && self.rng.gen_bool(0.2) { 2 } else { 1 };
        (0..n).map(|_| self.simple(depth)).collect::<Vec<_>>().join(" and ")
    }

    fn simple(&mut self, depth: usize) -> String {
        let (subject_text, term) = self.subject(depth);
        let preds = self.predicate_list(term, depth, true);
        format!("{subject_text} {preds}")
    }

    /// A subject noun phrase and the term its predicates are about.
    fn subject(&mut self, depth: usize) -> (String, TermId) {
        let typed_names: Vec<_> = self
            .v
            .names()
            .filter_map(|(_, n)| n.of_term.map(|t| (n.label.clone(), t)))
            .collect();
        if !typed_names.is_empty() && self.rng.gen_bool(0.1) {
            let (label, t) = typed_names.choose(&mut self.rng).expect("non-empty").clone();
            return (label, t);
        }
        let term = self.any_term();
        (self.noun_phrase(term, depth, false), term)
    }

    fn any_term(&mut self) -> TermId {
        let terms: Vec<TermId> = self.v.terms().map(|(id, _)| id).collect();
        *terms.choose(&mut self.rng).expect("vocabulary has terms")
    }

    fn usages(&self, term: TermId) -> Vec<Usage> {
        let mut out = Vec::new();
        for (id, s) in self.v.user_verbs() {
            if s.subject != term {
                continue;
            }
            out.push(Usage::Verb(id));
            if s.arity() == 1 {
                out.push(Usage::Copula(id));
            }
        }
        out.extend(self.v.builtins().map(|(id, _)| Usage::Verb(id)));
        out
    }

    /// `last` marks a list that closes its enclosing coordination, so its
    /// final predicate may end in a relative clause.
    fn predicate_list(&mut self, term: TermId, depth: usize, last: bool) -> String {
        let n = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        let op = if self.rng.gen_bool(0.7) { "and" } else { "or" };
        (0..n)
            .map(|i| self.predicate(term, depth, last && i + 1 == n))
            .collect::<Vec<_>>()
            .join(&format!(" {op} "))
    }

    fn predicate(&mut self, term: TermId, depth: usize, may_qualify: bool) -> String {
        let usages = self.usages(term);
        let usage = *usages.choose(&mut self.rng).expect("builtins always apply");
        let (id, verb_text) = match usage {
            Usage::Verb(id) => (id, self.v.verb(id).text.clone()),
            Usage::Copula(id) => (id, format!("is {}", self.v.verb(id).text)),
        };
        let sig = self.v.verb(id);
        let Some(object) = sig.object else {
            return verb_text;
        };
        if sig.form == VerbForm::Builtin {
            let value = if self.rng.gen_bool(0.2) {
                format!("{}.{}", self.rng.gen_range(0..100), self.rng.gen_range(0..10))
            } else {
                self.rng.gen_range(0..1000).to_string()
            };
            return format!("{verb_text} {value}");
        }
        let untyped: Vec<String> = self
            .v
            .names()
            .filter(|(_, n)| n.of_term.is_none_or(|t| t == object))
            .map(|(_, n)| n.label.clone())
            .collect();
        // a quoted object has no term, so it only picks out a verb whose
        // text is unique for the subject
        let unique = self
            .v
            .user_verbs()
            .filter(|(_, s)| s.subject == term && s.text == sig.text && s.arity() == 2)
            .count()
            == 1;
        let object_text = match self.rng.gen_range(0..10) {
            0 if unique => format!("\"{}\"", INSTANCES.choose(&mut self.rng).expect("non-empty")),
            1 if unique && !untyped.is_empty() => untyped.choose(&mut self.rng).expect("non-empty").clone(),
            _ => self.noun_phrase(object, depth, !may_qualify),
        };
        format!("{verb_text} {object_text}")
    }

    fn noun_phrase(&mut self, term: TermId, depth: usize, no_qualifier: bool) -> String {
        let label = self.v.term(term).label.clone();
        let det = match self.rng.gen_range(0..10) {
            0 | 1 => "each".to_string(),
            2 => "some".to_string(),
            3 => if starts_with_vowel(&label) { "an" } else { "a" }.to_string(),
            4 => "at least one".to_string(),
            5 => format!("at least {}", self.rng.gen_range(1..5)),
            6 => format!("at most {}", self.rng.gen_range(1..5)),
            7 => format!("exactly {}", self.rng.gen_range(1..5)),
            8 => "the".to_string(),
            _ => String::new(),
        };
        let mut out = if det.is_empty() {
            label
        } else {
            format!("{det} {label}")
        };
        if det == "the" && self.rng.gen_bool(0.2) {
            out.push_str(&format!(" \"{}\"", INSTANCES.choose(&mut self.rng).expect("non-empty")));
            return out;
        }
        if !no_qualifier && depth > 0 && self.rng.gen_bool(0.3) {
            let pronoun = ["who", "that", "which"].choose(&mut self.rng).expect("non-empty");
            let preds = self.predicate_list(term, depth - 1, true);
            out.push_str(&format!(" {pronoun} {preds}"));
        }
        out
    }
}

fn starts_with_vowel(s: &str) -> bool {
    s.starts_with(['a', 'e', 'i', 'o', 'u'])
}

/// `count` (vocabulary source, rule) pairs, a fresh vocabulary every
/// `rules_per_vocab` rules.
pub fn corpus(seed: u64, count: usize, rules_per_vocab: usize, cfg: &VocabConfig) -> Vec<(String, String)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (src, v) = random_vocabulary(&mut rng, cfg);
        let mut g = RuleGenerator::new(&v, rng.gen());
        for _ in 0..rules_per_vocab.min(count - out.len()) {
            out.push((src.clone(), g.rule()));
        }
    }
    out
}
