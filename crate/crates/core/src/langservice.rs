//! Editor-facing operations and their JSON protocol.
//!
//! Every request carries the vocabulary text and the rule text, one rule
//! per line with `#` comment lines and blank lines ignored. No state is kept
//! between requests.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::binder::{bind, BoundRule};
use crate::diag::{Code, Diagnostic, Severity, Source, Span};
use crate::grammar::{parse_rule, probe, Expectation, SubjectRef};
use crate::lexer::{classify_for_highlighting, KeywordRole, KeywordTable, Lexer};
use crate::sbvr::{formulate, rule_set_to_xml, SemanticFormulation};
use crate::vocab::{load_vocabulary, normalize, TermId, VerbId, Vocabulary};

/// A rule line: its byte offset in the document and its text.
pub fn rule_lines(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            out.push((offset, line));
        }
        offset += raw.len();
    }
    out
}

/// The vocabulary plus everything needed to process rule text against it.
pub struct Session {
    pub vocab: Vocabulary,
    pub vocab_diagnostics: Vec<Diagnostic>,
    pub keywords: KeywordTable,
    lexer: Lexer,
}

impl Session {
    pub fn new(vocab_text: &str) -> Self {
        Session::from_vocabulary(load_vocabulary(vocab_text))
    }

    pub fn from_vocabulary((vocab, vocab_diagnostics): (Vocabulary, Vec<Diagnostic>)) -> Self {
        let keywords = KeywordTable::english();
        let lexer = Lexer::new(&vocab, &keywords);
        Session {
            vocab,
            vocab_diagnostics,
            keywords,
            lexer,
        }
    }

    /// Parses and binds one rule; spans are relative to `line`.
    pub fn check_rule(&self, line: &str) -> Result<BoundRule, Vec<Diagnostic>> {
        let tokens = self.lexer.tokenize(line);
        let ast =
            parse_rule(&tokens).map_err(|ds| ds.into_iter().map(|d| self.suggest(line, d)).collect::<Vec<_>>())?;
        bind(ast, &self.vocab)
    }

    /// Appends the closest vocabulary label to an unknown-word message.
    fn suggest(&self, line: &str, mut d: Diagnostic) -> Diagnostic {
        if d.code != Code::UnknownWord {
            return d;
        }
        let whole = normalize(&line[d.span.range()]).to_lowercase();
        let first = whole.split(' ').next().unwrap_or_default().to_string();
        if let Some(label) = nearest_label(&self.vocab, &[whole, first]) {
            d.message.push_str(&format!("; did you mean `{label}`?"));
        }
        d
    }

    pub fn diagnostics(&self, text: &str) -> Vec<Diagnostic> {
        let mut out = self.vocab_diagnostics.clone();
        for (offset, line) in rule_lines(text) {
            match self.check_rule(line) {
                Ok(b) => out.extend(b.warnings.into_iter().map(|d| d.shifted(offset))),
                Err(ds) => out.extend(ds.into_iter().map(|d| d.shifted(offset))),
            }
        }
        out.sort_by_key(|d| (d.source, d.span, d.code));
        out
    }

    pub fn compile(&self, text: &str) -> CompileOutput {
        let mut diags: Vec<Diagnostic> = self
            .vocab_diagnostics
            .iter()
            .filter(|d| d.is_error())
            .cloned()
            .collect();
        let mut sfs = Vec::new();
        for (offset, line) in rule_lines(text) {
            match self.check_rule(line) {
                Ok(b) => sfs.push(formulate(&b, &self.vocab)),
                Err(ds) => diags.extend(ds.into_iter().filter(|d| d.is_error()).map(|d| d.shifted(offset))),
            }
        }
        if diags.is_empty() {
            CompileOutput::Xml(rule_set_to_xml(&sfs))
        } else {
            diags.sort_by_key(|d| (d.source, d.span, d.code));
            CompileOutput::Diagnostics(diags)
        }
    }

    /// Formulations of every rule, or the diagnostics that stop them.
    pub fn formulate_all(&self, text: &str) -> Result<Vec<SemanticFormulation>, Vec<Diagnostic>> {
        match self.compile(text) {
            CompileOutput::Diagnostics(d) => Err(d),
            CompileOutput::Xml(_) => Ok(rule_lines(text)
                .into_iter()
                .map(|(_, l)| formulate(&self.check_rule(l).expect("compiled above"), &self.vocab))
                .collect()),
        }
    }

    pub fn highlight(&self, text: &str) -> Vec<(Span, crate::lexer::HighlightClass)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let tokens = self.lexer.tokenize(raw);
            out.extend(
                classify_for_highlighting(&tokens)
                    .into_iter()
                    .map(|(s, c)| (s.shift(offset), c)),
            );
            offset += raw.len();
        }
        out
    }

    pub fn complete(&self, text: &str, cursor: usize) -> Vec<CompletionItem> {
        let mut cursor = cursor.min(text.len());
        while !text.is_char_boundary(cursor) {
            cursor -= 1;
        }
        let line_start = text[..cursor].rfind('\n').map_or(0, |i| i + 1);
        let before = &text[line_start..cursor];
        if before.matches('"').count() % 2 == 1 {
            return Vec::new();
        }
        let mut items = BTreeSet::new();
        for cut in self.cuts(before) {
            let tokens = self.lexer.tokenize(&before[..cut]);
            let p = probe(&tokens, tokens.len());
            if p.expected.is_empty() {
                continue;
            }
            let mut partial = normalize(&before[cut..]).to_lowercase();
            if !partial.is_empty() && before.ends_with(char::is_whitespace) {
                partial.push(' ');
            }
            let replace = Span::new(line_start + cut, cursor);
            for item in self.realize(&p) {
                if item.item.label.to_lowercase().starts_with(&partial) {
                    items.insert(item.placed(replace));
                }
            }
        }
        if items.is_empty() && !before.trim().is_empty() {
            // Nothing continues the text as typed: offer what could replace
            // its unparseable tail.
            let tokens = self.lexer.tokenize(before);
            for n in (0..tokens.len()).rev() {
                let p = probe(&tokens, n);
                if p.expected.is_empty() {
                    continue;
                }
                let replace = Span::new(line_start + tokens[n].span.start, cursor);
                items.extend(self.realize(&p).into_iter().map(|i| i.placed(replace)));
                break;
            }
        }
        // keep only items after which the rule can still go on
        let mut live: HashMap<(usize, String), bool> = HashMap::new();
        let mut items: Vec<CompletionItem> = items
            .into_iter()
            .map(|r| r.item)
            .filter(|i| {
                *live.entry((i.replace_start, i.label.clone())).or_insert_with(|| {
                    let spliced = format!("{}{}", &text[line_start..i.replace_start], i.label);
                    let tokens = self.lexer.tokenize(&spliced);
                    !probe(&tokens, tokens.len()).expected.is_empty()
                })
            })
            .collect();
        items.dedup_by(|a, b| a.label == b.label && a.kind == b.kind && a.replace_start == b.replace_start);
        items
    }

    /// Offsets where the completed word may begin: the cursor itself after
    /// whitespace, and the start of each of the last few words.
    fn cuts(&self, before: &str) -> Vec<usize> {
        let mut out = Vec::new();
        if before.is_empty() || before.ends_with(char::is_whitespace) {
            out.push(before.len());
        }
        let mut end = before.trim_end().len();
        let longest = self.longest_label_words();
        for _ in 0..longest {
            let word_start = before[..end].rfind(char::is_whitespace).map_or(0, |i| i + 1);
            if word_start == end {
                break;
            }
            out.push(word_start);
            if word_start == 0 {
                break;
            }
            end = before[..word_start].trim_end().len();
        }
        out
    }

    fn longest_label_words(&self) -> usize {
        let words = |s: &str| s.split_whitespace().count();
        let keywords = self.keywords.entries().into_iter().map(|(s, _)| words(s));
        let terms = self.vocab.terms().map(|(_, t)| words(&t.label));
        let names = self.vocab.names().map(|(_, n)| words(&n.label));
        let verbs = self.vocab.all_verbs().map(|(_, v)| words(&v.text) + 1);
        keywords.chain(terms).chain(names).chain(verbs).max().unwrap_or(1)
    }

    /// Completion items for a probe, ranked.
    fn realize(&self, p: &crate::grammar::Probe) -> Vec<Ranked> {
        let mut out = Vec::new();
        let object_terms = p
            .context
            .object
            .as_ref()
            .map(|(s, words)| self.object_terms(*s, words))
            .unwrap_or_default();
        for e in &p.expected {
            match e {
                Expectation::Modality => {
                    for (_, m) in &self.keywords.modalities {
                        out.push(Ranked::new(
                            1,
                            self.keywords.modality_surface(*m),
                            CompletionKind::Keyword,
                            None,
                        ));
                    }
                }
                Expectation::Quantifier | Expectation::Determiner | Expectation::Keyword(_) => {
                    for (phrase, role) in self.keywords.entries() {
                        let (wanted, kind) = match (e, role) {
                            (Expectation::Quantifier, KeywordRole::Quantifier(_)) => (true, CompletionKind::Quantifier),
                            (Expectation::Determiner, KeywordRole::Determiner(_)) => (true, CompletionKind::Quantifier),
                            (Expectation::Keyword(r), _) => (*r == role, CompletionKind::Keyword),
                            _ => (false, CompletionKind::Keyword),
                        };
                        if wanted {
                            out.push(Ranked::new(1, phrase.to_string(), kind, None));
                        }
                    }
                }
                Expectation::Term => {
                    for (id, t) in self.vocab.terms() {
                        let rank = if object_terms.contains(&id) { 0 } else { 1 };
                        out.push(Ranked::new(
                            rank,
                            t.label.clone(),
                            CompletionKind::Term,
                            t.definition.clone(),
                        ));
                    }
                }
                Expectation::Name => {
                    for (_, n) in self.vocab.names() {
                        let rank = if n.of_term.is_some_and(|t| object_terms.contains(&t)) {
                            0
                        } else {
                            1
                        };
                        let detail = n.of_term.map(|t| self.vocab.term(t).label.clone());
                        out.push(Ranked::new(rank, n.label.clone(), CompletionKind::Name, detail));
                    }
                }
                Expectation::VerbWord => {
                    for (subject, typed) in &p.context.verbs {
                        out.extend(self.verb_items(*subject, typed));
                    }
                }
                Expectation::Number | Expectation::String => {}
            }
        }
        out
    }

    fn subject_term(&self, s: SubjectRef) -> Option<TermId> {
        match s {
            SubjectRef::Term(t) => Some(t),
            SubjectRef::Name(n) => self.vocab.name(n).of_term,
        }
    }

    /// Verbs usable after `subject`, as the words still to be typed.
    fn verb_items(&self, subject: SubjectRef, typed: &[String]) -> Vec<Ranked> {
        let verbs: Vec<VerbId> = match self.subject_term(subject) {
            Some(t) => self
                .vocab
                .verbs_for_subject(t)
                .into_iter()
                .chain(self.vocab.builtins().map(|(id, _)| id))
                .collect(),
            None => self.vocab.all_verbs().map(|(id, _)| id).collect(),
        };
        let typed = typed.join(" ").to_lowercase();
        let mut out = Vec::new();
        for id in verbs {
            let sig = self.vocab.verb(id);
            let mut surfaces = vec![sig.text.clone()];
            if sig.arity() == 1 {
                surfaces.push(format!("is {}", sig.text));
            }
            for surface in surfaces {
                let rest = if typed.is_empty() {
                    Some(surface.as_str())
                } else {
                    surface
                        .to_lowercase()
                        .strip_prefix(&format!("{typed} "))
                        .map(|r| &surface[surface.len() - r.len()..])
                };
                if let Some(rest) = rest {
                    let rank = if sig.is_builtin() { 1 } else { 0 };
                    out.push(Ranked::new(
                        rank,
                        rest.to_string(),
                        CompletionKind::Verb,
                        Some(self.vocab.describe(id)),
                    ));
                }
            }
        }
        out
    }

    /// Object terms of the verbs matching `words` after `subject`.
    fn object_terms(&self, subject: SubjectRef, words: &[String]) -> Vec<TermId> {
        let found = match self.subject_term(subject) {
            Some(t) => crate::binder::candidate_verbs(&self.vocab, t, words),
            None => Vec::new(),
        };
        found
            .into_iter()
            .filter_map(|id| self.vocab.verb(id).object)
            .filter(|t| *t != self.vocab.quantity())
            .collect()
    }
}

/// Label within edit distance 2 of any of `words`, closest first, then
/// alphabetical.
pub fn nearest_label(v: &Vocabulary, words: &[String]) -> Option<String> {
    let labels = v
        .terms()
        .map(|(_, t)| t.label.clone())
        .chain(v.names().map(|(_, n)| n.label.clone()));
    labels
        .flat_map(|l| {
            words
                .iter()
                .map(move |w| (strsim::levenshtein(&l.to_lowercase(), w), l.clone()))
        })
        .filter(|(d, _)| *d <= 2)
        .min()
        .map(|(_, l)| l)
}

pub fn diagnostics(vocab_text: &str, rule_text: &str) -> Vec<Diagnostic> {
    Session::new(vocab_text).diagnostics(rule_text)
}

pub fn complete(vocab_text: &str, rule_text: &str, cursor: usize) -> Vec<CompletionItem> {
    Session::new(vocab_text).complete(rule_text, cursor)
}

pub fn highlight(vocab_text: &str, rule_text: &str) -> Vec<(Span, crate::lexer::HighlightClass)> {
    Session::new(vocab_text).highlight(rule_text)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompileOutput {
    Xml(String),
    Diagnostics(Vec<Diagnostic>),
}

pub fn compile(vocab_text: &str, rule_text: &str) -> CompileOutput {
    Session::new(vocab_text).compile(rule_text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CompletionKind {
    Keyword,
    Quantifier,
    Term,
    Name,
    Verb,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompletionItem {
    pub label: String,
    pub kind: CompletionKind,
    pub detail: Option<String>,
    pub replace_start: usize,
    pub replace_end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Ranked {
    rank: u8,
    item: CompletionItem,
}

impl Ranked {
    fn new(rank: u8, label: String, kind: CompletionKind, detail: Option<String>) -> Self {
        Ranked {
            rank,
            item: CompletionItem {
                label,
                kind,
                detail,
                replace_start: 0,
                replace_end: 0,
            },
        }
    }

    fn placed(mut self, span: Span) -> Self {
        self.item.replace_start = span.start;
        self.item.replace_end = span.end;
        self
    }
}

// ---------------------------------------------------------------------------
// wire format

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WireDiagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub start: usize,
    pub end: usize,
    pub source: Source,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub related_spans: Vec<Span>,
}

impl From<&Diagnostic> for WireDiagnostic {
    fn from(d: &Diagnostic) -> Self {
        WireDiagnostic {
            severity: d.severity,
            code: d.code,
            message: d.message.clone(),
            start: d.span.start,
            end: d.span.end,
            source: d.source,
            related_spans: d.related.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct DocumentRequest {
    vocab: String,
    text: String,
}

#[derive(Debug, Deserialize)]
struct CompleteRequest {
    vocab: String,
    text: String,
    cursor: usize,
}

fn wire(ds: &[Diagnostic]) -> Value {
    json!(ds.iter().map(WireDiagnostic::from).collect::<Vec<_>>())
}

/// Serves one request of the JSON protocol: returns the HTTP status and
/// response body for `path` and a request `body`.
pub fn handle(path: &str, body: &str) -> (u16, Value) {
    fn parse<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, (u16, Value)> {
        serde_json::from_str(body).map_err(|e| (400, json!({ "error": format!("malformed request: {e}") })))
    }
    let result = match path {
        "/v1/diagnostics" => {
            parse::<DocumentRequest>(body).map(|r| json!({ "diagnostics": wire(&diagnostics(&r.vocab, &r.text)) }))
        }
        "/v1/complete" => {
            parse::<CompleteRequest>(body).map(|r| json!({ "items": complete(&r.vocab, &r.text, r.cursor) }))
        }
        "/v1/highlight" => parse::<DocumentRequest>(body).map(|r| {
            let spans: Vec<Value> = highlight(&r.vocab, &r.text)
                .into_iter()
                .map(|(s, c)| json!({ "start": s.start, "end": s.end, "class": c.as_str() }))
                .collect();
            json!({ "spans": spans })
        }),
        "/v1/compile" => parse::<DocumentRequest>(body).map(|r| match compile(&r.vocab, &r.text) {
            CompileOutput::Xml(xml) => json!({ "xml": xml }),
            CompileOutput::Diagnostics(d) => json!({ "diagnostics": wire(&d) }),
        }),
        _ => Err((404, json!({ "error": format!("no endpoint {path}") }))),
    };
    match result {
        Ok(v) => (200, v),
        Err(e) => e,
    }
}

/// Line-framed variant of [`handle`] for editor plugins: the request is
/// `{"path": …, "body": {…}}` and the reply `{"status": …, "body": {…}}`.
pub fn handle_line(line: &str) -> String {
    #[derive(Deserialize)]
    struct Framed {
        path: String,
        body: Value,
    }
    let (status, body) = match serde_json::from_str::<Framed>(line) {
        Ok(f) => handle(&f.path, &f.body.to_string()),
        Err(e) => (400, json!({ "error": format!("malformed request: {e}") })),
    };
    json!({ "status": status, "body": body }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const VOCAB: &str = "Term: order\nTerm: customer\nTerm: account\nTerm: outstanding balance\n\
        Verb: order shipped\nVerb: customer adult\nVerb: customer places order\n\
        Verb: customer holds account\nVerb: account has outstanding balance\n";
    const RULE_1: &str = "It is obligatory that the customer \"John\" places at least one order";

    fn labels(items: &[CompletionItem]) -> Vec<&str> {
        items.iter().map(|i| i.label.as_str()).collect()
    }

    #[test]
    fn valid_rule_has_no_diagnostics() {
        assert!(diagnostics(VOCAB, RULE_1).is_empty());
    }

    #[test]
    fn missing_verb_is_reported_over_the_verb() {
        let vocab = VOCAB.replace("Verb: customer places order\n", "");
        let d = diagnostics(&vocab, RULE_1);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, Code::NoSuchVerb);
        assert_eq!(&RULE_1[d[0].span.range()], "places");
    }

    #[test]
    fn misspelling_suggests_nearest_label() {
        let text = "It is obligatory that each custmer places an order";
        let d = diagnostics(VOCAB, text);
        assert_eq!(d[0].code, Code::UnknownWord);
        assert!(d[0].message.ends_with("did you mean `customer`?"), "{}", d[0].message);
    }

    #[test]
    fn diagnostics_are_offset_per_line() {
        let text = "# header\n\nIt is obligatory that each customer places an order\nIt is obligatory that each custmer places an order\n";
        let d = diagnostics(VOCAB, text);
        assert_eq!(d.len(), 1);
        assert_eq!(&text[d[0].span.range()], "custmer places");
    }

    #[test]
    fn completion_at_start_lists_modalities() {
        let items = complete(VOCAB, "", 0);
        assert_eq!(items.len(), 6);
        assert!(items.iter().all(|i| i.kind == CompletionKind::Keyword));
        assert!(labels(&items).contains(&"It is obligatory that"));
    }

    #[test]
    fn completion_offers_subject_verbs() {
        let text = "It is obligatory that each customer ";
        let items = complete(VOCAB, text, text.len());
        let places = items.iter().find(|i| i.label == "places").unwrap();
        assert_eq!(places.kind, CompletionKind::Verb);
        assert_eq!(places.detail.as_deref(), Some("customer places order"));
        assert!(labels(&items).contains(&"is adult"));
        assert!(labels(&items).contains(&"who"));
        assert!(!labels(&items).contains(&"shipped"));
    }

    #[test]
    fn completion_ranks_the_object_term_first() {
        let text = "It is obligatory that each customer places at least one ";
        let items = complete(VOCAB, text, text.len());
        assert_eq!(items[0].label, "order");
        assert!(labels(&items).contains(&"account"));
    }

    #[test]
    fn partial_words_filter_and_replace() {
        let text = "It is obligatory that each customer pl";
        let items = complete(VOCAB, text, text.len());
        assert_eq!(labels(&items), vec!["places"]);
        assert_eq!(items[0].replace_start, text.len() - 2);
        let text = "It is obl";
        let items = complete(VOCAB, text, text.len());
        assert_eq!(labels(&items), vec!["It is obligatory that"]);
        assert_eq!(items[0].replace_start, 0);
        let text = "It is obligatory that each account is greater ";
        let items = complete(VOCAB, text, text.len());
        assert!(labels(&items).contains(&"than or equal to"));
    }

    #[test]
    fn completion_after_a_complete_verb_in_a_relative_clause() {
        let text = "It is obligatory that each customer who is adult is equal";
        let items = complete(VOCAB, text, text.len());
        assert!(labels(&items).contains(&"equal to"), "{:?}", labels(&items));
        let text = "It is obligatory that each customer places ";
        assert!(!labels(&complete(VOCAB, text, text.len())).contains(&"holds"));
    }

    #[test]
    fn broken_prefix_offers_replacements() {
        let text = "It is obligatory that each zzz qqq ";
        let items = complete(VOCAB, text, text.len());
        assert!(labels(&items).contains(&"customer"));
        assert_eq!(items[0].replace_start, text.find("zzz").unwrap());
    }

    #[test]
    fn compile_wraps_rules_in_order() {
        match compile(VOCAB, "") {
            CompileOutput::Xml(x) => assert_eq!(x, "<ruleSet/>\n"),
            other => panic!("{other:?}"),
        }
        let text = format!("{RULE_1}\nIt is necessary that each order is shipped\n");
        let CompileOutput::Xml(xml) = compile(VOCAB, &text) else {
            panic!()
        };
        let sfs = crate::sbvr::parse_rule_set(&xml).unwrap();
        assert_eq!(sfs.len(), 2);
        assert!(xml.find("obligationFormulation").unwrap() < xml.find("necessityFormulation").unwrap());
    }

    #[test]
    fn highlight_classes() {
        let spans = highlight(VOCAB, "It is obligatory that each customer places \"x\"");
        let classes: Vec<&str> = spans.iter().map(|(_, c)| c.as_str()).collect();
        assert_eq!(classes, vec!["particle", "particle", "term", "verb", "literal"]);
    }

    #[test]
    fn protocol() {
        let (status, body) = handle("/v1/compile", &json!({ "vocab": VOCAB, "text": RULE_1 }).to_string());
        assert_eq!(status, 200);
        assert!(body["xml"].as_str().unwrap().contains("<obligationFormulation>"));
        let (status, body) = handle("/v1/diagnostics", "{not json");
        assert_eq!(status, 400);
        assert!(body["error"].is_string());
        let (status, body) = handle(
            "/v1/diagnostics",
            &json!({ "vocab": VOCAB, "text": "It is obligatory that each custmer places an order" }).to_string(),
        );
        assert_eq!(status, 200);
        assert_eq!(body["diagnostics"][0]["code"], "RCNL-UNKNOWN-WORD");
        assert_eq!(body["diagnostics"][0]["start"], 27);
        let (_, body) = handle(
            "/v1/complete",
            &json!({ "vocab": VOCAB, "text": "", "cursor": 0 }).to_string(),
        );
        assert_eq!(body["items"].as_array().unwrap().len(), 6);
        assert!(body["items"][0]["replaceStart"].is_number());
        assert_eq!(handle("/v1/nope", "{}").0, 404);
        let reply: Value = serde_json::from_str(&handle_line(
            &json!({ "path": "/v1/highlight", "body": { "vocab": VOCAB, "text": "It is" } }).to_string(),
        ))
        .unwrap();
        assert_eq!(reply["status"], 200);
    }

    #[test]
    fn identical_requests_give_identical_responses() {
        let body = json!({ "vocab": VOCAB, "text": "It is obligatory that each customer ", "cursor": 36 }).to_string();
        assert_eq!(
            handle("/v1/complete", &body).1.to_string(),
            handle("/v1/complete", &body).1.to_string()
        );
    }
}
