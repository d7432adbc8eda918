//! Recursive-descent parser for rule statements.
//!
//! ```text
//! rule          = modality , statement ;
//! statement     = junction , { "if" , junction } ;          (* right-assoc *)
//! junction      = simple , { ( "and" | "or" ) , simple } ;   (* and > or *)
//! simple        = nounPhrase , predicateList ;
//! predicateList = predicate , { ( "and" | "or" ) , predicate } ;
//! predicate     = verbWord , { verbWord } , [ object ] ;
//! object        = nounPhrase | string | number ;
//! nounPhrase    = name
//!               | [ determiner ] , term , [ string ] , [ qualifier ] ;
//! qualifier     = ( "who" | "that" | "which" ) , predicateList ;
//! determiner    = "each" | "a" | "an" | "the" | "some" | "at least one"
//!               | ( "at least" | "at most" | "exactly" ) , number ;
//! ```
//!
//! A coordinator attaches to the innermost predicate list when a verb word
//! follows it, and joins whole statements when a noun phrase follows it.
//! Words the lexer could not classify are accepted as verb words so the
//! binder can report them against the vocabulary's verbs.
//!
//! Every token test is recorded with its position. The set recorded at the
//! end of a truncated token stream is exactly what may come next, which is
//! how [`expected_next`] works.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::ast::*;
use crate::diag::{Code, Diagnostic, Span};
use crate::lexer::{KeywordRole, Token, TokenKind};
use crate::vocab::{NameId, TermId};

/// A class of token the parser can accept at some point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expectation {
    Modality,
    Quantifier,
    Determiner,
    Keyword(KeywordRole),
    Term,
    Name,
    VerbWord,
    Number,
    String,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Modality => f.write_str("a modality such as `It is obligatory that`"),
            Expectation::Quantifier => f.write_str("a quantifier"),
            Expectation::Determiner => f.write_str("an article"),
            Expectation::Keyword(k) => {
                let word = match k {
                    KeywordRole::Coordinator(c) => c.as_str(),
                    KeywordRole::Subordinator(Subordinator::If) => "if",
                    KeywordRole::Subordinator(Subordinator::Then) => "then",
                    KeywordRole::Subordinator(Subordinator::Who) => "who",
                    KeywordRole::Subordinator(Subordinator::That) => "that",
                    KeywordRole::Subordinator(Subordinator::Which) => "which",
                    _ => "keyword",
                };
                write!(f, "`{word}`")
            }
            Expectation::Term => f.write_str("a term"),
            Expectation::Name => f.write_str("a name"),
            Expectation::VerbWord => f.write_str("a verb"),
            Expectation::Number => f.write_str("a number"),
            Expectation::String => f.write_str("a quoted name"),
        }
    }
}

/// Who a predicate is about, as far as the parser knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubjectRef {
    Term(TermId),
    Name(NameId),
}

/// What the parser was in the middle of when it recorded expectations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProbeContext {
    /// Subject and verb words so far, when a verb word may come next. A
    /// run of verb words that already holds a complete verb phrase also
    /// yields the words after it, which may start the next predicate.
    pub verbs: Vec<(SubjectRef, Vec<String>)>,
    /// Subject and complete verb words, when an object may come next.
    pub object: Option<(SubjectRef, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Probe {
    pub expected: BTreeSet<Expectation>,
    pub context: ProbeContext,
}

pub fn parse_rule(tokens: &[Token]) -> Result<RuleAst, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens);
    p.rule().map_err(|d| vec![d])
}

/// Token classes acceptable right after the first `prefix_len` tokens.
pub fn expected_next(tokens: &[Token], prefix_len: usize) -> BTreeSet<Expectation> {
    probe(tokens, prefix_len).expected
}

pub fn probe(tokens: &[Token], prefix_len: usize) -> Probe {
    let prefix = &tokens[..prefix_len.min(tokens.len())];
    let mut p = Parser::new(prefix);
    let _ = p.rule();
    let end = prefix.len();
    Probe {
        expected: p.seen.remove(&end).unwrap_or_default(),
        context: p.contexts.remove(&end).unwrap_or_default(),
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    seen: BTreeMap<usize, BTreeSet<Expectation>>,
    contexts: BTreeMap<usize, ProbeContext>,
    /// Verb whose object noun phrase is being parsed.
    object_of: Option<(SubjectRef, Vec<String>)>,
    next_np: usize,
    next_pred: usize,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        Parser {
            tokens,
            pos: 0,
            seen: BTreeMap::new(),
            contexts: BTreeMap::new(),
            object_of: None,
            next_np: 0,
            next_pred: 0,
        }
    }

    fn peek_at(&self, offset: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + offset)
    }

    fn peek(&self) -> Option<&'t Token> {
        self.peek_at(0)
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn check_at(&mut self, offset: usize, exp: Expectation) -> bool {
        self.seen.entry(self.pos + offset).or_default().insert(exp);
        let Some(t) = self.peek_at(offset) else {
            return false;
        };
        match exp {
            Expectation::Modality => matches!(t.keyword(), Some(KeywordRole::Modality(_))),
            Expectation::Quantifier => t.kind == TokenKind::Quantifier,
            Expectation::Determiner => matches!(t.keyword(), Some(KeywordRole::Determiner(_))),
            Expectation::Keyword(k) => t.keyword() == Some(k),
            Expectation::Term => t.kind == TokenKind::TermRef,
            Expectation::Name => t.kind == TokenKind::NameRef,
            Expectation::VerbWord => matches!(t.kind, TokenKind::VerbRef | TokenKind::Unknown),
            Expectation::Number => t.kind == TokenKind::NumberLiteral,
            Expectation::String => t.kind == TokenKind::StringLiteral,
        }
    }

    fn check(&mut self, exp: Expectation) -> bool {
        self.check_at(0, exp)
    }

    fn check_keyword(&mut self, offset: usize, k: KeywordRole) -> bool {
        self.check_at(offset, Expectation::Keyword(k))
    }

    fn note_verb_context(&mut self, offset: usize, subject: SubjectRef, words: &[String]) {
        let ctx = self.contexts.entry(self.pos + offset).or_default();
        let entry = (subject, words.to_vec());
        if !ctx.verbs.contains(&entry) {
            ctx.verbs.push(entry);
        }
    }

    fn note_object_context(&mut self, subject: SubjectRef, words: &[String]) {
        let ctx = self.contexts.entry(self.pos).or_default();
        if ctx.object.is_none() {
            ctx.object = Some((subject, words.to_vec()));
        }
    }

    /// Records and tests every token class that can open a noun phrase.
    fn np_start_at(&mut self, offset: usize) -> bool {
        let q = self.check_at(offset, Expectation::Quantifier);
        let d = self.check_at(offset, Expectation::Determiner);
        let t = self.check_at(offset, Expectation::Term);
        let n = self.check_at(offset, Expectation::Name);
        q || d || t || n
    }

    fn here(&self) -> Span {
        match self.peek() {
            Some(t) => t.span,
            None => {
                let end = self.tokens.last().map_or(0, |t| t.span.end);
                Span::new(end, end)
            }
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("found `{}`", t.text()),
            None => "found end of rule".to_string(),
        }
    }

    fn expected_here(&self) -> String {
        let set = self.seen.get(&self.pos).cloned().unwrap_or_default();
        let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
        match items.len() {
            0 => String::from("nothing"),
            1 => items[0].clone(),
            _ => format!("one of {}", items.join(", ")),
        }
    }

    /// Error at the current token. An unknown word is reported as such, and
    /// the span runs over the following unclassified or verb words.
    fn fail(&self, code: Code) -> Diagnostic {
        let mut span = self.here();
        let tok = self.peek();
        let code = match tok {
            Some(t) if t.kind == TokenKind::Unknown && code != Code::MissingModality => Code::UnknownWord,
            _ => code,
        };
        if matches!(code, Code::UnknownWord | Code::ExpectedNounPhrase) {
            for t in &self.tokens[self.pos..] {
                if !matches!(t.kind, TokenKind::Unknown | TokenKind::VerbRef) {
                    break;
                }
                span = span.to(t.span);
            }
        }
        let message = match code {
            Code::UnknownWord => format!(
                "unknown word `{}`; expected {}",
                tok.map(|t| t.text()).unwrap_or_default(),
                self.expected_here()
            ),
            Code::MissingModality => format!(
                "a rule must open with a modality such as `It is obligatory that`, {}",
                self.found()
            ),
            _ => format!("expected {}, {}", self.expected_here(), self.found()),
        };
        Diagnostic::error(code, span, message)
    }

    fn rule(&mut self) -> PResult<RuleAst> {
        if !self.check(Expectation::Modality) {
            return Err(self.fail(Code::MissingModality));
        }
        let m = self.bump();
        let Some(KeywordRole::Modality(modality)) = m.keyword() else {
            unreachable!()
        };
        let statement = self.statement()?;
        if let Some(t) = self.peek() {
            let code = match t.keyword() {
                Some(KeywordRole::Coordinator(_)) => Code::DanglingCoordinator,
                _ if t.kind == TokenKind::Unknown => Code::UnknownWord,
                _ => Code::TrailingInput,
            };
            let mut d = self.fail(code);
            if code == Code::DanglingCoordinator {
                d.message = format!("`{}` must be followed by a verb or a new statement", t.text());
            } else if code == Code::TrailingInput {
                d.message = format!("unexpected `{}` after a complete rule", t.text());
                d.span = t.span.to(self.tokens.last().map_or(t.span, |l| l.span));
            }
            return Err(d);
        }
        let end = self.tokens.last().map_or(m.span, |t| t.span);
        Ok(RuleAst {
            modality,
            modality_text: m.text(),
            statement,
            span: m.span.to(end),
        })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let mut parts = vec![self.junction()?];
        while self.check_keyword(0, KeywordRole::Subordinator(Subordinator::If)) {
            self.bump();
            parts.push(self.junction()?);
        }
        let mut acc = parts.pop().expect("at least one junction");
        while let Some(consequence) = parts.pop() {
            acc = Statement::Conditional {
                condition: Box::new(acc),
                consequence: Box::new(consequence),
            };
        }
        Ok(acc)
    }

    fn junction(&mut self) -> PResult<Statement> {
        self.coordinated(
            |p| p.np_start_at(1),
            |p| p.simple(),
            |op, operands| Statement::Junction { op, operands },
        )
    }

    /// `item { or item }` over `item { and item }`.
    fn coordinated<T>(
        &mut self,
        mut follows: impl FnMut(&mut Self) -> bool,
        mut item: impl FnMut(&mut Self) -> PResult<T>,
        join: impl Fn(Connective, Vec<T>) -> T,
    ) -> PResult<T> {
        let mut ors = Vec::new();
        loop {
            let mut ands = vec![item(self)?];
            while self.check_keyword(0, KeywordRole::Coordinator(Connective::And)) && follows(self) {
                self.bump();
                ands.push(item(self)?);
            }
            ors.push(if ands.len() == 1 {
                ands.pop().unwrap()
            } else {
                join(Connective::And, ands)
            });
            if self.check_keyword(0, KeywordRole::Coordinator(Connective::Or)) && follows(self) {
                self.bump();
            } else {
                break;
            }
        }
        Ok(if ors.len() == 1 {
            ors.pop().unwrap()
        } else {
            join(Connective::Or, ors)
        })
    }

    fn simple(&mut self) -> PResult<Statement> {
        let subject = self.noun_phrase()?;
        let subj = subject_ref(&subject);
        let predicates = self.predicate_list(subj)?;
        Ok(Statement::Simple { subject, predicates })
    }

    fn predicate_list(&mut self, subject: SubjectRef) -> PResult<Coordination<Predicate>> {
        self.coordinated(
            |p| {
                p.note_verb_context(1, subject, &[]);
                p.check_at(1, Expectation::VerbWord)
            },
            |p| p.predicate(subject).map(Coordination::Single),
            |op, operands| Coordination::Junction { op, operands },
        )
    }

    fn predicate(&mut self, subject: SubjectRef) -> PResult<Predicate> {
        let id = self.next_pred;
        self.next_pred += 1;
        let mut words = Vec::new();
        let mut verb_span: Option<Span> = None;
        let mut boundaries: Vec<usize> = Vec::new();
        loop {
            self.note_verb_context(0, subject, &words);
            for &b in &boundaries {
                self.note_verb_context(0, subject, &words[b..]);
            }
            if !self.check(Expectation::VerbWord) {
                break;
            }
            // a complete verb phrase followed by another one: the second
            // starts the next predicate
            let prev_closes = self.pos > 0 && self.tokens[self.pos - 1].closes_verb();
            if !words.is_empty() && prev_closes && self.tokens[self.pos].opens_verb() {
                break;
            }
            let t = self.bump();
            words.push(t.text().to_lowercase());
            if t.closes_verb() {
                boundaries.push(words.len());
            }
            verb_span = Some(verb_span.map_or(t.span, |s| s.to(t.span)));
        }
        let Some(verb_span) = verb_span else {
            return Err(self.fail(Code::ExpectedVerb));
        };
        self.note_object_context(subject, &words);
        let object = if self.check(Expectation::String) {
            let t = self.bump();
            Some(Object::Str {
                value: t.string_value().to_string(),
                span: t.span,
            })
        } else if self.check(Expectation::Number) {
            let t = self.bump();
            Some(Object::Number {
                value: t.text(),
                span: t.span,
            })
        } else if self.np_start_at(0) {
            self.object_of = Some((subject, words.clone()));
            Some(Object::Noun(Box::new(self.noun_phrase()?)))
        } else {
            None
        };
        let span = match &object {
            None => verb_span,
            Some(Object::Noun(n)) => verb_span.to(n.span),
            Some(Object::Str { span, .. } | Object::Number { span, .. }) => verb_span.to(*span),
        };
        Ok(Predicate {
            id,
            verb_words: words,
            verb_span,
            object,
            span,
        })
    }

    fn noun_phrase(&mut self) -> PResult<NounPhrase> {
        let id = self.next_np;
        self.next_np += 1;
        let object_of = self.object_of.take();
        let determiner = self.determiner()?;
        if let Some((subject, words)) = object_of {
            self.note_object_context(subject, &words);
        }
        if determiner.is_none() && self.check(Expectation::Name) {
            let t = self.bump();
            return Ok(NounPhrase {
                id,
                determiner: None,
                head: NounHead::Name {
                    id: t.name().expect("name token is resolved"),
                    text: t.text(),
                    span: t.span,
                },
                instance: None,
                qualifier: None,
                span: t.span,
            });
        }
        if !self.check(Expectation::Term) {
            if determiner.is_none() {
                self.check(Expectation::Name);
            }
            return Err(self.fail(Code::ExpectedNounPhrase));
        }
        let t = self.bump();
        let head = NounHead::Term {
            id: t.term().expect("term token is resolved"),
            text: t.text(),
            span: t.span,
        };
        let mut span = determiner.as_ref().map_or(t.span, |d| d.span.to(t.span));
        let instance = if self.check(Expectation::String) {
            let s = self.bump();
            span = span.to(s.span);
            Some((s.string_value().to_string(), s.span))
        } else {
            None
        };
        let subject = SubjectRef::Term(t.term().expect("term token is resolved"));
        let mut pronoun = None;
        for sub in [Subordinator::Who, Subordinator::That, Subordinator::Which] {
            if self.check_keyword(0, KeywordRole::Subordinator(sub)) && pronoun.is_none() {
                pronoun = Some(sub);
            }
        }
        let qualifier = match pronoun {
            Some(sub) => {
                let pt = self.bump();
                let predicates = self.predicate_list(subject)?;
                if let Some(last) = predicates.items().last() {
                    span = span.to(last.span);
                }
                Some(Qualifier {
                    pronoun: sub,
                    pronoun_text: pt.text().to_lowercase(),
                    predicates,
                })
            }
            None => None,
        };
        Ok(NounPhrase {
            id,
            determiner,
            head,
            instance,
            qualifier,
            span,
        })
    }

    fn determiner(&mut self) -> PResult<Option<DeterminerPhrase>> {
        let q = self.check(Expectation::Quantifier);
        let d = self.check(Expectation::Determiner);
        if !q && !d {
            return Ok(None);
        }
        let t = self.bump();
        let kind = match t.keyword() {
            Some(KeywordRole::Quantifier(QuantifierWord::Each)) => Determiner::Universal,
            Some(KeywordRole::Quantifier(QuantifierWord::Some | QuantifierWord::AtLeastOne))
            | Some(KeywordRole::Determiner(Article::A | Article::An)) => Determiner::AtLeastOne,
            Some(KeywordRole::Determiner(Article::The)) => Determiner::Definite,
            Some(KeywordRole::Quantifier(counted)) => {
                if !self.check(Expectation::Number) {
                    return Err(self.fail(Code::ExpectedNumber));
                }
                let n = self.peek().map(|t| t.text()).unwrap_or_default();
                let count = match n.parse::<u32>() {
                    Ok(c) if c >= 1 => c,
                    _ => {
                        let mut d = self.fail(Code::ExpectedNumber);
                        d.message = format!("a count must be a whole number of at least 1, found `{n}`");
                        return Err(d);
                    }
                };
                let num = self.bump();
                let kind = match counted {
                    QuantifierWord::AtLeast => Determiner::AtLeastN(count),
                    QuantifierWord::AtMost => Determiner::AtMostN(count),
                    _ => Determiner::ExactlyN(count),
                };
                return Ok(Some(DeterminerPhrase {
                    kind,
                    text: format!("{} {}", t.text().to_lowercase(), num.text()),
                    span: t.span.to(num.span),
                }));
            }
            _ => unreachable!("determiner token without keyword role"),
        };
        Ok(Some(DeterminerPhrase {
            kind,
            text: t.text().to_lowercase(),
            span: t.span,
        }))
    }
}

fn subject_ref(np: &NounPhrase) -> SubjectRef {
    match &np.head {
        NounHead::Term { id, .. } => SubjectRef::Term(*id),
        NounHead::Name { id, .. } => SubjectRef::Name(*id),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::{tokenize, KeywordTable};
    use crate::vocab::{parse_vocabulary, Vocabulary};

    fn vocab() -> Vocabulary {
        parse_vocabulary(
            "Term: order\nTerm: customer\nTerm: account\nTerm: outstanding balance\n\
             Term: country\nName: France : country\n\
             Verb: order shipped\nVerb: customer adult\nVerb: customer places order\n\
             Verb: customer holds account\nVerb: account has outstanding balance\n\
             Verb: customer lives in country",
        )
        .unwrap()
    }

    fn parse(text: &str) -> Result<RuleAst, Vec<Diagnostic>> {
        parse_rule(&tokenize(text, &vocab(), &KeywordTable::english()))
    }

    fn err(text: &str) -> Code {
        parse(text).unwrap_err()[0].code
    }

    fn expect_after(text: &str) -> BTreeSet<Expectation> {
        let toks = tokenize(text, &vocab(), &KeywordTable::english());
        expected_next(&toks, toks.len())
    }

    #[test]
    fn simple_statement() {
        let ast = parse("It is obligatory that each customer places at least one order").unwrap();
        assert_eq!(ast.modality, Modality::Obligation);
        let Statement::Simple { subject, predicates } = &ast.statement else {
            panic!("expected a simple statement")
        };
        assert_eq!(subject.determiner.as_ref().unwrap().kind, Determiner::Universal);
        assert_eq!(subject.head.text(), "customer");
        let preds = predicates.items();
        assert_eq!(preds.len(), 1);
        assert_eq!(preds[0].verb_words, vec!["places"]);
        let Some(Object::Noun(obj)) = &preds[0].object else {
            panic!("expected an object noun phrase")
        };
        assert_eq!(obj.determiner.as_ref().unwrap().kind, Determiner::AtLeastOne);
        assert_eq!(obj.head.text(), "order");
    }

    #[test]
    fn instance_subject() {
        let ast = parse("It is obligatory that the customer \"John\" places at least one order").unwrap();
        let Statement::Simple { subject, .. } = &ast.statement else {
            panic!()
        };
        assert_eq!(subject.determiner.as_ref().unwrap().kind, Determiner::Definite);
        assert_eq!(subject.instance.as_ref().unwrap().0, "John");
    }

    #[test]
    fn compound_statement_structure() {
        let ast = parse(
            "It is necessary that each order is shipped if the customer who places the order \
             is adult and holds an account that has a outstanding balance that is greater than 0",
        )
        .unwrap();
        assert_eq!(ast.modality, Modality::Necessity);
        let Statement::Conditional { condition, consequence } = &ast.statement else {
            panic!("expected a conditional")
        };
        let Statement::Simple { subject, predicates } = consequence.as_ref() else {
            panic!()
        };
        assert_eq!(subject.head.text(), "order");
        assert_eq!(predicates.items()[0].verb_words, vec!["is", "shipped"]);

        let Statement::Simple { subject, predicates } = condition.as_ref() else {
            panic!()
        };
        assert_eq!(subject.head.text(), "customer");
        let q = subject.qualifier.as_ref().unwrap();
        assert_eq!(q.pronoun, Subordinator::Who);
        assert_eq!(q.predicates.items()[0].verb_words, vec!["places"]);
        let Coordination::Junction { op, operands } = predicates else {
            panic!("expected coordinated predicates")
        };
        assert_eq!(*op, Connective::And);
        assert_eq!(operands.len(), 2);
        let items = predicates.items();
        assert_eq!(items[0].verb_words, vec!["is", "adult"]);
        assert_eq!(items[1].verb_words, vec!["holds"]);
        let Some(Object::Noun(account)) = &items[1].object else {
            panic!()
        };
        let inner = account.qualifier.as_ref().unwrap().predicates.items();
        let Some(Object::Noun(balance)) = &inner[0].object else {
            panic!()
        };
        assert_eq!(balance.head.text(), "outstanding balance");
        let cmp = balance.qualifier.as_ref().unwrap().predicates.items();
        assert_eq!(cmp[0].verb_words, vec!["is", "greater", "than"]);
        assert!(matches!(&cmp[0].object, Some(Object::Number { value, .. }) if value == "0"));
    }

    #[test]
    fn error_codes() {
        assert_eq!(err("It is obligatory that customer"), Code::ExpectedVerb);
        assert_eq!(err("each customer places an order"), Code::MissingModality);
        assert_eq!(err(""), Code::MissingModality);
        assert_eq!(
            err("It is obligatory that each custmer places an order"),
            Code::UnknownWord
        );
        assert_eq!(
            err("It is obligatory that each customer places an order and"),
            Code::DanglingCoordinator
        );
        assert_eq!(
            err("It is obligatory that each customer places an order or 5"),
            Code::DanglingCoordinator
        );
        assert_eq!(
            err("It is obligatory that each customer places an order each"),
            Code::TrailingInput
        );
        assert_eq!(err("It is obligatory that places an order"), Code::ExpectedNounPhrase);
        assert_eq!(err("It is obligatory that each"), Code::ExpectedNounPhrase);
        assert_eq!(
            err("It is obligatory that at least customer places an order"),
            Code::ExpectedNumber
        );
        assert_eq!(
            err("It is obligatory that at least 0 customer places an order"),
            Code::ExpectedNumber
        );
        assert_eq!(err("It is obligatory that each customer who"), Code::ExpectedVerb);
    }

    #[test]
    fn unknown_word_in_verb_position_is_a_verb_word() {
        let ast = parse("It is obligatory that each customer plaecs an order").unwrap();
        assert_eq!(ast.predicates()[0].verb_words, vec!["plaecs"]);
    }

    #[test]
    fn unknown_word_span_covers_following_words() {
        let text = "It is obligatory that each customer places a gold custmer";
        let d = &parse(text).unwrap_err()[0];
        assert_eq!(d.code, Code::UnknownWord);
        assert_eq!(&text[d.span.range()], "gold custmer");

        let text = "It is obligatory that each customer places an holds account";
        let d = &parse(text).unwrap_err()[0];
        assert_eq!(d.code, Code::ExpectedNounPhrase);
        assert_eq!(&text[d.span.range()], "holds");
    }

    #[test]
    fn and_binds_tighter_than_or() {
        let ast =
            parse("It is obligatory that each customer is adult or places an order and holds an account").unwrap();
        let Statement::Simple { predicates, .. } = &ast.statement else {
            panic!()
        };
        let Coordination::Junction {
            op: Connective::Or,
            operands,
        } = predicates
        else {
            panic!("expected or at the top")
        };
        assert!(matches!(
            &operands[1],
            Coordination::Junction {
                op: Connective::And,
                ..
            }
        ));
    }

    #[test]
    fn statement_junction_and_right_assoc_if() {
        let ast = parse(
            "It is obligatory that each order is shipped and each customer is adult \
             if each customer holds an account if France",
        );
        // a name must be followed by a predicate
        assert_eq!(ast.unwrap_err()[0].code, Code::ExpectedVerb);
        let ast = parse(
            "It is obligatory that each order is shipped and each customer is adult \
             if each customer holds an account if France is adult",
        )
        .unwrap();
        let Statement::Conditional { condition, consequence } = &ast.statement else {
            panic!()
        };
        assert!(matches!(
            consequence.as_ref(),
            Statement::Junction {
                op: Connective::And,
                ..
            }
        ));
        assert!(matches!(condition.as_ref(), Statement::Conditional { .. }));
    }

    #[test]
    fn names_as_noun_phrases() {
        let ast = parse("It is obligatory that each customer lives in France").unwrap();
        let pred = ast.predicates()[0];
        assert_eq!(pred.verb_words, vec!["lives", "in"]);
        assert!(matches!(&pred.object, Some(Object::Noun(n)) if matches!(n.head, NounHead::Name { .. })));
    }

    #[test]
    fn pretty_print_round_trip() {
        for text in [
            "It is obligatory that each customer places at least one order",
            "It is obligatory that the customer \"John\" places at least one order",
            "It is necessary that each order is shipped if the customer who places the order is adult and holds an account that has a outstanding balance that is greater than 0",
            "It is permitted that exactly 3 customer places at most 2 order or each order is shipped",
        ] {
            let ast = parse(text).unwrap();
            assert_eq!(ast.to_string(), text);
        }
    }

    #[test]
    fn ids_are_preorder() {
        let ast = parse("It is obligatory that each customer who holds an account places the order").unwrap();
        let ids: Vec<usize> = ast.noun_phrases().iter().map(|n| n.id).collect();
        assert_eq!(ids, vec![0, 1, 2]);
        let ids: Vec<usize> = ast.predicates().iter().map(|p| p.id).collect();
        assert_eq!(ids, vec![0, 1]);
    }

    #[test]
    fn expectations_at_start_and_after_modality() {
        assert_eq!(expect_after(""), BTreeSet::from([Expectation::Modality]));
        assert_eq!(
            expect_after("It is obligatory that"),
            BTreeSet::from([
                Expectation::Quantifier,
                Expectation::Determiner,
                Expectation::Term,
                Expectation::Name
            ])
        );
    }

    #[test]
    fn expectations_after_subject() {
        let who = |s| Expectation::Keyword(KeywordRole::Subordinator(s));
        assert_eq!(
            expect_after("It is obligatory that each customer"),
            BTreeSet::from([
                Expectation::VerbWord,
                Expectation::String,
                who(Subordinator::Who),
                who(Subordinator::That),
                who(Subordinator::Which),
            ])
        );
    }

    #[test]
    fn expectations_after_dead_prefix_are_empty() {
        assert!(expect_after("each").is_empty());
        assert!(expect_after("It is obligatory that places").is_empty());
    }

    #[test]
    fn probe_context_tracks_subject_and_verb() {
        let v = vocab();
        let toks = tokenize(
            "It is obligatory that each customer places",
            &v,
            &KeywordTable::english(),
        );
        let p = probe(&toks, toks.len());
        let customer = SubjectRef::Term(v.term_id("customer").unwrap());
        assert_eq!(
            p.context.verbs,
            vec![(customer, vec!["places".to_string()]), (customer, vec![])]
        );
        assert_eq!(p.context.object, Some((customer, vec!["places".to_string()])));
    }
}
