//! Diagnostics shared by every stage of the pipeline.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

/// Byte range into a source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn shift(self, by: usize) -> Span {
        Span::new(self.start + by, self.end + by)
    }

    pub fn covers(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Which document a diagnostic points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Vocab,
    Text,
}

/// The published, closed set of diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    VocabMalformed,
    VocabArticle,
    VocabReserved,
    VocabDuplicateTerm,
    VocabDuplicateName,
    VocabDuplicateVerb,
    VocabUndeclaredTerm,
    VocabUnpairedPassive,
    UnknownWord,
    MissingModality,
    ExpectedVerb,
    ExpectedNounPhrase,
    ExpectedNumber,
    DanglingCoordinator,
    TrailingInput,
    NoSuchVerb,
    AmbiguousVerb,
    TypeMismatch,
    UnresolvedDefinite,
}

impl Code {
    pub const ALL: [Code; 19] = [
        Code::VocabMalformed,
        Code::VocabArticle,
        Code::VocabReserved,
        Code::VocabDuplicateTerm,
        Code::VocabDuplicateName,
        Code::VocabDuplicateVerb,
        Code::VocabUndeclaredTerm,
        Code::VocabUnpairedPassive,
        Code::UnknownWord,
        Code::MissingModality,
        Code::ExpectedVerb,
        Code::ExpectedNounPhrase,
        Code::ExpectedNumber,
        Code::DanglingCoordinator,
        Code::TrailingInput,
        Code::NoSuchVerb,
        Code::AmbiguousVerb,
        Code::TypeMismatch,
        Code::UnresolvedDefinite,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::VocabMalformed => "RCNL-VOCAB-MALFORMED",
            Code::VocabArticle => "RCNL-VOCAB-ARTICLE",
            Code::VocabReserved => "RCNL-VOCAB-RESERVED",
            Code::VocabDuplicateTerm => "RCNL-VOCAB-DUPLICATE-TERM",
            Code::VocabDuplicateName => "RCNL-VOCAB-DUPLICATE-NAME",
            Code::VocabDuplicateVerb => "RCNL-VOCAB-DUPLICATE-VERB",
            Code::VocabUndeclaredTerm => "RCNL-VOCAB-UNDECLARED-TERM",
            Code::VocabUnpairedPassive => "RCNL-VOCAB-UNPAIRED-PASSIVE",
            Code::UnknownWord => "RCNL-UNKNOWN-WORD",
            Code::MissingModality => "RCNL-MISSING-MODALITY",
            Code::ExpectedVerb => "RCNL-EXPECTED-VERB",
            Code::ExpectedNounPhrase => "RCNL-EXPECTED-NOUN-PHRASE",
            Code::ExpectedNumber => "RCNL-EXPECTED-NUMBER",
            Code::DanglingCoordinator => "RCNL-DANGLING-COORDINATOR",
            Code::TrailingInput => "RCNL-TRAILING-INPUT",
            Code::NoSuchVerb => "RCNL-NO-SUCH-VERB",
            Code::AmbiguousVerb => "RCNL-AMBIGUOUS-VERB",
            Code::TypeMismatch => "RCNL-TYPE-MISMATCH",
            Code::UnresolvedDefinite => "RCNL-UNRESOLVED-DEFINITE",
        }
    }

    pub fn parse(s: &str) -> Option<Code> {
        Code::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Code::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown code {s}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: Span,
    pub source: Source,
    pub related: Vec<Span>,
}

impl Diagnostic {
    pub fn error(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            span,
            source: Source::Text,
            related: Vec::new(),
        }
    }

    pub fn warning(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, span, message)
        }
    }

    pub fn in_vocab(mut self) -> Self {
        self.source = Source::Vocab;
        self
    }

    pub fn with_related(mut self, related: Vec<Span>) -> Self {
        self.related = related;
        self
    }

    pub fn shifted(mut self, by: usize) -> Self {
        self.span = self.span.shift(by);
        for r in &mut self.related {
            *r = r.shift(by);
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.severity, self.code, self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// 1-based line and column (in chars) of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let col = text[line_start..offset].chars().count() + 1;
    (line, col)
}
