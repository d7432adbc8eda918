//! RuleCNL: a controlled natural language for business rules.
//!
//! The pipeline runs vocabulary → tokens → parse tree → bound rule →
//! semantic formulation → XML:
//!
//! ```
//! use rulecnl::{compile, CompileOutput};
//!
//! let vocab = "Term: customer\nTerm: order\nVerb: customer places order\n";
//! let rule = "It is obligatory that each customer places at least one order";
//! match compile(vocab, rule) {
//!     CompileOutput::Xml(xml) => assert!(xml.contains("<obligationFormulation>")),
//!     CompileOutput::Diagnostics(d) => panic!("{d:?}"),
//! }
//! ```

pub mod ast;
pub mod binder;
pub mod diag;
pub mod generate;
pub mod grammar;
pub mod langservice;
pub mod lexer;
pub mod sbvr;
pub mod vocab;

pub use ast::{Modality, RuleAst};
pub use binder::{bind, candidate_verbs, BoundRule, Referent, Variable};
pub use diag::{Code, Diagnostic, Severity, Span};
pub use grammar::{expected_next, parse_rule, Expectation};
pub use langservice::{
    compile, complete, diagnostics, highlight, CompileOutput, CompletionItem, CompletionKind, Session,
};
pub use lexer::{classify_for_highlighting, tokenize, HighlightClass, KeywordTable, Lexer, Token, TokenKind};
pub use sbvr::{formulate, parse_xml, to_xml, validate_sf, SemanticFormulation};
pub use vocab::{load_vocabulary, parse_vocabulary, Vocabulary};
