//! Resolves parsed clauses against the vocabulary.
//!
//! Every predicate binds to exactly one verb signature, chosen by its
//! subject term, verb words and object. Unary verbs also match with a
//! leading copula (`is adult` binds `customer adult`). Builtin comparisons
//! accept any subject term, which is read as a quantity.
//!
//! Noun phrases get logical variables `v1`, `v2`, … in source order. A
//! definite phrase without a relative clause (`the order`) reuses the
//! variable of the nearest earlier phrase over the same term.

use crate::ast::{Coordination, Determiner, NounHead, NounPhrase, Object, Predicate, RuleAst, Statement};
use crate::diag::{Code, Diagnostic};
use crate::vocab::{TermId, VerbForm, VerbId, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub id: String,
    pub ranges_over: TermId,
    /// Introduced by a definite description such as `the customer who …`.
    pub definite: bool,
    /// Noun phrase that introduces it.
    pub np: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Referent {
    /// Index into `BoundRule::variables`.
    Variable {
        var: usize,
        defining: bool,
    },
    Individual {
        label: String,
        term: Option<TermId>,
    },
    Quantity {
        value: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundPredicate {
    /// Signature the predicate matched.
    pub signature: VerbId,
    /// Fact type used for the formulation: the active counterpart of a
    /// paired passive, else the signature itself.
    pub fact_type: VerbId,
    /// Subject and object trade places in the fact type.
    pub swapped: bool,
    /// Referent of a string or number object.
    pub literal_object: Option<Referent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRule {
    pub ast: RuleAst,
    /// Indexed by predicate id.
    pub bindings: Vec<BoundPredicate>,
    pub variables: Vec<Variable>,
    /// Indexed by noun phrase id.
    pub referents: Vec<Referent>,
    pub warnings: Vec<Diagnostic>,
}

impl BoundRule {
    pub fn binding(&self, p: &Predicate) -> &BoundPredicate {
        &self.bindings[p.id]
    }

    pub fn referent(&self, np: &NounPhrase) -> &Referent {
        &self.referents[np.id]
    }
}

/// Signatures whose verb text matches `verb_words` for `subject`: declared
/// active and passive forms, unary verbs behind a copula, and builtins.
pub fn candidate_verbs(v: &Vocabulary, subject: TermId, verb_words: &[String]) -> Vec<VerbId> {
    candidates(v, Some(subject), verb_words)
}

/// `None` stands for an untyped name, which matches any subject.
fn candidates(v: &Vocabulary, subject: Option<TermId>, verb_words: &[String]) -> Vec<VerbId> {
    let text = verb_words.join(" ").to_lowercase();
    v.all_verbs()
        .filter(|(_, s)| {
            let sig_text = s.text.to_lowercase();
            if s.is_builtin() {
                return sig_text == text;
            }
            if subject.is_some_and(|t| t != s.subject) {
                return false;
            }
            sig_text == text || (s.arity() == 1 && text.strip_prefix("is ") == Some(sig_text.as_str()))
        })
        .map(|(id, _)| id)
        .collect()
}

pub fn bind(ast: RuleAst, v: &Vocabulary) -> Result<BoundRule, Vec<Diagnostic>> {
    let mut b = Binder {
        v,
        variables: Vec::new(),
        referents: Vec::new(),
        bindings: Vec::new(),
        errors: Vec::new(),
        warnings: Vec::new(),
    };
    b.assign_referents(&ast);
    b.bind_statement(&ast.statement);
    if !b.errors.is_empty() {
        let mut all = b.errors;
        all.extend(b.warnings);
        all.sort_by_key(|d| (d.span, d.code));
        return Err(all);
    }
    let bindings = b
        .bindings
        .into_iter()
        .map(|p| p.expect("every predicate visited"))
        .collect();
    Ok(BoundRule {
        ast,
        bindings,
        variables: b.variables,
        referents: b
            .referents
            .into_iter()
            .map(|r| r.expect("every noun phrase visited"))
            .collect(),
        warnings: b.warnings,
    })
}

struct Binder<'v> {
    v: &'v Vocabulary,
    variables: Vec<Variable>,
    referents: Vec<Option<Referent>>,
    bindings: Vec<Option<BoundPredicate>>,
    errors: Vec<Diagnostic>,
    warnings: Vec<Diagnostic>,
}

/// The term a noun phrase ranges over; `None` for an untyped name.
fn np_term(v: &Vocabulary, np: &NounPhrase) -> Option<TermId> {
    match &np.head {
        NounHead::Term { id, .. } => Some(*id),
        NounHead::Name { id, .. } => v.name(*id).of_term,
    }
}

impl<'v> Binder<'v> {
    fn assign_referents(&mut self, ast: &RuleAst) {
        let nps = ast.noun_phrases();
        let count = nps.iter().map(|n| n.id + 1).max().unwrap_or(0);
        self.referents = vec![None; count];
        let mut prior: Vec<(TermId, usize)> = Vec::new();
        for np in nps {
            let referent = match (&np.head, &np.instance) {
                (NounHead::Name { id, .. }, _) => {
                    let name = self.v.name(*id);
                    Referent::Individual {
                        label: name.label.clone(),
                        term: name.of_term,
                    }
                }
                (NounHead::Term { id, .. }, Some((label, _))) => Referent::Individual {
                    label: label.clone(),
                    term: Some(*id),
                },
                (NounHead::Term { id, text, span }, None) => {
                    let definite = np.determiner.as_ref().is_some_and(|d| d.kind == Determiner::Definite);
                    let antecedent = prior.iter().rev().find(|(t, _)| t == id).map(|(_, var)| *var);
                    match antecedent {
                        Some(var) if definite && np.qualifier.is_none() => Referent::Variable { var, defining: false },
                        _ => {
                            if definite && np.qualifier.is_none() {
                                self.warnings.push(Diagnostic::warning(
                                    Code::UnresolvedDefinite,
                                    np.span.to(*span),
                                    format!("`the {text}` does not refer to an earlier {text}; read as `some {text}`"),
                                ));
                            }
                            let var = self.variables.len();
                            self.variables.push(Variable {
                                id: format!("v{}", var + 1),
                                ranges_over: *id,
                                definite,
                                np: np.id,
                            });
                            prior.push((*id, var));
                            Referent::Variable { var, defining: true }
                        }
                    }
                }
            };
            self.referents[np.id] = Some(referent);
        }
    }

    fn bind_statement(&mut self, s: &Statement) {
        match s {
            Statement::Conditional { condition, consequence } => {
                self.bind_statement(consequence);
                self.bind_statement(condition);
            }
            Statement::Junction { operands, .. } => {
                for o in operands {
                    self.bind_statement(o);
                }
            }
            Statement::Simple { subject, predicates } => {
                self.bind_np(subject);
                self.bind_predicates(subject, predicates);
            }
        }
    }

    fn bind_np(&mut self, np: &NounPhrase) {
        if let Some(q) = &np.qualifier {
            self.bind_predicates(np, &q.predicates);
        }
    }

    fn bind_predicates(&mut self, subject: &NounPhrase, preds: &Coordination<Predicate>) {
        for p in preds.items() {
            self.bind_predicate(subject, p);
            if let Some(Object::Noun(obj)) = &p.object {
                self.bind_np(obj);
            }
        }
    }

    fn bind_predicate(&mut self, subject: &NounPhrase, p: &Predicate) {
        let v = self.v;
        let subj_term = np_term(v, subject);
        let found = candidates(v, subj_term, &p.verb_words);
        let fits = |id: &VerbId| {
            let s = v.verb(*id);
            match &p.object {
                None => s.arity() == 1,
                Some(Object::Number { .. }) => s.object == Some(v.quantity()),
                Some(Object::Str { .. }) => s.arity() == 2 && !s.is_builtin(),
                Some(Object::Noun(obj)) => {
                    s.arity() == 2 && (s.is_builtin() || np_term(v, obj).is_none_or(|t| s.object == Some(t)))
                }
            }
        };
        let matching: Vec<VerbId> = found.iter().copied().filter(fits).collect();
        let verb = p.verb_text();
        let subject_label = subj_term.map_or_else(|| subject.head.text().to_string(), |t| v.term(t).label.clone());
        let object_label = match &p.object {
            None => None,
            Some(Object::Noun(obj)) => {
                Some(np_term(v, obj).map_or_else(|| obj.head.text().to_string(), |t| v.term(t).label.clone()))
            }
            Some(Object::Str { value, .. }) => Some(format!("\"{value}\"")),
            Some(Object::Number { value, .. }) => Some(value.clone()),
        };
        let mut related = vec![subject.head.span()];
        match &p.object {
            Some(Object::Noun(obj)) => related.push(obj.head.span()),
            Some(Object::Str { span, .. } | Object::Number { span, .. }) => related.push(*span),
            None => {}
        }
        let describe = |ids: &[VerbId]| {
            ids.iter()
                .map(|id| format!("`{}`", v.describe(*id)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match matching.as_slice() {
            [] if found.is_empty() => {
                let relation = match &object_label {
                    Some(o) => format!("no verb `{verb}` relates {subject_label} to {o}"),
                    None => format!("no verb `{verb}` applies to {subject_label}"),
                };
                let hint = subj_term.map(|t| self.suggest(t, &verb)).unwrap_or_default();
                self.errors.push(
                    Diagnostic::error(Code::NoSuchVerb, p.verb_span, format!("{relation}{hint}")).with_related(related),
                );
            }
            [] => {
                let msg = match &object_label {
                    Some(o) => format!(
                        "`{verb}` cannot relate {subject_label} to {o}; the vocabulary declares {}",
                        describe(&found)
                    ),
                    None => format!(
                        "`{verb}` needs an object here; the vocabulary declares {}",
                        describe(&found)
                    ),
                };
                self.errors
                    .push(Diagnostic::error(Code::TypeMismatch, p.verb_span, msg).with_related(related));
            }
            [one] => self.record(p, *one),
            many => {
                self.errors.push(
                    Diagnostic::error(
                        Code::AmbiguousVerb,
                        p.verb_span,
                        format!("`{verb}` matches several verbs: {}", describe(many)),
                    )
                    .with_related(related),
                );
            }
        }
    }

    fn record(&mut self, p: &Predicate, sig: VerbId) {
        let v = self.v;
        let s = v.verb(sig);
        let (fact_type, swapped) = match (s.form, s.paired) {
            (VerbForm::Passive, Some(active)) => (active, true),
            _ => (sig, false),
        };
        let literal_object = match &p.object {
            Some(Object::Str { value, .. }) => Some(Referent::Individual {
                label: value.clone(),
                term: s.object,
            }),
            Some(Object::Number { value, .. }) => Some(Referent::Quantity { value: value.clone() }),
            _ => None,
        };
        if self.bindings.len() <= p.id {
            self.bindings.resize(p.id + 1, None);
        }
        self.bindings[p.id] = Some(BoundPredicate {
            signature: sig,
            fact_type,
            swapped,
            literal_object,
        });
    }

    /// "; did you mean `places`?" for verbs of `subject` within edit distance 2.
    fn suggest(&self, subject: TermId, verb: &str) -> String {
        let best = self
            .v
            .verbs_for_subject(subject)
            .into_iter()
            .map(|id| self.v.verb(id).text.clone())
            .map(|t| (strsim::levenshtein(&t.to_lowercase(), verb), t))
            .filter(|(d, _)| *d <= 2)
            .min();
        match best {
            Some((_, t)) => format!("; did you mean `{t}`?"),
            None => String::new(),
        }
    }
}
