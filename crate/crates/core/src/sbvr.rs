//! SBVR semantic formulations and their XML form.
//!
//! Terms become noun concepts, determiners become quantifications, names
//! and quoted instances become individual concepts, verbs become fact
//! types, coordinators become logical operations and relative clauses
//! become projections restricting the quantified variable.
//!
//! Quantifiers first nest left to right in clause order. A variable that is
//! referred to outside its own quantification (`each order is shipped if
//! … the order …`) is then lifted, together with the quantifiers it sits
//! under, to the smallest node covering every use.

use std::fmt;

use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::ast::{Connective, Coordination, Determiner, NounPhrase, Object, Predicate, Statement};
use crate::binder::{BoundRule, Referent};
use crate::vocab::Vocabulary;
use crate::Modality;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemanticFormulation {
    Modal {
        kind: Modality,
        body: Box<SemanticFormulation>,
    },
    Quantification {
        quantifier: Quantifier,
        variable: SfVariable,
        restriction: Option<Box<SemanticFormulation>>,
        body: Box<SemanticFormulation>,
    },
    Atomic {
        fact_type: FactType,
        roles: Vec<Role>,
    },
    Logical {
        op: LogicalOperator,
        operands: Vec<SemanticFormulation>,
    },
    Projection {
        variable: String,
        constraint: Box<SemanticFormulation>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Universal,
    AtLeastN(u32),
    AtMostN(u32),
    ExactlyN(u32),
    Existential,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SfVariable {
    pub id: String,
    pub noun_concept: String,
    pub definite: bool,
}

/// A fact type named by its role terms and verb text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactType {
    pub subject: String,
    pub verb: String,
    pub object: Option<String>,
}

impl FactType {
    pub fn arity(&self) -> usize {
        if self.object.is_some() {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Role {
    VariableRef(String),
    IndividualConceptRef {
        label: String,
        noun_concept: Option<String>,
    },
    QuantityLiteral(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicalOperator {
    Conjunction,
    Disjunction,
    Implication,
}

impl LogicalOperator {
    pub fn as_str(self) -> &'static str {
        match self {
            LogicalOperator::Conjunction => "conjunction",
            LogicalOperator::Disjunction => "disjunction",
            LogicalOperator::Implication => "implication",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Self::Conjunction, Self::Disjunction, Self::Implication]
            .into_iter()
            .find(|o| o.as_str() == s)
    }
}

impl From<Connective> for LogicalOperator {
    fn from(c: Connective) -> Self {
        match c {
            Connective::And => LogicalOperator::Conjunction,
            Connective::Or => LogicalOperator::Disjunction,
        }
    }
}

fn modal_element(m: Modality) -> &'static str {
    match m {
        Modality::Obligation => "obligationFormulation",
        Modality::Prohibition => "prohibitionFormulation",
        Modality::Necessity => "necessityFormulation",
        Modality::Impossibility => "impossibilityFormulation",
        Modality::Permission => "permissibilityFormulation",
        Modality::Possibility => "possibilityFormulation",
    }
}

fn quantifier_element(q: Quantifier) -> (&'static str, Option<u32>) {
    match q {
        Quantifier::Universal => ("universalQuantification", None),
        Quantifier::AtLeastN(n) => ("atLeastNQuantification", Some(n)),
        Quantifier::AtMostN(n) => ("atMostNQuantification", Some(n)),
        Quantifier::ExactlyN(n) => ("exactlyNQuantification", Some(n)),
        Quantifier::Existential => ("existentialQuantification", None),
    }
}

// ---------------------------------------------------------------------------
// formulation

pub fn formulate(b: &BoundRule, v: &Vocabulary) -> SemanticFormulation {
    let f = Formulator { b, v };
    let mut body = f.statement(&b.ast.statement);
    hoist(&mut body);
    SemanticFormulation::Modal {
        kind: b.ast.modality,
        body: Box::new(body),
    }
}

struct Formulator<'a> {
    b: &'a BoundRule,
    v: &'a Vocabulary,
}

impl Formulator<'_> {
    fn statement(&self, s: &Statement) -> SemanticFormulation {
        match s {
            Statement::Conditional { condition, consequence } => SemanticFormulation::Logical {
                op: LogicalOperator::Implication,
                operands: vec![self.statement(condition), self.statement(consequence)],
            },
            Statement::Junction { op, operands } => SemanticFormulation::Logical {
                op: (*op).into(),
                operands: operands.iter().map(|o| self.statement(o)).collect(),
            },
            Statement::Simple { subject, predicates } => {
                let body = self.predicates(&self.role(subject), predicates);
                self.quantify(subject, body)
            }
        }
    }

    fn role(&self, np: &NounPhrase) -> Role {
        match self.b.referent(np) {
            Referent::Variable { var, .. } => Role::VariableRef(self.b.variables[*var].id.clone()),
            Referent::Individual { label, term } => Role::IndividualConceptRef {
                label: label.clone(),
                noun_concept: term.map(|t| self.v.term(t).label.clone()),
            },
            Referent::Quantity { value } => Role::QuantityLiteral(value.clone()),
        }
    }

    /// Wraps `body` in the quantification a noun phrase introduces.
    fn quantify(&self, np: &NounPhrase, body: SemanticFormulation) -> SemanticFormulation {
        let subject = self.role(np);
        let qualifier = np.qualifier.as_ref().map(|q| self.predicates(&subject, &q.predicates));
        match self.b.referent(np) {
            Referent::Variable { var, defining: true } => {
                let var = &self.b.variables[*var];
                let quantifier = match np.determiner.as_ref().map(|d| d.kind) {
                    Some(Determiner::Universal) => Quantifier::Universal,
                    Some(Determiner::AtLeastOne) => Quantifier::AtLeastN(1),
                    Some(Determiner::AtLeastN(n)) => Quantifier::AtLeastN(n),
                    Some(Determiner::AtMostN(n)) => Quantifier::AtMostN(n),
                    Some(Determiner::ExactlyN(n)) => Quantifier::ExactlyN(n),
                    Some(Determiner::Definite) | None => Quantifier::Existential,
                };
                SemanticFormulation::Quantification {
                    quantifier,
                    variable: SfVariable {
                        id: var.id.clone(),
                        noun_concept: self.v.term(var.ranges_over).label.clone(),
                        definite: var.definite,
                    },
                    restriction: qualifier.map(|c| {
                        Box::new(SemanticFormulation::Projection {
                            variable: var.id.clone(),
                            constraint: Box::new(c),
                        })
                    }),
                    body: Box::new(body),
                }
            }
            _ => match qualifier {
                Some(q) => SemanticFormulation::Logical {
                    op: LogicalOperator::Conjunction,
                    operands: vec![q, body],
                },
                None => body,
            },
        }
    }

    fn predicates(&self, subject: &Role, c: &Coordination<Predicate>) -> SemanticFormulation {
        match c {
            Coordination::Single(p) => self.predicate(subject, p),
            Coordination::Junction { op, operands } => SemanticFormulation::Logical {
                op: (*op).into(),
                operands: operands.iter().map(|o| self.predicates(subject, o)).collect(),
            },
        }
    }

    fn predicate(&self, subject: &Role, p: &Predicate) -> SemanticFormulation {
        let bp = self.b.binding(p);
        let sig = self.v.verb(bp.fact_type);
        let fact_type = FactType {
            subject: self.v.term(sig.subject).label.clone(),
            verb: sig.text.clone(),
            object: sig.object.map(|o| self.v.term(o).label.clone()),
        };
        let object = match &p.object {
            None => None,
            Some(Object::Noun(np)) => Some(self.role(np)),
            Some(Object::Str { .. } | Object::Number { .. }) => {
                let lit = bp.literal_object.as_ref().expect("literal object bound");
                Some(match lit {
                    Referent::Quantity { value } => Role::QuantityLiteral(value.clone()),
                    Referent::Individual { label, term } => Role::IndividualConceptRef {
                        label: label.clone(),
                        noun_concept: term.map(|t| self.v.term(t).label.clone()),
                    },
                    Referent::Variable { .. } => unreachable!("literals never bind variables"),
                })
            }
        };
        let roles = match object {
            None => vec![subject.clone()],
            Some(o) if bp.swapped => vec![o, subject.clone()],
            Some(o) => vec![subject.clone(), o],
        };
        let atomic = SemanticFormulation::Atomic { fact_type, roles };
        match &p.object {
            Some(Object::Noun(np)) => self.quantify(np, atomic),
            _ => atomic,
        }
    }
}

// ---------------------------------------------------------------------------
// quantifier lifting

type Path = Vec<usize>;

fn children(f: &SemanticFormulation) -> Vec<&SemanticFormulation> {
    match f {
        SemanticFormulation::Modal { body, .. } => vec![body],
        SemanticFormulation::Quantification { restriction, body, .. } => {
            restriction.iter().map(|r| &**r).chain([&**body]).collect()
        }
        SemanticFormulation::Atomic { .. } => vec![],
        SemanticFormulation::Logical { operands, .. } => operands.iter().collect(),
        SemanticFormulation::Projection { constraint, .. } => vec![constraint],
    }
}

fn child_mut(f: &mut SemanticFormulation, i: usize) -> &mut SemanticFormulation {
    match f {
        SemanticFormulation::Modal { body, .. } => body,
        SemanticFormulation::Quantification {
            restriction: Some(r), ..
        } if i == 0 => r,
        SemanticFormulation::Quantification { body, .. } => body,
        SemanticFormulation::Logical { operands, .. } => &mut operands[i],
        SemanticFormulation::Projection { constraint, .. } => constraint,
        SemanticFormulation::Atomic { .. } => unreachable!("atomic formulations have no children"),
    }
}

fn at<'a>(f: &'a SemanticFormulation, path: &[usize]) -> &'a SemanticFormulation {
    path.iter().fold(f, |n, &i| children(n)[i])
}

fn at_mut<'a>(f: &'a mut SemanticFormulation, path: &[usize]) -> &'a mut SemanticFormulation {
    path.iter().fold(f, |n, &i| child_mut(n, i))
}

/// Paths of the quantification introducing each variable and of every node
/// that mentions one.
fn survey(f: &SemanticFormulation, path: &mut Path, quants: &mut Vec<(String, Path)>, uses: &mut Vec<(String, Path)>) {
    match f {
        SemanticFormulation::Quantification { variable, .. } => quants.push((variable.id.clone(), path.clone())),
        SemanticFormulation::Projection { variable, .. } => uses.push((variable.clone(), path.clone())),
        SemanticFormulation::Atomic { roles, .. } => {
            for r in roles {
                if let Role::VariableRef(id) = r {
                    uses.push((id.clone(), path.clone()));
                }
            }
        }
        _ => {}
    }
    for (i, c) in children(f).into_iter().enumerate() {
        path.push(i);
        survey(c, path, quants, uses);
        path.pop();
    }
}

fn is_body_edge(parent: &SemanticFormulation, i: usize) -> bool {
    match parent {
        SemanticFormulation::Quantification { restriction, .. } => i == usize::from(restriction.is_some()),
        _ => false,
    }
}

/// Lifts quantifications until every variable use lies inside the
/// quantification that introduces it.
fn hoist(f: &mut SemanticFormulation) {
    // Each lift moves a quantifier strictly upward, so this bound is only
    // reached on cyclic references, which the binder never produces.
    for _ in 0..256 {
        if !lift_one(f) {
            return;
        }
    }
}

fn lift_one(f: &mut SemanticFormulation) -> bool {
    let (mut quants, mut uses) = (Vec::new(), Vec::new());
    survey(f, &mut Vec::new(), &mut quants, &mut uses);
    for (id, qpath) in &quants {
        let outside: Vec<&Path> = uses
            .iter()
            .filter(|(u, p)| u == id && !p.starts_with(qpath))
            .map(|(_, p)| p)
            .collect();
        if outside.is_empty() {
            continue;
        }
        let target_len = outside
            .iter()
            .map(|p| p.iter().zip(qpath).take_while(|(a, b)| a == b).count())
            .min()
            .unwrap_or(0);
        let target = qpath[..target_len].to_vec();
        // The quantification plus every quantifier above it, up to the
        // target, whose body it sits in.
        let mut chain = vec![qpath.clone()];
        let mut cur = qpath.clone();
        while cur.len() > target_len + 1 {
            let edge = cur.pop().expect("non-empty path");
            let parent = at(f, &cur);
            match parent {
                SemanticFormulation::Quantification { .. } if is_body_edge(parent, edge) => chain.push(cur.clone()),
                SemanticFormulation::Quantification { .. } => break,
                _ => {}
            }
        }
        let mut lifted = Vec::new();
        for p in &chain {
            let node = at_mut(f, p);
            let taken = std::mem::replace(node, placeholder());
            match taken {
                SemanticFormulation::Quantification {
                    quantifier,
                    variable,
                    restriction,
                    body,
                } => {
                    *node = *body;
                    lifted.push((quantifier, variable, restriction));
                }
                _ => unreachable!("chain holds quantifications only"),
            }
        }
        let node = at_mut(f, &target);
        let mut wrapped = std::mem::replace(node, placeholder());
        for (quantifier, variable, restriction) in lifted {
            wrapped = SemanticFormulation::Quantification {
                quantifier,
                variable,
                restriction,
                body: Box::new(wrapped),
            };
        }
        *node = wrapped;
        return true;
    }
    false
}

fn placeholder() -> SemanticFormulation {
    SemanticFormulation::Logical {
        op: LogicalOperator::Conjunction,
        operands: Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// validation

/// Violations of the formulation invariants; empty for a well-formed tree.
pub fn validate_sf(sf: &SemanticFormulation) -> Vec<String> {
    let mut out = Vec::new();
    check(sf, &mut Vec::new(), true, &mut out);
    out
}

fn check(sf: &SemanticFormulation, scope: &mut Vec<String>, root: bool, out: &mut Vec<String>) {
    match sf {
        SemanticFormulation::Modal { body, .. } => {
            if !root {
                out.push("modal formulation below the root".into());
            }
            check(body, scope, false, out);
        }
        SemanticFormulation::Quantification {
            quantifier,
            variable,
            restriction,
            body,
        } => {
            if let Quantifier::AtLeastN(0) | Quantifier::AtMostN(0) | Quantifier::ExactlyN(0) = quantifier {
                out.push(format!("quantification of {} has cardinality 0", variable.id));
            }
            if scope.contains(&variable.id) {
                out.push(format!("variable {} introduced twice", variable.id));
            }
            scope.push(variable.id.clone());
            if let Some(r) = restriction {
                check(r, scope, false, out);
            }
            check(body, scope, false, out);
            scope.pop();
        }
        SemanticFormulation::Atomic { fact_type, roles } => {
            if roles.len() != fact_type.arity() {
                out.push(format!(
                    "fact type `{} {}` has arity {} but {} roles",
                    fact_type.subject,
                    fact_type.verb,
                    fact_type.arity(),
                    roles.len()
                ));
            }
            for r in roles {
                if let Role::VariableRef(id) = r {
                    if !scope.contains(id) {
                        out.push(format!("unbound variable {id}"));
                    }
                }
            }
        }
        SemanticFormulation::Logical { op, operands } => {
            match op {
                LogicalOperator::Implication if operands.len() != 2 => {
                    out.push(format!("implication has {} operands", operands.len()))
                }
                _ if operands.len() < 2 => out.push(format!("{} has {} operands", op.as_str(), operands.len())),
                _ => {}
            }
            for o in operands {
                check(o, scope, false, out);
            }
        }
        SemanticFormulation::Projection { variable, constraint } => {
            if !scope.contains(variable) {
                out.push(format!("unbound variable {variable}"));
            }
            check(constraint, scope, false, out);
        }
    }
}

// ---------------------------------------------------------------------------
// XML

struct Element {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<Element>,
}

impl Element {
    fn new(name: &str) -> Self {
        Element {
            name: name.into(),
            attrs: Vec::new(),
            children: Vec::new(),
        }
    }

    fn attr(mut self, k: &str, v: impl Into<String>) -> Self {
        self.attrs.push((k.into(), v.into()));
        self
    }

    fn child(mut self, c: Element) -> Self {
        self.children.push(c);
        self
    }

    fn get(&self, k: &str) -> Option<&str> {
        self.attrs.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str())
    }

    fn write(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push('<');
        out.push_str(&self.name);
        for (k, v) in &self.attrs {
            out.push_str(&format!(" {k}=\"{}\"", escape(v.as_str())));
        }
        if self.children.is_empty() {
            out.push_str("/>\n");
            return;
        }
        out.push_str(">\n");
        for c in &self.children {
            c.write(depth + 1, out);
        }
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("</{}>\n", self.name));
    }
}

fn element(sf: &SemanticFormulation) -> Element {
    match sf {
        SemanticFormulation::Modal { kind, body } => Element::new(modal_element(*kind)).child(element(body)),
        SemanticFormulation::Quantification {
            quantifier,
            variable,
            restriction,
            body,
        } => {
            let (name, n) = quantifier_element(*quantifier);
            let mut e = Element::new(name);
            if let Some(n) = n {
                e = e.attr("n", n.to_string());
            }
            let mut var = Element::new("variable")
                .attr("id", variable.id.as_str())
                .attr("nounConcept", variable.noun_concept.as_str());
            if variable.definite {
                var = var.attr("definite", "true");
            }
            e = e.child(var);
            if let Some(r) = restriction {
                e = e.child(element(r));
            }
            e.child(element(body))
        }
        SemanticFormulation::Atomic { fact_type, roles } => {
            let mut ft = Element::new("factType")
                .attr("subject", fact_type.subject.as_str())
                .attr("verb", fact_type.verb.as_str());
            if let Some(o) = &fact_type.object {
                ft = ft.attr("object", o.as_str());
            }
            let mut e = Element::new("atomicFormulation").child(ft);
            for r in roles {
                e = e.child(match r {
                    Role::VariableRef(id) => Element::new("variableRef").attr("id", id.as_str()),
                    Role::IndividualConceptRef { label, noun_concept } => {
                        let i = Element::new("individualConceptRef").attr("label", label.as_str());
                        match noun_concept {
                            Some(t) => i.attr("nounConcept", t.as_str()),
                            None => i,
                        }
                    }
                    Role::QuantityLiteral(v) => Element::new("quantityLiteral").attr("value", v.as_str()),
                });
            }
            e
        }
        SemanticFormulation::Logical { op, operands } => {
            let mut e = Element::new("logicalOperation").attr("operator", op.as_str());
            for o in operands {
                e = e.child(element(o));
            }
            e
        }
        SemanticFormulation::Projection { variable, constraint } => Element::new("projection")
            .attr("variable", variable.as_str())
            .child(element(constraint)),
    }
}

/// One formulation as an XML document ending in a newline.
pub fn to_xml(sf: &SemanticFormulation) -> String {
    let mut out = String::new();
    element(sf).write(0, &mut out);
    out
}

/// Several formulations under a `<ruleSet>` root.
pub fn rule_set_to_xml(sfs: &[SemanticFormulation]) -> String {
    let mut root = Element::new("ruleSet");
    root.children = sfs.iter().map(element).collect();
    let mut out = String::new();
    root.write(0, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlError(pub String);

impl fmt::Display for XmlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for XmlError {}

fn err<T>(msg: impl Into<String>) -> Result<T, XmlError> {
    Err(XmlError(msg.into()))
}

fn read_tree(xml: &str) -> Result<Element, XmlError> {
    let mut reader = Reader::from_str(xml);
    reader.config_mut().trim_text(true);
    let mut stack: Vec<Element> = Vec::new();
    let mut root = None;
    let open = |e: &BytesStart| -> Result<Element, XmlError> {
        let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
        let mut el = Element::new(&name);
        for a in e.attributes() {
            let a = a.map_err(|e| XmlError(e.to_string()))?;
            let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
            let value = a.unescape_value().map_err(|e| XmlError(e.to_string()))?;
            el.attrs.push((key, value.into_owned()));
        }
        Ok(el)
    };
    loop {
        let event = reader.read_event().map_err(|e| XmlError(e.to_string()))?;
        let finished = match event {
            Event::Start(e) => {
                stack.push(open(&e)?);
                None
            }
            Event::Empty(e) => Some(open(&e)?),
            Event::End(_) => Some(stack.pop().ok_or_else(|| XmlError("unbalanced end tag".into()))?),
            Event::Text(t) => return err(format!("unexpected text {:?}", String::from_utf8_lossy(&t))),
            Event::Eof => break,
            _ => None,
        };
        if let Some(el) = finished {
            match stack.last_mut() {
                Some(parent) => parent.children.push(el),
                None if root.is_none() => root = Some(el),
                None => return err("more than one root element"),
            }
        }
    }
    if !stack.is_empty() {
        return err("unclosed element");
    }
    root.ok_or_else(|| XmlError("empty document".into()))
}

fn required<'e>(e: &'e Element, k: &str) -> Result<&'e str, XmlError> {
    e.get(k)
        .ok_or_else(|| XmlError(format!("<{}> lacks attribute {k}", e.name)))
}

fn from_element(e: &Element) -> Result<SemanticFormulation, XmlError> {
    if let Some(kind) = Modality::ALL.into_iter().find(|m| modal_element(*m) == e.name) {
        let [body] = e.children.as_slice() else {
            return err(format!("<{}> needs exactly one child", e.name));
        };
        return Ok(SemanticFormulation::Modal {
            kind,
            body: Box::new(from_element(body)?),
        });
    }
    let count = || -> Result<u32, XmlError> {
        required(e, "n")?
            .parse()
            .map_err(|_| XmlError(format!("<{}> has a non-numeric n", e.name)))
    };
    let quantifier = match e.name.as_str() {
        "universalQuantification" => Some(Quantifier::Universal),
        "atLeastNQuantification" => Some(Quantifier::AtLeastN(count()?)),
        "atMostNQuantification" => Some(Quantifier::AtMostN(count()?)),
        "exactlyNQuantification" => Some(Quantifier::ExactlyN(count()?)),
        "existentialQuantification" => Some(Quantifier::Existential),
        _ => None,
    };
    if let Some(quantifier) = quantifier {
        let (var, rest) = match e.children.split_first() {
            Some((v, rest)) if v.name == "variable" => (v, rest),
            _ => return err(format!("<{}> must start with <variable>", e.name)),
        };
        let variable = SfVariable {
            id: required(var, "id")?.to_string(),
            noun_concept: required(var, "nounConcept")?.to_string(),
            definite: var.get("definite") == Some("true"),
        };
        let (restriction, body) = match rest {
            [body] => (None, body),
            [r, body] => (Some(Box::new(from_element(r)?)), body),
            _ => return err(format!("<{}> needs a body and at most one restriction", e.name)),
        };
        return Ok(SemanticFormulation::Quantification {
            quantifier,
            variable,
            restriction,
            body: Box::new(from_element(body)?),
        });
    }
    match e.name.as_str() {
        "atomicFormulation" => {
            let (ft, roles) = match e.children.split_first() {
                Some((ft, roles)) if ft.name == "factType" => (ft, roles),
                _ => return err("<atomicFormulation> must start with <factType>"),
            };
            let fact_type = FactType {
                subject: required(ft, "subject")?.to_string(),
                verb: required(ft, "verb")?.to_string(),
                object: ft.get("object").map(String::from),
            };
            let roles = roles
                .iter()
                .map(|r| match r.name.as_str() {
                    "variableRef" => Ok(Role::VariableRef(required(r, "id")?.to_string())),
                    "individualConceptRef" => Ok(Role::IndividualConceptRef {
                        label: required(r, "label")?.to_string(),
                        noun_concept: r.get("nounConcept").map(String::from),
                    }),
                    "quantityLiteral" => Ok(Role::QuantityLiteral(required(r, "value")?.to_string())),
                    other => err(format!("unexpected role <{other}>")),
                })
                .collect::<Result<_, _>>()?;
            Ok(SemanticFormulation::Atomic { fact_type, roles })
        }
        "logicalOperation" => {
            let op = required(e, "operator")?;
            let op = LogicalOperator::parse(op).ok_or_else(|| XmlError(format!("unknown operator {op}")))?;
            Ok(SemanticFormulation::Logical {
                op,
                operands: e.children.iter().map(from_element).collect::<Result<_, _>>()?,
            })
        }
        "projection" => {
            let [c] = e.children.as_slice() else {
                return err("<projection> needs exactly one child");
            };
            Ok(SemanticFormulation::Projection {
                variable: required(e, "variable")?.to_string(),
                constraint: Box::new(from_element(c)?),
            })
        }
        other => err(format!("unexpected element <{other}>")),
    }
}

/// Reads a document written by [`to_xml`].
pub fn parse_xml(xml: &str) -> Result<SemanticFormulation, XmlError> {
    from_element(&read_tree(xml)?)
}

/// Reads a document written by [`rule_set_to_xml`].
pub fn parse_rule_set(xml: &str) -> Result<Vec<SemanticFormulation>, XmlError> {
    let root = read_tree(xml)?;
    if root.name != "ruleSet" {
        return err(format!("expected <ruleSet>, found <{}>", root.name));
    }
    root.children.iter().map(from_element).collect()
}
