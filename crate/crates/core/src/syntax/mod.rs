//! Surface syntax for forest logic programs: terms, literals, rules and
//! programs, together with the parser, the shape validator, the constraint
//! elimination pass and the interned form consumed by the reasoners.
//!
//! The text format is line oriented:
//!
//! ```text
//! % comment
//! rmember(a).                               % fact
//! support(X,Y) v not support(X,Y).          % free rule
//! smember(X) :- support(X,Y), smember(Y).   % rule
//! :- smember(X), rmember(X).                % constraint
//! ```

mod compiled;
mod parser;
mod transform;
mod validate;

pub use compiled::{
    BPred, BinaryRule, CompileError, ConstId, Folp, Lit, RuleTerm, Successor, UPred, UnaryRule,
};
pub use parser::{parse_program, ParseError};
pub use transform::{eliminate_constraints, CO_PREFIX};
pub use validate::{validate_folp, Violation, ViolationKind};

use std::collections::BTreeMap;
use std::fmt;

/// A term is either a constant (lowercase initial) or a variable
/// (uppercase initial). Variables carry the index of the rule they occur in,
/// so two rules never share a variable even when the names coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var { name: String, rule: usize },
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var { .. })
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Const(n) => n,
            Term::Var { name, .. } => name,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        for (i, t) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Pos(Atom),
    Naf(Atom),
    Neq(Term, Term),
}

impl Literal {
    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Literal::Pos(a) | Literal::Naf(a) => Some(a),
            Literal::Neq(..) => None,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Pos(a) => write!(f, "{a}"),
            Literal::Naf(a) => write!(f, "not {a}"),
            Literal::Neq(s, t) => write!(f, "{s} != {t}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Fact,
    Free,
    Rule,
    Constraint,
}

/// A rule as written. The shape classification of forest logic programs
/// (unary, binary, free, constraint) is computed by [`validate_folp`] and
/// [`Folp::compile`]; the AST itself only distinguishes the surface forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Option<Atom>,
    /// `head v not head.`
    pub free: bool,
    pub body: Vec<Literal>,
    /// 1-based source line, 0 for rules built programmatically.
    pub line: usize,
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match (&self.head, self.free, self.body.is_empty()) {
            (None, _, _) => RuleKind::Constraint,
            (Some(_), true, _) => RuleKind::Free,
            (Some(_), false, true) => RuleKind::Fact,
            (Some(_), false, false) => RuleKind::Rule,
        }
    }

    /// Structural equality ignoring the source line.
    pub fn same_as(&self, other: &Rule) -> bool {
        self.head == other.head && self.free == other.free && self.body == other.body
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
            if self.free {
                write!(f, " v not {h}")?;
            }
        }
        if !self.body.is_empty() {
            if self.head.is_some() {
                f.write_str(" ")?;
            }
            f.write_str(":- ")?;
            for (i, l) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{l}")?;
            }
        }
        f.write_str(".")
    }
}

/// A parsed program with its symbol inventories.
///
/// Inventories list symbols in order of first occurrence; that order is the
/// declaration order used wherever the reasoners need a deterministic order
/// over constants or predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    constants: Vec<String>,
    upreds: Vec<String>,
    bpreds: Vec<String>,
    free: Vec<String>,
    by_head: BTreeMap<String, Vec<usize>>,
}

/// Arity conflict detected while building a program.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("predicate `{pred}` used with arity {first} and {second}")]
pub struct ArityConflict {
    pub pred: String,
    pub first: usize,
    pub second: usize,
}

impl Program {
    /// Builds a program and its inventories. Variables are re-tagged with the
    /// index of their rule so rules are standardized apart.
    pub fn new(rules: Vec<Rule>) -> Result<Self, ArityConflict> {
        let rules: Vec<Rule> = rules
            .into_iter()
            .enumerate()
            .map(|(i, r)| retag(r, i))
            .collect();
        let mut constants = Vec::new();
        let mut upreds: Vec<String> = Vec::new();
        let mut bpreds: Vec<String> = Vec::new();
        let mut free = Vec::new();
        let mut by_head: BTreeMap<String, Vec<usize>> = BTreeMap::new();

        let note_term = |t: &Term, constants: &mut Vec<String>| {
            if let Term::Const(c) = t {
                if !constants.contains(c) {
                    constants.push(c.clone());
                }
            }
        };
        let mut atoms: Vec<&Atom> = Vec::new();
        for r in &rules {
            if let Some(h) = &r.head {
                atoms.push(h);
            }
            for l in &r.body {
                match l {
                    Literal::Pos(a) | Literal::Naf(a) => atoms.push(a),
                    Literal::Neq(..) => {}
                }
            }
        }
        for r in &rules {
            let mut terms: Vec<&Term> = Vec::new();
            if let Some(h) = &r.head {
                terms.extend(h.args.iter());
            }
            for l in &r.body {
                match l {
                    Literal::Pos(a) | Literal::Naf(a) => terms.extend(a.args.iter()),
                    Literal::Neq(s, t) => {
                        terms.push(s);
                        terms.push(t);
                    }
                }
            }
            for t in terms {
                note_term(t, &mut constants);
            }
        }
        for a in atoms {
            let (mine, other) = match a.arity() {
                1 => (&mut upreds, &bpreds),
                _ => (&mut bpreds, &upreds),
            };
            if other.contains(&a.pred) {
                return Err(ArityConflict {
                    pred: a.pred.clone(),
                    first: if a.arity() == 1 { 2 } else { 1 },
                    second: a.arity(),
                });
            }
            if !mine.contains(&a.pred) {
                mine.push(a.pred.clone());
            }
        }
        for (i, r) in rules.iter().enumerate() {
            if let Some(h) = &r.head {
                by_head.entry(h.pred.clone()).or_default().push(i);
                if r.free && h.args.iter().all(Term::is_var) && !free.contains(&h.pred) {
                    let distinct = h.args.len() < 2 || h.args[0] != h.args[1];
                    if distinct {
                        free.push(h.pred.clone());
                    }
                }
            }
        }
        Ok(Program {
            rules,
            constants,
            upreds,
            bpreds,
            free,
            by_head,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Constants in order of first occurrence.
    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn upreds(&self) -> &[String] {
        &self.upreds
    }

    pub fn bpreds(&self) -> &[String] {
        &self.bpreds
    }

    /// Predicates with a choice rule over distinct variables.
    pub fn free_preds(&self) -> &[String] {
        &self.free
    }

    pub fn is_free(&self, pred: &str) -> bool {
        self.free.iter().any(|p| p == pred)
    }

    /// Indices of the rules whose head predicate is `pred`.
    pub fn rules_for(&self, pred: &str) -> &[usize] {
        self.by_head.get(pred).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_pred(&self, pred: &str) -> bool {
        self.upreds.iter().chain(self.bpreds.iter()).any(|p| p == pred)
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        if self.upreds.iter().any(|p| p == pred) {
            Some(1)
        } else if self.bpreds.iter().any(|p| p == pred) {
            Some(2)
        } else {
            None
        }
    }

    pub fn has_constraints(&self) -> bool {
        self.rules.iter().any(|r| r.head.is_none())
    }

    /// Canonical text, one rule per line.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

fn retag(mut rule: Rule, idx: usize) -> Rule {
    let fix = |t: &mut Term| {
        if let Term::Var { rule, .. } = t {
            *rule = idx;
        }
    };
    if let Some(h) = &mut rule.head {
        h.args.iter_mut().for_each(fix);
    }
    for l in &mut rule.body {
        match l {
            Literal::Pos(a) | Literal::Naf(a) => a.args.iter_mut().for_each(fix),
            Literal::Neq(s, t) => {
                fix(s);
                fix(t);
            }
        }
    }
    rule
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips_surface_forms() {
        let text = "support(X,Y) v not support(X,Y).\n\
                    smember(X) :- support(X,Y), rmember(Y), support(X,Z), rmember(Z), Y != Z.\n\
                    :- smember(X), rmember(X).\n\
                    rmember(a).\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.canonical_text(), text);
    }

    #[test]
    fn inventories_follow_first_occurrence() {
        let p = parse_program("q(b) :- f(b,a), p(a).\np(X) :- not q(X).").unwrap();
        assert_eq!(p.constants(), &["b".to_string(), "a".to_string()]);
        assert_eq!(p.upreds(), &["q".to_string(), "p".to_string()]);
        assert_eq!(p.bpreds(), &["f".to_string()]);
        assert_eq!(p.rules_for("p"), &[1]);
        assert!(p.rules_for("f").is_empty());
    }

    #[test]
    fn variables_are_standardized_apart() {
        let p = parse_program("p(X) :- q(X).\nq(X) :- r(X).").unwrap();
        let v0 = &p.rules()[0].head.as_ref().unwrap().args[0];
        let v1 = &p.rules()[1].head.as_ref().unwrap().args[0];
        assert_eq!(v0.name(), v1.name());
        assert_ne!(v0, v1);
    }

    #[test]
    fn free_predicates_need_distinct_variables() {
        let p = parse_program("f(X,Y) v not f(X,Y).\ng(a,Y) v not g(a,Y).\nh(X) v not h(X).")
            .unwrap();
        assert!(p.is_free("f"));
        assert!(!p.is_free("g"));
        assert!(p.is_free("h"));
    }
}
