use std::fmt;

use super::{Atom, Literal, Program, Rule, Term};

/// The forest-shape condition a rule fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two variable terms that must be different coincide, e.g. `f(X,X)`.
    SameVariableTerms { literal: String },
    /// A variable successor term has no positive binary literal linking it
    /// to the head term.
    UnconnectedSuccessor { var: String },
    /// A binary body literal whose first argument is not the head term.
    BinaryNotFromHead { literal: String },
    /// An inequality that does not relate two distinct successor terms.
    InequalityScope { literal: String },
    /// Binary rules admit no inequalities.
    InequalityInBinaryRule { literal: String },
    /// A binary rule body literal that is not over `s`, `t` or `(s,t)`.
    LiteralOffArc { literal: String },
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::SameVariableTerms { literal } => {
                write!(f, "variable terms of `{literal}` must be different")
            }
            ViolationKind::UnconnectedSuccessor { var } => write!(
                f,
                "variable successor `{var}` is not connected to the head term by a positive binary literal"
            ),
            ViolationKind::BinaryNotFromHead { literal } => {
                write!(f, "binary literal `{literal}` does not start at the head term")
            }
            ViolationKind::InequalityScope { literal } => write!(
                f,
                "inequality `{literal}` must relate two distinct successor terms"
            ),
            ViolationKind::InequalityInBinaryRule { literal } => {
                write!(f, "inequality `{literal}` is not allowed in a binary rule")
            }
            ViolationKind::LiteralOffArc { literal } => {
                write!(f, "literal `{literal}` is not over the head arc of a binary rule")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending rule in program order.
    pub rule: usize,
    pub line: usize,
    pub text: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule {} (line {}) `{}`: {}",
            self.rule + 1,
            self.line,
            self.text,
            self.kind
        )
    }
}

pub(crate) type SignedName = (bool, String);

#[derive(Clone, Debug, Default)]
pub(crate) struct SuccShape {
    pub term: Option<Term>,
    pub gamma: Vec<SignedName>,
    pub delta: Vec<SignedName>,
}

/// Body of a unary rule (or of a constraint), split by the head term `s`.
#[derive(Clone, Debug)]
pub(crate) struct BodyShape {
    pub s: Term,
    pub beta: Vec<SignedName>,
    pub succ: Vec<SuccShape>,
    pub neq: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub(crate) enum Shape {
    Free {
        atom: Atom,
    },
    Unary {
        pred: String,
        body: BodyShape,
    },
    Binary {
        pred: String,
        s: Term,
        t: Term,
        beta: Vec<SignedName>,
        gamma: Vec<SignedName>,
        delta: Vec<SignedName>,
    },
    Constraint {
        body: BodyShape,
    },
}

fn signed(l: &Literal) -> Option<(bool, &Atom)> {
    match l {
        Literal::Pos(a) => Some((true, a)),
        Literal::Naf(a) => Some((false, a)),
        Literal::Neq(..) => None,
    }
}

fn body_shape(s: &Term, body: &[Literal], errs: &mut Vec<ViolationKind>) -> BodyShape {
    let mut shape = BodyShape {
        s: s.clone(),
        beta: vec![],
        succ: vec![],
        neq: vec![],
    };
    fn slot(shape: &mut BodyShape, t: &Term) -> usize {
        if let Some(i) = shape.succ.iter().position(|x| x.term.as_ref() == Some(t)) {
            return i;
        }
        shape.succ.push(SuccShape {
            term: Some(t.clone()),
            ..Default::default()
        });
        shape.succ.len() - 1
    }
    let mut pending_neq = Vec::new();
    for l in body {
        let Some((pos, a)) = signed(l) else {
            pending_neq.push(l);
            continue;
        };
        if a.arity() == 1 {
            let t = &a.args[0];
            if t == s {
                shape.beta.push((pos, a.pred.clone()));
            } else {
                let i = slot(&mut shape, t);
                shape.succ[i].delta.push((pos, a.pred.clone()));
            }
        } else {
            let (u, v) = (&a.args[0], &a.args[1]);
            if u != s {
                errs.push(ViolationKind::BinaryNotFromHead {
                    literal: l.to_string(),
                });
                continue;
            }
            if v == s && v.is_var() {
                errs.push(ViolationKind::SameVariableTerms {
                    literal: l.to_string(),
                });
                continue;
            }
            let i = slot(&mut shape, v);
            shape.succ[i].gamma.push((pos, a.pred.clone()));
        }
    }
    // unary literals on a constant successor equal to the head term belong to beta
    if let Some(i) = shape.succ.iter().position(|x| x.term.as_ref() == Some(s)) {
        let d = std::mem::take(&mut shape.succ[i].delta);
        shape.beta.extend(d);
    }
    for l in pending_neq {
        let Literal::Neq(a, b) = l else { continue };
        let ia = shape.succ.iter().position(|x| x.term.as_ref() == Some(a));
        let ib = shape.succ.iter().position(|x| x.term.as_ref() == Some(b));
        match (ia, ib) {
            (Some(i), Some(j)) if i != j && a != s && b != s => shape.neq.push((i, j)),
            _ => errs.push(ViolationKind::InequalityScope {
                literal: l.to_string(),
            }),
        }
    }
    for sc in &shape.succ {
        let t = sc.term.as_ref().expect("successor term");
        if t.is_var() && !sc.gamma.iter().any(|(p, _)| *p) {
            errs.push(ViolationKind::UnconnectedSuccessor {
                var: t.name().to_string(),
            });
        }
    }
    shape
}

/// Picks the term a constraint body hangs from: the source of its binary
/// literals, else its first variable, else its first term.
fn constraint_anchor(body: &[Literal]) -> Term {
    for l in body {
        if let Some((_, a)) = signed(l) {
            if a.arity() == 2 {
                return a.args[0].clone();
            }
        }
    }
    let terms: Vec<&Term> = body
        .iter()
        .flat_map(|l| match l {
            Literal::Pos(a) | Literal::Naf(a) => a.args.iter().collect::<Vec<_>>(),
            Literal::Neq(s, t) => vec![s, t],
        })
        .collect();
    terms
        .iter()
        .find(|t| t.is_var())
        .or_else(|| terms.first())
        .map(|t| (*t).clone())
        .unwrap_or_else(|| Term::Const("_".into()))
}

pub(crate) fn classify(rule: &Rule) -> Result<Shape, Vec<ViolationKind>> {
    let mut errs = Vec::new();
    let shape = match &rule.head {
        None => {
            let s = constraint_anchor(&rule.body);
            Shape::Constraint {
                body: body_shape(&s, &rule.body, &mut errs),
            }
        }
        Some(h) if rule.free => {
            if h.arity() == 2 && h.args[0] == h.args[1] && h.args[0].is_var() {
                errs.push(ViolationKind::SameVariableTerms {
                    literal: h.to_string(),
                });
            }
            Shape::Free { atom: h.clone() }
        }
        Some(h) if h.arity() == 1 => Shape::Unary {
            pred: h.pred.clone(),
            body: body_shape(&h.args[0], &rule.body, &mut errs),
        },
        Some(h) => {
            let (s, t) = (&h.args[0], &h.args[1]);
            if s == t && s.is_var() {
                errs.push(ViolationKind::SameVariableTerms {
                    literal: h.to_string(),
                });
            }
            let (mut beta, mut gamma, mut delta) = (vec![], vec![], vec![]);
            for l in &rule.body {
                let Some((pos, a)) = signed(l) else {
                    errs.push(ViolationKind::InequalityInBinaryRule {
                        literal: l.to_string(),
                    });
                    continue;
                };
                let entry = (pos, a.pred.clone());
                if a.arity() == 1 {
                    if &a.args[0] == s {
                        beta.push(entry);
                    } else if &a.args[0] == t {
                        delta.push(entry);
                    } else {
                        errs.push(ViolationKind::LiteralOffArc {
                            literal: l.to_string(),
                        });
                    }
                } else if &a.args[0] == s && &a.args[1] == t {
                    gamma.push(entry);
                } else {
                    errs.push(ViolationKind::LiteralOffArc {
                        literal: l.to_string(),
                    });
                }
            }
            if t.is_var() && !gamma.iter().any(|(p, _)| *p) {
                errs.push(ViolationKind::UnconnectedSuccessor {
                    var: t.name().to_string(),
                });
            }
            Shape::Binary {
                pred: h.pred.clone(),
                s: s.clone(),
                t: t.clone(),
                beta,
                gamma,
                delta,
            }
        }
    };
    if errs.is_empty() {
        Ok(shape)
    } else {
        Err(errs)
    }
}

/// Checks every rule against the forest logic program shape. Returns one
/// violation per failed condition.
pub fn validate_folp(p: &Program) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for (i, r) in p.rules().iter().enumerate() {
        if let Err(kinds) = classify(r) {
            out.extend(kinds.into_iter().map(|kind| Violation {
                rule: i,
                line: r.line,
                text: r.to_string(),
                kind,
            }));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    const EX1: &str = "smember(X) :- support(X,Y), smember(Y).\n\
        smember(X) :- support(X,Y), rmember(Y), support(X,Z), rmember(Z), Y != Z.\n\
        support(X,Y) v not support(X,Y).\n\
        :- smember(X), rmember(X).\n\
        rmember(a).\n\
        rmember(b).\n";

    fn kinds(text: &str) -> Vec<ViolationKind> {
        let p = parse_program(text).unwrap();
        validate_folp(&p)
            .err()
            .unwrap_or_default()
            .into_iter()
            .map(|v| v.kind)
            .collect()
    }

    #[test]
    fn example_program_is_a_folp() {
        assert!(kinds(EX1).is_empty());
    }

    #[test]
    fn naf_only_link_to_variable_successor() {
        assert_eq!(
            kinds("p(X) :- not f(X,Y)."),
            vec![ViolationKind::UnconnectedSuccessor { var: "Y".into() }]
        );
    }

    #[test]
    fn free_rule_with_identical_variables() {
        assert_eq!(
            kinds("f(X,X) v not f(X,X)."),
            vec![ViolationKind::SameVariableTerms {
                literal: "f(X,X)".into()
            }]
        );
    }

    #[test]
    fn binary_literal_must_leave_the_head_term() {
        let k = kinds("p(X) :- f(Y,X), q(Y).");
        assert!(matches!(k[0], ViolationKind::BinaryNotFromHead { .. }));
    }

    #[test]
    fn inequality_scope() {
        assert!(matches!(
            kinds("p(X) :- f(X,Y), X != Y.")[0],
            ViolationKind::InequalityScope { .. }
        ));
        assert!(matches!(
            kinds("p(X) :- f(X,Y), Y != Y.")[0],
            ViolationKind::InequalityScope { .. }
        ));
        assert!(kinds("p(X) :- f(X,Y), f(X,Z), Y != Z.").is_empty());
    }

    #[test]
    fn binary_rule_shapes() {
        assert!(kinds("f(X,Y) :- q(X), g(X,Y), not r(Y).").is_empty());
        assert!(kinds("f(X,a) :- q(X).").is_empty());
        assert!(matches!(
            kinds("f(X,Y) :- q(Y).")[0],
            ViolationKind::UnconnectedSuccessor { .. }
        ));
        assert!(matches!(
            kinds("f(X,Y) :- g(Y,X).")[0],
            ViolationKind::LiteralOffArc { .. }
        ));
        assert!(matches!(
            kinds("f(X,Y) :- g(X,Y), X != Y.")[0],
            ViolationKind::InequalityInBinaryRule { .. }
        ));
        assert!(matches!(
            kinds("f(X,X) :- g(X,X).")[0],
            ViolationKind::SameVariableTerms { .. }
        ));
    }

    #[test]
    fn constant_successors_need_no_link() {
        assert!(kinds("p(X) :- q(a).").is_empty());
        assert!(kinds("p(a) :- f(a,a), q(a).").is_empty());
    }

    #[test]
    fn constraint_shapes() {
        assert!(kinds(":- f(X,Y), q(Y).").is_empty());
        assert!(matches!(
            kinds(":- p(X), q(Y).")[0],
            ViolationKind::UnconnectedSuccessor { .. }
        ));
    }

    #[test]
    fn violations_name_rule_and_line() {
        let p = parse_program("p(a).\np(X) :- not f(X,Y).").unwrap();
        let v = validate_folp(&p).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, 1);
        assert_eq!(v[0].line, 2);
        assert!(v[0].to_string().contains("line 2"));
    }
}
