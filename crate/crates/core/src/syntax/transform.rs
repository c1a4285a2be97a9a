use super::validate::{classify, Shape};
use super::{Atom, Literal, Program, Rule};

/// Prefix of the fresh predicates introduced for constraints.
pub const CO_PREFIX: &str = "co__";

/// Replaces every constraint `:- body.` by `co__k(s) :- not co__k(s), body.`
/// where `s` is the term the body hangs from and `co__k` is fresh. Programs
/// without constraints are returned unchanged.
///
/// The input is expected to satisfy [`super::validate_folp`]; a constraint
/// that does not is anchored at its first term anyway.
pub fn eliminate_constraints(p: &Program) -> Program {
    if !p.has_constraints() {
        return p.clone();
    }
    let mut counter = 0usize;
    let mut fresh = || loop {
        counter += 1;
        let name = format!("{CO_PREFIX}{counter}");
        if !p.has_pred(&name) {
            return name;
        }
    };
    let rules: Vec<Rule> = p
        .rules()
        .iter()
        .map(|r| {
            if r.head.is_some() {
                return r.clone();
            }
            let s = match classify(r) {
                Ok(Shape::Constraint { body }) => body.s,
                _ => r
                    .body
                    .iter()
                    .find_map(|l| l.atom().map(|a| a.args[0].clone()))
                    .expect("constraint body has an atom"),
            };
            let head = Atom::new(fresh(), vec![s]);
            let mut body = vec![Literal::Naf(head.clone())];
            body.extend(r.body.iter().cloned());
            Rule {
                head: Some(head),
                free: false,
                body,
                line: r.line,
            }
        })
        .collect();
    Program::new(rules).expect("fresh unary predicates cannot conflict")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, validate_folp};

    #[test]
    fn example_constraint_becomes_unary_rule() {
        let p = parse_program(":- smember(X), rmember(X).").unwrap();
        let q = eliminate_constraints(&p);
        assert_eq!(
            q.canonical_text(),
            "co__1(X) :- not co__1(X), smember(X), rmember(X).\n"
        );
        assert!(validate_folp(&q).is_ok());
    }

    #[test]
    fn constraint_free_program_is_unchanged() {
        let p = parse_program("p(a).\nq(X) :- f(X,Y), p(Y).").unwrap();
        assert_eq!(eliminate_constraints(&p), p);
    }

    #[test]
    fn fresh_names_avoid_user_predicates() {
        let p = parse_program("co__1(a).\n:- p(X).\n:- f(X,Y), q(Y).").unwrap();
        let q = eliminate_constraints(&p);
        let heads: Vec<String> = q
            .rules()
            .iter()
            .map(|r| r.head.as_ref().unwrap().pred.clone())
            .collect();
        assert_eq!(heads, vec!["co__1", "co__2", "co__3"]);
        for h in &heads[1..] {
            assert!(!p.has_pred(h));
        }
        assert!(validate_folp(&q).is_ok());
    }

    #[test]
    fn binary_constraint_anchors_at_source() {
        let p = parse_program(":- f(X,Y).").unwrap();
        let q = eliminate_constraints(&p);
        assert_eq!(
            q.canonical_text(),
            "co__1(X) :- not co__1(X), f(X,Y).\n"
        );
        assert!(validate_folp(&q).is_ok());
    }
}
