use super::{ArityConflict, Atom, Literal, Program, Rule, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: unexpected character `{ch}`")]
    Lexical { line: usize, col: usize, ch: char },
    #[error("{line}:{col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: {message}")]
    Malformed {
        line: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    Arity(#[from] ArityConflict),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Neq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::If => "`:-`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '(' | ')' | ',' | '.' => {
                bump(&mut chars);
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                out.push(Spanned {
                    tok,
                    line: l0,
                    col: c0,
                });
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    out.push(Spanned {
                        tok: Tok::If,
                        line: l0,
                        col: c0,
                    });
                } else {
                    return Err(ParseError::Lexical {
                        line: l0,
                        col: c0,
                        ch: ':',
                    });
                }
            }
            '!' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    out.push(Spanned {
                        tok: Tok::Neq,
                        line: l0,
                        col: c0,
                    });
                } else {
                    return Err(ParseError::Lexical {
                        line: l0,
                        col: c0,
                        ch: '!',
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: l0,
                    col: c0,
                });
            }
            other => {
                return Err(ParseError::Lexical {
                    line: l0,
                    col: c0,
                    ch: other,
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.to_string(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Spanned, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, usize, usize), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let t = self.next();
                Ok((s, t.line, t.col))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, line, col) = self.ident("a term")?;
        term_of(name, line, col)
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (pred, line, col) = self.ident("a predicate")?;
        if !pred.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(ParseError::Malformed {
                line,
                col,
                message: format!("predicate `{pred}` must start with a lowercase letter"),
            });
        }
        if pred == "not" {
            return Err(ParseError::Malformed {
                line,
                col,
                message: "`not` is reserved".into(),
            });
        }
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        if self.peek().tok == Tok::Comma {
            self.next();
            args.push(self.term()?);
        }
        if self.peek().tok == Tok::Comma {
            let t = self.peek();
            return Err(ParseError::Malformed {
                line: t.line,
                col: t.col,
                message: format!("predicate `{pred}` has more than two arguments"),
            });
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(Atom { pred, args })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        match (self.peek_at(0).clone(), self.peek_at(1).clone()) {
            (Tok::Ident(s), Tok::Ident(_)) if s == "not" => {
                self.next();
                Ok(Literal::Naf(self.atom()?))
            }
            (Tok::Ident(_), Tok::Neq) => {
                let s = self.term()?;
                self.next();
                let t = self.term()?;
                Ok(Literal::Neq(s, t))
            }
            (Tok::Ident(_), _) => Ok(Literal::Pos(self.atom()?)),
            _ => Err(self.error("a literal")),
        }
    }

    fn body(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut body = vec![self.literal()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            body.push(self.literal()?);
        }
        Ok(body)
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let line = self.peek().line;
        if self.peek().tok == Tok::If {
            self.next();
            let body = self.body()?;
            self.expect(Tok::Dot, "`.` or `,`")?;
            return Ok(Rule {
                head: None,
                free: false,
                body,
                line,
            });
        }
        let head = self.atom()?;
        match self.peek().tok.clone() {
            Tok::Dot => {
                self.next();
                Ok(Rule {
                    head: Some(head),
                    free: false,
                    body: vec![],
                    line,
                })
            }
            Tok::If => {
                self.next();
                let body = self.body()?;
                self.expect(Tok::Dot, "`.` or `,`")?;
                Ok(Rule {
                    head: Some(head),
                    free: false,
                    body,
                    line,
                })
            }
            Tok::Ident(v) if v == "v" => {
                self.next();
                match &self.peek().tok {
                    Tok::Ident(n) if n == "not" => {
                        self.next();
                    }
                    _ => return Err(self.error("`not`")),
                }
                let at = self.peek().clone();
                let twin = self.atom()?;
                if twin != head {
                    return Err(ParseError::Malformed {
                        line: at.line,
                        col: at.col,
                        message: format!("free rule must repeat its head, found `{twin}`"),
                    });
                }
                self.expect(Tok::Dot, "`.`")?;
                Ok(Rule {
                    head: Some(head),
                    free: true,
                    body: vec![],
                    line,
                })
            }
            _ => Err(self.error("`.`, `:-` or `v not`")),
        }
    }
}

fn term_of(name: String, line: usize, col: usize) -> Result<Term, ParseError> {
    let first = name.chars().next().unwrap_or('_');
    if first.is_ascii_uppercase() {
        Ok(Term::Var { name, rule: 0 })
    } else if first.is_ascii_lowercase() {
        if name == "not" {
            return Err(ParseError::Malformed {
                line,
                col,
                message: "`not` is reserved".into(),
            });
        }
        Ok(Term::Const(name))
    } else {
        Err(ParseError::Malformed {
            line,
            col,
            message: format!("term `{name}` must start with a letter"),
        })
    }
}

/// Parses the line-oriented program text. Rule order is preserved.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut rules = Vec::new();
    while p.peek().tok != Tok::Eof {
        rules.push(p.rule()?);
    }
    Ok(Program::new(rules)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::RuleKind;

    #[test]
    fn fact_with_constant() {
        let p = parse_program("rmember(a).").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.kind(), RuleKind::Fact);
        assert_eq!(r.head.as_ref().unwrap().args, vec![Term::Const("a".into())]);
    }

    #[test]
    fn free_binary_rule() {
        let p = parse_program("support(X,Y) v not support(X,Y).").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.kind(), RuleKind::Free);
        assert_eq!(r.head.as_ref().unwrap().arity(), 2);
        assert!(p.is_free("support"));
    }

    #[test]
    fn unterminated_body_reports_eof() {
        let err = parse_program("p(X) :- q(X").unwrap_err();
        match err {
            ParseError::Syntax { found, line, .. } => {
                assert_eq!(found, "end of input");
                assert_eq!(line, 1);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn arity_conflict_is_rejected() {
        let err = parse_program("p(X) :- f(X,Y), p(Y).\nf(a) .").unwrap_err();
        assert!(matches!(err, ParseError::Arity(_)));
    }

    #[test]
    fn lexical_error_has_position() {
        let err = parse_program("p(a).\n  q(b) & r(c).").unwrap_err();
        assert_eq!(
            err,
            ParseError::Lexical {
                line: 2,
                col: 8,
                ch: '&'
            }
        );
    }

    #[test]
    fn ternary_atoms_are_rejected() {
        assert!(parse_program("p(a,b,c).").is_err());
    }

    #[test]
    fn free_rule_twin_must_match() {
        assert!(parse_program("p(X) v not q(X).").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_program("% header\n\n p(a). % trailing\n").unwrap();
        assert_eq!(p.rules().len(), 1);
        assert_eq!(p.rules()[0].line, 3);
    }

    #[test]
    fn inequality_and_naf_literals() {
        let p = parse_program("p(X) :- f(X,Y), f(X,Z), not q(Y), Y != Z.").unwrap();
        let body = &p.rules()[0].body;
        assert!(matches!(body[2], Literal::Naf(_)));
        assert!(matches!(body[3], Literal::Neq(..)));
    }
}
