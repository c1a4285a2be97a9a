//! Text format for compiled unit sets.
//!
//! ```text
//! folp-units 1
//! fingerprint <sha256 of the program's canonical text>
//! unit _x
//! root {p, not q}
//! child {p, not q} arc {f}
//! const-arc a {f}
//! const a {q}
//! dep p(r) -> f(r,c0)
//! end
//! units 1
//! ```
//!
//! In atoms `r` is the root, `cN` the N-th child and `@a` the tree of
//! constant `a`. Binary atoms always start at the root.

use std::path::Path;

use super::{LNode, UAtom, Unit, UnitChild, UnitSet};
use crate::forest::ANON_ROOT;
use crate::syntax::{BPred, Folp, Lit, Program, UPred};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cannot access cache: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported cache version `{0}`")]
    Version(String),
    #[error("cache was compiled for a different program (fingerprint {found}, expected {expected})")]
    Stale { expected: String, found: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

fn node_text(prog: &Folp, n: LNode) -> String {
    match n {
        LNode::Root => "r".into(),
        LNode::Child(i) => format!("c{i}"),
        LNode::Const(c) => format!("@{}", prog.cname(c)),
    }
}

fn atom_text(prog: &Folp, a: UAtom) -> String {
    match a {
        UAtom::U(n, p) => format!("{}({})", prog.uname(p), node_text(prog, n)),
        UAtom::B(n, q) => format!("{}(r,{})", prog.bname(q), node_text(prog, n)),
    }
}

fn set_text<P: Copy>(v: &[Lit<P>], name: impl Fn(Lit<P>) -> String) -> String {
    format!("{{{}}}", v.iter().map(|l| name(*l)).collect::<Vec<_>>().join(", "))
}

pub fn render_cache(set: &UnitSet, prog: &Folp) -> String {
    let u = |v: &[Lit<UPred>]| set_text(v, |l| prog.ulit_name(l));
    let b = |v: &[Lit<BPred>]| set_text(v, |l| prog.blit_name(l));
    let mut out = format!("folp-units {CACHE_VERSION}\nfingerprint {}\n", set.fingerprint);
    for unit in &set.units {
        let root = unit.root.map(|c| prog.cname(c)).unwrap_or(ANON_ROOT);
        out.push_str(&format!("unit {root}\nroot {}\n", u(&unit.root_ct)));
        for ch in &unit.children {
            out.push_str(&format!("child {} arc {}\n", u(&ch.ct), b(&ch.arc)));
        }
        for (c, lits) in &unit.const_arcs {
            out.push_str(&format!("const-arc {} {}\n", prog.cname(*c), b(lits)));
        }
        for (c, lits) in &unit.const_ct {
            out.push_str(&format!("const {} {}\n", prog.cname(*c), u(lits)));
        }
        for (x, y) in &unit.deps {
            out.push_str(&format!("dep {} -> {}\n", atom_text(prog, *x), atom_text(prog, *y)));
        }
        out.push_str("end\n");
    }
    out.push_str(&format!("units {}\n", set.units.len()));
    out
}

struct Reader<'a> {
    prog: &'a Folp,
    line: usize,
}

impl Reader<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CacheError> {
        Err(CacheError::Syntax {
            line: self.line,
            msg: msg.into(),
        })
    }

    fn set<P: Copy>(&self, text: &str, look: impl Fn(&str) -> Option<P>) -> Result<Vec<Lit<P>>, CacheError> {
        let Some(inner) = text.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')) else {
            return self.err(format!("expected `{{...}}`, found `{text}`"));
        };
        let mut out = vec![];
        for item in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (positive, name) = match item.strip_prefix("not ") {
                Some(n) => (false, n.trim()),
                None => (true, item),
            };
            let Some(pred) = look(name) else {
                return self.err(format!("unknown predicate `{name}`"));
            };
            out.push(Lit { pred, positive });
        }
        Ok(out)
    }

    fn uset(&self, text: &str) -> Result<Vec<Lit<UPred>>, CacheError> {
        self.set(text, |n| self.prog.upred(n))
    }

    fn bset(&self, text: &str) -> Result<Vec<Lit<BPred>>, CacheError> {
        self.set(text, |n| self.prog.bpred(n))
    }

    fn node(&self, t: &str) -> Result<LNode, CacheError> {
        if t == "r" {
            return Ok(LNode::Root);
        }
        if let Some(c) = t.strip_prefix('@') {
            return match self.prog.constant(c) {
                Some(c) => Ok(LNode::Const(c)),
                None => self.err(format!("unknown constant `{c}`")),
            };
        }
        match t.strip_prefix('c').and_then(|i| i.parse().ok()) {
            Some(i) => Ok(LNode::Child(i)),
            None => self.err(format!("bad node `{t}`")),
        }
    }

    fn atom(&self, t: &str) -> Result<UAtom, CacheError> {
        let t = t.trim();
        let Some((pred, rest)) = t.split_once('(') else {
            return self.err(format!("bad atom `{t}`"));
        };
        let Some(args) = rest.strip_suffix(')') else {
            return self.err(format!("bad atom `{t}`"));
        };
        match args.split_once(',') {
            None => match self.prog.upred(pred) {
                Some(p) => Ok(UAtom::U(self.node(args)?, p)),
                None => self.err(format!("unknown predicate `{pred}`")),
            },
            Some((from, to)) => {
                if from != "r" {
                    return self.err("binary atoms must start at the root");
                }
                match self.prog.bpred(pred) {
                    Some(q) => Ok(UAtom::B(self.node(to)?, q)),
                    None => self.err(format!("unknown predicate `{pred}`")),
                }
            }
        }
    }
}

/// Parses a cache without checking its fingerprint.
pub fn parse_cache(text: &str, prog: &Folp) -> Result<UnitSet, CacheError> {
    let mut rd = Reader { prog, line: 0 };
    let mut lines = text.lines();
    let mut next = |rd: &mut Reader| {
        rd.line += 1;
        lines.next()
    };
    match next(&mut rd).and_then(|l| l.strip_prefix("folp-units ")) {
        Some(v) if v.trim() == CACHE_VERSION.to_string() => {}
        Some(v) => return Err(CacheError::Version(v.trim().to_string())),
        None => return rd.err("missing `folp-units` header"),
    }
    let fingerprint = match next(&mut rd).and_then(|l| l.strip_prefix("fingerprint ")) {
        Some(f) => f.trim().to_string(),
        None => return rd.err("missing fingerprint"),
    };
    let mut units = vec![];
    let mut cur: Option<Unit> = None;
    while let Some(line) = next(&mut rd) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        match (kw, cur.as_mut()) {
            ("unit", None) => {
                let root = if rest == ANON_ROOT {
                    None
                } else {
                    match prog.constant(rest) {
                        Some(c) => Some(c),
                        None => return rd.err(format!("unknown constant `{rest}`")),
                    }
                };
                cur = Some(Unit {
                    root,
                    root_ct: vec![],
                    children: vec![],
                    const_arcs: vec![],
                    const_ct: vec![],
                    deps: vec![],
                });
            }
            ("root", Some(u)) => u.root_ct = rd.uset(rest)?,
            ("child", Some(u)) => {
                let Some((ct, arc)) = rest.split_once(" arc ") else {
                    return rd.err("expected `child {...} arc {...}`");
                };
                u.children.push(UnitChild {
                    ct: rd.uset(ct)?,
                    arc: rd.bset(arc)?,
                });
            }
            ("const-arc" | "const", Some(u)) => {
                let Some((name, set)) = rest.split_once(' ') else {
                    return rd.err("expected a constant and a set");
                };
                let Some(c) = prog.constant(name) else {
                    return rd.err(format!("unknown constant `{name}`"));
                };
                if kw == "const" {
                    u.const_ct.push((c, rd.uset(set)?));
                } else {
                    u.const_arcs.push((c, rd.bset(set)?));
                }
            }
            ("dep", Some(u)) => {
                let Some((a, b)) = rest.split_once("->") else {
                    return rd.err("expected `dep a -> b`");
                };
                u.deps.push((rd.atom(a)?, rd.atom(b)?));
            }
            ("end", Some(_)) => units.push(cur.take().unwrap()),
            ("units", None) => {
                if rest.parse::<usize>().ok() != Some(units.len()) {
                    return rd.err(format!("trailer says {rest} units, found {}", units.len()));
                }
                return Ok(UnitSet { fingerprint, units });
            }
            _ => return rd.err(format!("unexpected `{kw}`")),
        }
    }
    rd.err("missing `units` trailer")
}

pub fn save(path: &Path, set: &UnitSet, prog: &Folp) -> Result<(), CacheError> {
    std::fs::write(path, render_cache(set, prog))?;
    Ok(())
}

/// Loads a cache and checks that it belongs to `program`.
pub fn load(path: &Path, program: &Program, prog: &Folp) -> Result<UnitSet, CacheError> {
    let text = std::fs::read_to_string(path)?;
    let expected = super::fingerprint(program);
    // Check the fingerprint before the body, which may name predicates the
    // program lacks.
    let found = text.lines().nth(1).and_then(|l| l.strip_prefix("fingerprint ")).map(str::trim);
    if let Some(found) = found.filter(|f| *f != expected) {
        return Err(CacheError::Stale {
            expected,
            found: found.to_string(),
        });
    }
    parse_cache(&text, prog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{prepare, RedundancyPolicy};
    use crate::syntax::parse_program;

    #[test]
    fn round_trip_and_staleness() {
        let src = include_str!("../../data/pr.folp");
        let program = parse_program(src).unwrap();
        let prog = prepare(&program).unwrap();
        let (set, _) = super::super::compile(&program, &RedundancyPolicy::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pr.units");
        save(&path, &set, &prog).unwrap();
        assert_eq!(load(&path, &program, &prog).unwrap(), set);

        let other = parse_program(&format!("{src}\nq(X) v not q(X).")).unwrap();
        assert!(matches!(load(&path, &other, &prog), Err(CacheError::Stale { .. })));

        let text = render_cache(&set, &prog).replace("folp-units 1", "folp-units 9");
        assert!(matches!(parse_cache(&text, &prog), Err(CacheError::Version(_))));
        let trailer = format!("\nunits {}\n", set.units.len());
        let cut = render_cache(&set, &prog).replace(&trailer, "\nunits 999\n");
        assert!(matches!(parse_cache(&cut, &prog), Err(CacheError::Syntax { .. })));
    }

    #[test]
    fn constant_units_round_trip() {
        let program = parse_program("q(a).\np(X) :- f(X,a), q(a).\nf(X,Y) v not f(X,Y).").unwrap();
        let prog = prepare(&program).unwrap();
        let (set, _) = super::super::compile(&program, &RedundancyPolicy::default()).unwrap();
        let text = render_cache(&set, &prog);
        assert_eq!(parse_cache(&text, &prog).unwrap(), set);
    }
}
