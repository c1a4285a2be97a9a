//! An independent check that a structure is a clash-free complete
//! completion structure. It recomputes every condition from the contents,
//! arcs and dependency graph, ignoring the expansion bookkeeping.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::forest::{ArcId, Forest, GAtom, LitSet, NodeId, Phase};
use crate::syntax::{Folp, Lit, RuleTerm, UPred};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub at: String,
    pub what: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.what)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Active,
    Blocked(NodeId),
    /// A constant tree that the structure only points to.
    Skipped,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Accept constant roots with empty content and no arcs (unit
    /// structures leave them unexpanded).
    pub allow_bare_constants: bool,
    /// Skip the redundancy condition.
    pub ignore_redundancy: bool,
}

/// Checks a complete structure for the redundancy bound `k`.
pub fn verify(prog: &Folp, f: &Forest, k: u64) -> Result<(), Vec<Violation>> {
    verify_with(prog, f, k, VerifyOptions::default())
}

pub fn verify_with(prog: &Folp, f: &Forest, k: u64, opts: VerifyOptions) -> Result<(), Vec<Violation>> {
    let mut v = Checker {
        prog,
        f,
        status: HashMap::new(),
        errs: vec![],
    };
    v.run(k, opts);
    if v.errs.is_empty() {
        Ok(())
    } else {
        Err(v.errs)
    }
}

struct Checker<'a> {
    prog: &'a Folp,
    f: &'a Forest,
    status: HashMap<NodeId, Status>,
    errs: Vec<Violation>,
}

impl Checker<'_> {
    fn err(&mut self, at: String, what: impl Into<String>) {
        self.errs.push(Violation { at, what: what.into() });
    }

    fn run(&mut self, k: u64, opts: VerifyOptions) {
        let f = self.f;
        for x in f.node_ids() {
            if f.node(x).ct.is_contradictory() {
                self.err(f.name(x), "contradictory content");
            }
        }
        for a in f.arc_ids() {
            if f.arc(a).ct.is_contradictory() {
                self.err(self.arc_name(a), "contradictory content");
            }
        }
        if f.graph().has_cycle() {
            self.err("G".into(), "dependency graph has a cycle");
        }
        for x in f.node_ids() {
            let st = self.classify(x, opts);
            if let Some(p) = f.node(x).parent {
                if self.status.get(&p) != Some(&Status::Active) {
                    self.err(f.name(x), "child of a node that is not expanded");
                }
            }
            if let Some(s) = st {
                self.status.insert(x, s);
            }
        }
        for x in f.node_ids() {
            if self.status.get(&x) != Some(&Status::Active) {
                continue;
            }
            self.check_node(x);
            if !opts.ignore_redundancy && f.node(x).parent.is_some() {
                let eq = f
                    .ancestors(x)
                    .filter(|&y| f.node(y).ct == f.node(x).ct)
                    .count();
                if eq as u64 >= k {
                    self.err(f.name(x), format!("{eq} ancestors with equal content"));
                }
            }
        }
    }

    fn arc_name(&self, a: ArcId) -> String {
        let arc = self.f.arc(a);
        format!("({},{})", self.f.name(arc.from), self.f.name(arc.to))
    }

    fn classify(&mut self, x: NodeId, opts: VerifyOptions) -> Option<Status> {
        let f = self.f;
        let n = f.node(x);
        if let Phase::Blocked(y) = n.phase {
            if !self.blocks(y, x) {
                self.err(f.name(x), format!("not blocked by {}", f.name(y)));
            }
            return Some(Status::Blocked(y));
        }
        if opts.allow_bare_constants && n.constant.is_some() && n.ct.is_empty() && n.out.is_empty() {
            return Some(Status::Skipped);
        }
        if n.ct.is_total() {
            return Some(Status::Active);
        }
        if n.parent.is_some() {
            if let Some(y) = f.ancestors(x).find(|&y| self.blocks(y, x)) {
                return Some(Status::Blocked(y));
            }
        }
        self.err(f.name(x), "content is not total and the node is not blocked");
        None
    }

    /// `y` is an anonymous ancestor of the anonymous `x` with a superset of
    /// its content and no dependency path from `y` to a non-free atom of `x`.
    fn blocks(&self, y: NodeId, x: NodeId) -> bool {
        let f = self.f;
        if f.node(x).constant.is_some() || f.node(y).constant.is_some() {
            return false;
        }
        if !f.ancestors(x).any(|a| a == y) || !f.node(x).ct.is_subset(&f.node(y).ct) {
            return false;
        }
        let mut seen: HashSet<GAtom> = HashSet::new();
        let mut stack: Vec<GAtom> = f.node(y).ct.positives().map(|p| GAtom::U(y, p)).collect();
        while let Some(a) = stack.pop() {
            for &b in f.graph().successors(a) {
                if let GAtom::U(n, q) = b {
                    if n == x && !self.prog.is_ufree(q) {
                        return false;
                    }
                }
                if seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        true
    }

    fn eff(&self, n: NodeId) -> Option<&LitSet<UPred>> {
        match self.status.get(&n) {
            Some(Status::Active) => Some(&self.f.node(n).ct),
            Some(Status::Blocked(y)) => Some(&self.f.node(*y).ct),
            _ => None,
        }
    }

    fn utrue(&self, n: NodeId, l: Lit<UPred>) -> bool {
        self.eff(n).is_some_and(|c| c.contains(l))
    }

    fn ufalse(&self, n: NodeId, l: Lit<UPred>) -> bool {
        self.eff(n).is_some_and(|c| c.contains(l.complement()))
    }

    fn node_of(&self, t: RuleTerm, succs: &[NodeId]) -> Vec<NodeId> {
        match t {
            RuleTerm::Var => succs.to_vec(),
            RuleTerm::Const(c) => self.f.constant_node(c).into_iter().collect(),
        }
    }

    fn matches(&self, t: RuleTerm, x: NodeId) -> bool {
        match t {
            RuleTerm::Var => true,
            RuleTerm::Const(c) => self.f.constant_node(c) == Some(x),
        }
    }

    /// Ground instances of the successor part of unary rule `ri` at `x`.
    fn instances(&self, ri: usize, x: NodeId) -> Vec<Vec<NodeId>> {
        let r = &self.prog.unary_rules[ri];
        let succs: Vec<NodeId> = self.f.successors(x).collect();
        let mut out: Vec<Vec<NodeId>> = vec![vec![]];
        for s in &r.succ {
            let cands = self.node_of(s.term, &succs);
            out = out
                .into_iter()
                .flat_map(|inst| {
                    cands.iter().map(move |&n| {
                        let mut v = inst.clone();
                        v.push(n);
                        v
                    })
                })
                .collect();
        }
        out.retain(|inst| r.neq.iter().all(|&(a, b)| inst[a] != inst[b]));
        out
    }

    /// Truth of the body of unary rule `ri` at `x` under `inst`: Some(true)
    /// when every literal holds, Some(false) when one fails, None when some
    /// literal cannot be evaluated.
    fn ubody(&self, ri: usize, x: NodeId, inst: &[NodeId]) -> Option<bool> {
        let r = &self.prog.unary_rules[ri];
        let f = self.f;
        let mut unknown = false;
        for &l in &r.beta {
            if f.node(x).ct.contains(l.complement()) {
                return Some(false);
            }
            unknown |= !f.node(x).ct.contains(l);
        }
        for (s, &n) in r.succ.iter().zip(inst) {
            match f.arc_between(x, n) {
                Some(a) => {
                    for &l in &s.gamma {
                        if f.arc(a).ct.contains(l.complement()) {
                            return Some(false);
                        }
                        unknown |= !f.arc(a).ct.contains(l);
                    }
                }
                None => {
                    if s.gamma.iter().any(|l| l.positive) {
                        return Some(false);
                    }
                }
            }
            for &l in &s.delta {
                if self.ufalse(n, l) {
                    return Some(false);
                }
                unknown |= !self.utrue(n, l);
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    /// Positive body atoms of an instance as dependency graph vertices.
    fn upos_atoms(&self, ri: usize, x: NodeId, inst: &[NodeId]) -> Option<Vec<GAtom>> {
        let r = &self.prog.unary_rules[ri];
        let mut out: Vec<GAtom> = r.beta.iter().filter(|l| l.positive).map(|l| GAtom::U(x, l.pred)).collect();
        for (s, &n) in r.succ.iter().zip(inst) {
            let a = self.f.arc_between(x, n);
            for l in s.gamma.iter().filter(|l| l.positive) {
                out.push(GAtom::B(a?, l.pred));
            }
            out.extend(s.delta.iter().filter(|l| l.positive).map(|l| GAtom::U(n, l.pred)));
        }
        Some(out)
    }

    fn check_node(&mut self, x: NodeId) {
        let f = self.f;
        let prog = self.prog;
        for l in f.node(x).ct.lits() {
            let rules: Vec<usize> = (0..prog.unary_rules.len())
                .filter(|&ri| {
                    let r = &prog.unary_rules[ri];
                    r.head == l.pred && self.matches(r.s, x)
                })
                .collect();
            if l.positive {
                if prog.is_ufree(l.pred) {
                    continue;
                }
                let head = GAtom::U(x, l.pred);
                let ok = rules.iter().any(|&ri| {
                    prog.unary_rules[ri].free
                        || self.instances(ri, x).iter().any(|inst| {
                            self.ubody(ri, x, inst) == Some(true)
                                && self
                                    .upos_atoms(ri, x, inst)
                                    .is_some_and(|atoms| atoms.iter().all(|&a| f.graph().contains(head, a)))
                        })
                });
                if !ok {
                    self.err(f.name(x), format!("{} is not justified", prog.uname(l.pred)));
                }
            } else {
                for &ri in &rules {
                    if prog.unary_rules[ri].free {
                        continue;
                    }
                    for inst in self.instances(ri, x) {
                        if self.ubody(ri, x, &inst) != Some(false) {
                            self.err(
                                f.name(x),
                                format!("not {} but a rule body is not refuted", prog.uname(l.pred)),
                            );
                        }
                    }
                }
            }
        }
        for &a in &f.node(x).out {
            self.check_arc(a);
            let arc = f.arc(a);
            if arc.tree && arc.ct.positives().next().is_none() {
                self.err(self.arc_name(a), "tree arc without a positive binary atom");
            }
        }
        // Atoms towards constants that no arc carries are false; no rule may
        // derive them.
        for r in &prog.binary_rules {
            let RuleTerm::Const(c) = r.t else { continue };
            let Some(cn) = f.constant_node(c) else { continue };
            if r.free || !self.matches(r.s, x) || f.arc_between(x, cn).is_some() {
                continue;
            }
            if r.gamma.iter().any(|l| l.positive) {
                continue;
            }
            let beta_true = r.beta.iter().all(|&l| f.node(x).ct.contains(l));
            let delta_true = r.delta.iter().all(|&l| self.utrue(cn, l));
            if beta_true && delta_true {
                self.err(
                    f.name(x),
                    format!("{}({},{}) is derivable but absent", prog.bname(r.head), f.name(x), f.name(cn)),
                );
            }
        }
    }

    fn check_arc(&mut self, a: ArcId) {
        let f = self.f;
        let prog = self.prog;
        let arc = f.arc(a);
        if !arc.ct.is_total() {
            self.err(self.arc_name(a), "arc content is not total");
        }
        for l in arc.ct.lits() {
            let rules: Vec<_> = prog
                .binary_rules
                .iter()
                .filter(|r| r.head == l.pred && self.matches(r.s, arc.from) && self.matches(r.t, arc.to))
                .collect();
            let body = |r: &crate::syntax::BinaryRule| -> Option<bool> {
                let mut unknown = false;
                for &b in &r.beta {
                    if f.node(arc.from).ct.contains(b.complement()) {
                        return Some(false);
                    }
                    unknown |= !f.node(arc.from).ct.contains(b);
                }
                for &g in &r.gamma {
                    if arc.ct.contains(g.complement()) {
                        return Some(false);
                    }
                    unknown |= !arc.ct.contains(g);
                }
                for &d in &r.delta {
                    if self.ufalse(arc.to, d) {
                        return Some(false);
                    }
                    unknown |= !self.utrue(arc.to, d);
                }
                if unknown {
                    None
                } else {
                    Some(true)
                }
            };
            if l.positive {
                if prog.is_bfree(l.pred) {
                    continue;
                }
                let head = GAtom::B(a, l.pred);
                let ok = rules.iter().any(|r| {
                    if r.free {
                        return true;
                    }
                    if body(r) != Some(true) {
                        return false;
                    }
                    let deps = r
                        .beta
                        .iter()
                        .filter(|b| b.positive)
                        .map(|b| GAtom::U(arc.from, b.pred))
                        .chain(r.gamma.iter().filter(|g| g.positive).map(|g| GAtom::B(a, g.pred)))
                        .chain(r.delta.iter().filter(|d| d.positive).map(|d| GAtom::U(arc.to, d.pred)));
                    deps.into_iter().all(|d| f.graph().contains(head, d))
                });
                if !ok {
                    self.err(self.arc_name(a), format!("{} is not justified", prog.bname(l.pred)));
                }
            } else {
                if rules.iter().any(|r| !r.free && body(r) != Some(false)) {
                    self.err(
                        self.arc_name(a),
                        format!("not {} but a rule body is not refuted", prog.bname(l.pred)),
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::prepare;
    use crate::syntax::parse_program;

    fn setup() -> (Folp, Forest, NodeId) {
        let p = prepare(&parse_program("p(X) :- f(X,Y), not p(Y).\nf(X,Y) v not f(X,Y).").unwrap()).unwrap();
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        (p, f, x)
    }

    #[test]
    fn accepts_two_node_model() {
        let (p, mut f, x) = setup();
        let (pp, ff) = (p.upred("p").unwrap(), p.bpred("f").unwrap());
        let (c, a) = f.add_child(x);
        f.insert_ulit(x, Lit::pos(pp)).unwrap();
        f.insert_ulit(c, Lit::neg(pp)).unwrap();
        f.insert_blit(a, Lit::pos(ff)).unwrap();
        f.add_dep(GAtom::U(x, pp), GAtom::B(a, ff)).unwrap();
        assert_eq!(verify(&p, &f, 5), Ok(()));
    }

    #[test]
    fn rejects_missing_dependency_and_partial_content() {
        let (p, mut f, x) = setup();
        let (pp, ff) = (p.upred("p").unwrap(), p.bpred("f").unwrap());
        let (c, a) = f.add_child(x);
        f.insert_ulit(x, Lit::pos(pp)).unwrap();
        f.insert_ulit(c, Lit::neg(pp)).unwrap();
        f.insert_blit(a, Lit::pos(ff)).unwrap();
        let errs = verify(&p, &f, 5).unwrap_err();
        assert!(errs.iter().any(|e| e.what.contains("not justified")), "{errs:?}");
        let (_, mut g, y) = setup();
        g.insert_ulit(y, Lit::pos(pp)).unwrap();
        assert!(verify(&p, &g, 5).is_err());
    }

    #[test]
    fn rejects_unrefuted_negation() {
        let (p, mut f, x) = setup();
        let (pp, ff) = (p.upred("p").unwrap(), p.bpred("f").unwrap());
        let (c, a) = f.add_child(x);
        f.insert_ulit(x, Lit::neg(pp)).unwrap();
        f.insert_ulit(c, Lit::neg(pp)).unwrap();
        f.insert_blit(a, Lit::pos(ff)).unwrap();
        let errs = verify(&p, &f, 5).unwrap_err();
        assert!(errs.iter().any(|e| e.at == "_x"), "{errs:?}");
    }
}
