//! The first reasoner: a tableau that builds a completion structure node by
//! node with expansion rules, blocking, and a redundancy bound on repeated
//! node contents.

pub mod verify;

use crate::forest::{ArcId, Clash, Forest, GAtom, NodeId, Phase};
use crate::search::{
    deepen, next_open, prepare, EngineError, Expander, Failure, Outcome, RedundancyPolicy, Round,
    Stats, Step, TraceEvent, Driver, TRACE_LIMIT,
};
use crate::syntax::{BPred, BinaryRule, ConstId, Folp, Lit, Program, RuleTerm, UPred, UnaryRule};

pub use verify::{verify, Violation as VerifyViolation};

/// Where a successor of a rule instance goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    Node(NodeId),
    /// The j-th new child of the expanded node.
    Fresh(usize),
}

/// A way to make one body literal of a rule instance false.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Refute {
    Node(NodeId, Lit<UPred>),
    Arc(ArcId, Lit<BPred>),
    /// Create the arc to a constant tree carrying the literal.
    NewArc(NodeId, ConstId, Lit<BPred>),
}

#[derive(Clone, Debug)]
pub(crate) enum Alt {
    Rule {
        x: NodeId,
        rule: usize,
        targets: Vec<Target>,
    },
    /// Justified by a choice rule.
    Trivial { x: NodeId, p: UPred },
    BRule { arc: ArcId, rule: usize },
    BTrivial { arc: ArcId, f: BPred },
    Refute(Refute),
    Decide(NodeId, Lit<UPred>),
    DecideArc(ArcId, Lit<BPred>),
}

enum Refutation {
    Done,
    Options(Vec<Refute>),
}

/// Matches a rule term against a node.
pub(crate) fn term_matches(f: &Forest, t: RuleTerm, x: NodeId) -> bool {
    match t {
        RuleTerm::Var => true,
        RuleTerm::Const(c) => f.constant_node(c) == Some(x),
    }
}

fn clash(c: Clash) -> Failure {
    Failure::Clash(c)
}

/// State of a literal against some content: true, false, or open.
fn state<P: crate::forest::PredIndex>(ct: &crate::forest::LitSet<P>, l: Lit<P>) -> Option<bool> {
    if ct.contains(l) {
        Some(true)
    } else if ct.contains(l.complement()) {
        Some(false)
    } else {
        None
    }
}

/// The rule application machinery shared by both reasoners.
pub(crate) struct Rules<'p> {
    pub prog: &'p Folp,
    implicit: Vec<(RuleTerm, ConstId)>,
}

impl<'p> Rules<'p> {
    pub fn new(prog: &'p Folp) -> Self {
        Rules {
            prog,
            implicit: prog.implicit_arcs().collect(),
        }
    }

    /// After a new arc out of `x`, negative literals at `x` must be
    /// refuted again over the new successor.
    fn rearm(f: &mut Forest, x: NodeId) {
        for l in f.node(x).ct.lits() {
            if !l.positive && f.node(x).exp.contains(l) {
                f.set_uexp(x, l, false);
            }
        }
    }

    /// Adds an arc to a constant tree that some binary rule may derive
    /// without any positive arc premise.
    fn implicit_arc(&self, f: &mut Forest, x: NodeId) -> bool {
        for &(s, c) in &self.implicit {
            if !term_matches(f, s, x) {
                continue;
            }
            let Some(cn) = f.constant_node(c) else { continue };
            if f.arc_between(x, cn).is_none() {
                f.add_es_arc(x, c).expect("arc is new");
                Self::rearm(f, x);
                return true;
            }
        }
        false
    }

    /// The expansion steps for one open obligation at `x`, or None when all
    /// literals at `x` and on its arcs are expanded.
    fn expand_obligations(&self, f: &mut Forest, x: NodeId) -> Option<Step<Alt>> {
        if self.implicit_arc(f, x) {
            return Some(Step::Progress);
        }
        let n = f.node(x);
        for l in n.ct.lits() {
            if n.exp.contains(l) {
                continue;
            }
            return Some(if l.positive {
                self.expand_upos(f, x, l.pred)
            } else {
                self.expand_uneg(f, x, l.pred)
            });
        }
        for &a in &f.node(x).out {
            let arc = f.arc(a);
            for l in arc.ct.lits() {
                if arc.exp.contains(l) {
                    continue;
                }
                return Some(if l.positive {
                    self.expand_bpos(f, a, l.pred)
                } else {
                    self.expand_bneg(f, a, l.pred)
                });
            }
        }
        None
    }

    /// Choices that decide the next undecided predicate at `x` or on its
    /// arcs, negative first.
    fn choose(&self, f: &Forest, x: NodeId) -> Option<Step<Alt>> {
        for p in self.prog.all_upreds() {
            if !f.node(x).ct.decided(p) {
                return Some(Step::Choice(vec![
                    Alt::Decide(x, Lit::neg(p)),
                    Alt::Decide(x, Lit::pos(p)),
                ]));
            }
        }
        for &a in &f.node(x).out {
            for q in self.prog.all_bpreds() {
                if !f.arc(a).ct.decided(q) {
                    return Some(Step::Choice(vec![
                        Alt::DecideArc(a, Lit::neg(q)),
                        Alt::DecideArc(a, Lit::pos(q)),
                    ]));
                }
            }
        }
        None
    }

    fn expand_upos(&self, f: &mut Forest, x: NodeId, p: UPred) -> Step<Alt> {
        if self.prog.is_ufree(p) {
            f.set_uexp(x, Lit::pos(p), true);
            return Step::Progress;
        }
        let mut alts = vec![];
        for (ri, r) in self.prog.unary_rules.iter().enumerate() {
            if r.head != p || !term_matches(f, r.s, x) {
                continue;
            }
            if r.free {
                alts.push(Alt::Trivial { x, p });
                continue;
            }
            for targets in self.groundings(f, x, r) {
                alts.push(Alt::Rule { x, rule: ri, targets });
            }
        }
        Step::Choice(alts)
    }

    /// Assignments of the successor positions of `r` at `x`: existing
    /// successors, new children (up to renaming), and constant trees.
    fn groundings(&self, f: &Forest, x: NodeId, r: &UnaryRule) -> Vec<Vec<Target>> {
        let succs: Vec<NodeId> = f.successors(x).collect();
        let consts: Vec<NodeId> = self
            .prog
            .all_constants()
            .filter_map(|c| f.constant_node(c))
            .filter(|n| !succs.contains(n))
            .collect();
        let mut out = vec![];
        let mut cur = vec![];
        Self::ground_rec(f, r, &succs, &consts, 0, &mut cur, &mut out);
        out
    }

    fn ground_rec(
        f: &Forest,
        r: &UnaryRule,
        succs: &[NodeId],
        consts: &[NodeId],
        fresh: usize,
        cur: &mut Vec<Target>,
        out: &mut Vec<Vec<Target>>,
    ) {
        let i = cur.len();
        if i == r.succ.len() {
            out.push(cur.clone());
            return;
        }
        let cands: Vec<Target> = match r.succ[i].term {
            RuleTerm::Const(c) => match f.constant_node(c) {
                Some(n) => vec![Target::Node(n)],
                None => vec![],
            },
            RuleTerm::Var => succs
                .iter()
                .map(|&n| Target::Node(n))
                .chain((0..=fresh).map(Target::Fresh))
                .chain(consts.iter().map(|&n| Target::Node(n)))
                .collect(),
        };
        for t in cands {
            let distinct = r
                .neq
                .iter()
                .all(|&(a, b)| !((a == i && b < i && cur[b] == t) || (b == i && a < i && cur[a] == t)));
            if !distinct {
                continue;
            }
            let nf = match t {
                Target::Fresh(j) if j == fresh => fresh + 1,
                _ => fresh,
            };
            cur.push(t);
            Self::ground_rec(f, r, succs, consts, nf, cur, out);
            cur.pop();
        }
    }

    fn expand_uneg(&self, f: &mut Forest, x: NodeId, p: UPred) -> Step<Alt> {
        for r in self.prog.urules(p) {
            if r.free || !term_matches(f, r.s, x) {
                continue;
            }
            for inst in self.instances(f, x, r) {
                match self.refute_unary(f, x, r, &inst) {
                    Refutation::Done => {}
                    Refutation::Options(o) if o.is_empty() => {
                        return Step::Fail(Failure::NoJustification)
                    }
                    Refutation::Options(o) => {
                        return Step::Choice(o.into_iter().map(Alt::Refute).collect())
                    }
                }
            }
        }
        f.set_uexp(x, Lit::neg(p), true);
        Step::Progress
    }

    /// Ground instances of `r` at `x` whose successors are existing
    /// successors or constant trees.
    fn instances(&self, f: &Forest, x: NodeId, r: &UnaryRule) -> Vec<Vec<NodeId>> {
        let succs: Vec<NodeId> = f.successors(x).collect();
        let mut out: Vec<Vec<NodeId>> = vec![vec![]];
        for (i, s) in r.succ.iter().enumerate() {
            let cands: Vec<NodeId> = match s.term {
                RuleTerm::Const(c) => f.constant_node(c).into_iter().collect(),
                RuleTerm::Var => succs.clone(),
            };
            let mut next = vec![];
            for inst in &out {
                for &n in &cands {
                    let ok = r.neq.iter().all(|&(a, b)| {
                        !((a == i && b < i && inst[b] == n) || (b == i && a < i && inst[a] == n))
                    });
                    if ok {
                        let mut v = inst.clone();
                        v.push(n);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn refute_unary(&self, f: &Forest, x: NodeId, r: &UnaryRule, inst: &[NodeId]) -> Refutation {
        let mut opts = vec![];
        for &l in &r.beta {
            match state(&f.node(x).ct, l) {
                Some(false) => return Refutation::Done,
                None => opts.push(Refute::Node(x, l.complement())),
                Some(true) => {}
            }
        }
        for (s, &n) in r.succ.iter().zip(inst) {
            match f.arc_between(x, n) {
                None => {
                    if s.needs_arc() {
                        return Refutation::Done;
                    }
                    let c = f.node(n).constant.expect("only constant trees lack arcs");
                    for &l in &s.gamma {
                        opts.push(Refute::NewArc(x, c, l.complement()));
                    }
                }
                Some(a) => {
                    for &l in &s.gamma {
                        match state(&f.arc(a).ct, l) {
                            Some(false) => return Refutation::Done,
                            None => opts.push(Refute::Arc(a, l.complement())),
                            Some(true) => {}
                        }
                    }
                }
            }
            for &l in &s.delta {
                match state(&f.node(n).ct, l) {
                    Some(false) => return Refutation::Done,
                    None => opts.push(Refute::Node(n, l.complement())),
                    Some(true) => {}
                }
            }
        }
        Refutation::Options(opts)
    }

    fn brule_matches(f: &Forest, r: &BinaryRule, a: ArcId) -> bool {
        let arc = f.arc(a);
        term_matches(f, r.s, arc.from) && term_matches(f, r.t, arc.to)
    }

    fn expand_bpos(&self, f: &mut Forest, a: ArcId, q: BPred) -> Step<Alt> {
        if self.prog.is_bfree(q) {
            f.set_bexp(a, Lit::pos(q), true);
            return Step::Progress;
        }
        let mut alts = vec![];
        for (ri, r) in self.prog.binary_rules.iter().enumerate() {
            if r.head != q || !Self::brule_matches(f, r, a) {
                continue;
            }
            alts.push(if r.free {
                Alt::BTrivial { arc: a, f: q }
            } else {
                Alt::BRule { arc: a, rule: ri }
            });
        }
        Step::Choice(alts)
    }

    fn expand_bneg(&self, f: &mut Forest, a: ArcId, q: BPred) -> Step<Alt> {
        for r in self.prog.brules(q) {
            if r.free || !Self::brule_matches(f, r, a) {
                continue;
            }
            let arc = f.arc(a);
            let mut opts = vec![];
            let mut refuted = false;
            let checks = r
                .beta
                .iter()
                .map(|&l| (state(&f.node(arc.from).ct, l), Refute::Node(arc.from, l.complement())))
                .chain(
                    r.gamma
                        .iter()
                        .map(|&l| (state(&arc.ct, l), Refute::Arc(a, l.complement()))),
                )
                .chain(
                    r.delta
                        .iter()
                        .map(|&l| (state(&f.node(arc.to).ct, l), Refute::Node(arc.to, l.complement()))),
                );
            for (st, opt) in checks {
                match st {
                    Some(false) => {
                        refuted = true;
                        break;
                    }
                    None => opts.push(opt),
                    Some(true) => {}
                }
            }
            if refuted {
                continue;
            }
            if opts.is_empty() {
                return Step::Fail(Failure::NoJustification);
            }
            return Step::Choice(opts.into_iter().map(Alt::Refute).collect());
        }
        f.set_bexp(a, Lit::neg(q), true);
        Step::Progress
    }

    /// Inserts `l` at `n`, with a dependency from `head` if positive.
    fn put_u(f: &mut Forest, head: GAtom, n: NodeId, l: Lit<UPred>) -> Result<(), Failure> {
        f.insert_ulit(n, l).map_err(clash)?;
        if l.positive {
            f.add_dep(head, GAtom::U(n, l.pred)).map_err(clash)?;
        }
        Ok(())
    }

    fn put_b(f: &mut Forest, head: GAtom, a: ArcId, l: Lit<BPred>) -> Result<(), Failure> {
        f.insert_blit(a, l).map_err(clash)?;
        if l.positive {
            f.add_dep(head, GAtom::B(a, l.pred)).map_err(clash)?;
        }
        Ok(())
    }

    pub fn apply(&self, f: &mut Forest, stats: &mut Stats, alt: &Alt) -> Result<(), Failure> {
        match *alt {
            Alt::Rule {
                x,
                rule,
                ref targets,
            } => {
                let r = &self.prog.unary_rules[rule];
                let head = GAtom::U(x, r.head);
                let mut fresh: Vec<NodeId> = vec![];
                let mut new_arc = false;
                let mut nodes = Vec::with_capacity(targets.len());
                for t in targets {
                    nodes.push(match *t {
                        Target::Node(n) => n,
                        Target::Fresh(j) => {
                            while fresh.len() <= j {
                                let (c, _) = f.add_child(x);
                                stats.nodes_created += 1;
                                new_arc = true;
                                fresh.push(c);
                            }
                            fresh[j]
                        }
                    });
                }
                for &l in &r.beta {
                    Self::put_u(f, head, x, l)?;
                }
                for (s, &n) in r.succ.iter().zip(&nodes) {
                    if !s.gamma.is_empty() {
                        let a = match f.arc_between(x, n) {
                            Some(a) => a,
                            None => {
                                new_arc = true;
                                let c = f.node(n).constant.expect("only constant trees lack arcs");
                                f.add_es_arc(x, c).expect("arc is new")
                            }
                        };
                        for &l in &s.gamma {
                            Self::put_b(f, head, a, l)?;
                        }
                    }
                    for &l in &s.delta {
                        Self::put_u(f, head, n, l)?;
                    }
                }
                f.set_uexp(x, Lit::pos(r.head), true);
                if new_arc {
                    Self::rearm(f, x);
                }
            }
            Alt::Trivial { x, p } => f.set_uexp(x, Lit::pos(p), true),
            Alt::BRule { arc, rule } => {
                let r = &self.prog.binary_rules[rule];
                let head = GAtom::B(arc, r.head);
                let (from, to) = (f.arc(arc).from, f.arc(arc).to);
                for &l in &r.beta {
                    Self::put_u(f, head, from, l)?;
                }
                for &l in &r.gamma {
                    Self::put_b(f, head, arc, l)?;
                }
                for &l in &r.delta {
                    Self::put_u(f, head, to, l)?;
                }
                f.set_bexp(arc, Lit::pos(r.head), true);
            }
            Alt::BTrivial { arc, f: q } => f.set_bexp(arc, Lit::pos(q), true),
            Alt::Refute(Refute::Node(n, l)) | Alt::Decide(n, l) => {
                f.insert_ulit(n, l).map_err(clash)?;
            }
            Alt::Refute(Refute::Arc(a, l)) | Alt::DecideArc(a, l) => {
                f.insert_blit(a, l).map_err(clash)?;
            }
            Alt::Refute(Refute::NewArc(x, c, l)) => {
                let a = f.add_es_arc(x, c).expect("arc is new");
                f.insert_blit(a, l).map_err(clash)?;
                Self::rearm(f, x);
            }
        }
        Ok(())
    }
}

/// Expands a node fully: obligations first, then guesses.
pub(crate) fn saturate_step(rules: &Rules, f: &mut Forest, x: NodeId) -> Option<Step<Alt>> {
    if let Some(s) = rules.expand_obligations(f, x) {
        return Some(s);
    }
    rules.choose(f, x)
}

/// What the first reasoner is building.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// A complete structure for the whole program.
    Check,
    /// Only the root of the given tree is expanded; used to enumerate units.
    Unit(NodeId),
}

pub(crate) struct A1<'p> {
    pub rules: Rules<'p>,
    pub f: Forest,
    pub mode: Mode,
    pub k: u64,
    pub bounded_k: bool,
    pub depth_bound: u32,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
    pub cut: bool,
    pub bounded_clash: bool,
}

/// The initial structure: one tree per constant and, unless `root` is a
/// constant, an anonymous tree first. Returns the forest and the root node.
pub(crate) fn initial_forest(prog: &Folp, root: Option<ConstId>) -> (Forest, NodeId) {
    let mut f = Forest::new(prog);
    let eps = match root {
        None => f.add_root(None),
        Some(c) => f.add_root(Some(c)),
    };
    for c in prog.all_constants() {
        if Some(c) != root {
            f.add_root(Some(c));
        }
    }
    (f, eps)
}

impl<'p> A1<'p> {
    pub fn new(prog: &'p Folp, f: Forest, mode: Mode, policy: &RedundancyPolicy, depth_bound: u32) -> Self {
        let p = prog.n_upreds();
        A1 {
            rules: Rules::new(prog),
            f,
            mode,
            k: policy.k(p),
            bounded_k: policy.redundancy_is_bounded(p),
            depth_bound,
            stats: Stats::default(),
            trace: vec![],
            cut: false,
            bounded_clash: false,
        }
    }

    fn trace(&mut self, e: TraceEvent) {
        if self.trace.len() < TRACE_LIMIT {
            self.trace.push(e);
        }
    }

    fn finish_node(&mut self, x: NodeId) -> Step<Alt> {
        self.f.set_phase(x, Phase::Done);
        debug_assert!(self
            .f
            .node(x)
            .children
            .iter()
            .all(|&c| { !self.f.arc(self.f.arc_between(x, c).unwrap()).ct.positives().next().is_none() }));
        if self.mode == Mode::Check && self.f.node(x).parent.is_some() {
            let eq = self.f.equal_content_ancestors(x);
            if eq as u64 >= self.k {
                let node = self.f.name(x);
                let depth = self.f.node(x).depth;
                self.trace(TraceEvent::Redundant { node, depth, equal: eq });
                if self.bounded_k {
                    self.bounded_clash = true;
                }
                return Step::Fail(Failure::Redundant);
            }
        }
        Step::Progress
    }
}

impl Expander for A1<'_> {
    type Alt = Alt;

    fn forest_mut(&mut self) -> &mut Forest {
        &mut self.f
    }

    fn stats_mut(&mut self) -> &mut Stats {
        &mut self.stats
    }

    fn step(&mut self) -> Step<Alt> {
        let x = match self.mode {
            Mode::Unit(r) => {
                if self.f.node(r).phase == Phase::Done {
                    return Step::Complete;
                }
                r
            }
            Mode::Check => match next_open(&self.f) {
                Some(x) => x,
                None => return Step::Complete,
            },
        };
        if self.f.node(x).phase == Phase::Open {
            if self.f.node(x).parent.is_some() {
                if let Some(y) = self.f.find_blocking_pair(self.rules.prog, x) {
                    self.f.set_phase(x, Phase::Blocked(y));
                    return Step::Progress;
                }
                if self.f.node(x).depth > self.depth_bound {
                    self.cut = true;
                    return Step::Fail(Failure::DepthCut);
                }
            }
            self.f.set_phase(x, Phase::Working);
            self.stats.max_depth = self.stats.max_depth.max(self.f.node(x).depth);
            return Step::Progress;
        }
        match saturate_step(&self.rules, &mut self.f, x) {
            Some(s) => s,
            None => self.finish_node(x),
        }
    }

    fn apply(&mut self, alt: &Alt) -> Result<(), Failure> {
        self.rules.apply(&mut self.f, &mut self.stats, alt)
    }
}

fn start_pred(prog: &Folp, pred: &str) -> Result<UPred, EngineError> {
    prog.upred(pred).ok_or_else(|| EngineError::UnknownPredicate(pred.to_string()))
}

/// Decides whether `pred` is satisfiable with respect to `program`.
pub fn check_sat(program: &Program, pred: &str, policy: &RedundancyPolicy) -> Result<Outcome, EngineError> {
    policy.validate()?;
    let prog = prepare(program)?;
    check_sat_compiled(&prog, pred, policy)
}

pub fn check_sat_compiled(prog: &Folp, pred: &str, policy: &RedundancyPolicy) -> Result<Outcome, EngineError> {
    policy.validate()?;
    let p = start_pred(prog, pred)?;
    deepen(prog, policy, |bound, stats, trace| {
        let mut round = Round::default();
        for root in initial_roots(prog) {
            let (mut f, eps) = initial_forest(prog, root);
            f.insert_ulit(eps, Lit::pos(p)).expect("fresh node");
            let mut e = A1::new(prog, f, Mode::Check, policy, bound);
            e.stats = std::mem::take(stats);
            e.trace = std::mem::take(trace);
            let mut d = Driver::new(e, policy.max_steps);
            let found = d.run();
            let e = d.e;
            *stats = e.stats;
            *trace = e.trace;
            round.cut |= e.cut;
            round.bounded |= e.bounded_clash;
            if found? {
                round.found = Some(e.f);
                break;
            }
        }
        Ok(round)
    })
}

/// Choices for the root holding the query: a fresh anonymous node, then
/// each constant.
pub(crate) fn initial_roots(prog: &Folp) -> impl Iterator<Item = Option<ConstId>> {
    std::iter::once(None).chain(prog.all_constants().map(Some))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Verdict;
    use crate::syntax::parse_program;

    const EX1: &str = include_str!("../../data/ex1.folp");
    const EX2: &str = include_str!("../../data/ex2.folp");
    const PR: &str = include_str!("../../data/pr.folp");

    fn prog(src: &str) -> Folp {
        prepare(&parse_program(src).unwrap()).unwrap()
    }

    fn run(src: &str, pred: &str) -> Outcome {
        check_sat(&parse_program(src).unwrap(), pred, &RedundancyPolicy::default()).unwrap()
    }

    #[test]
    fn ex1_finite_witness() {
        let o = run(EX1, "smember");
        assert_eq!(o.verdict, Verdict::Sat);
        let p = prog(EX1);
        let f = o.forest.unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.content_text(&p, NodeId(0)).starts_with("{smember"));
        assert!(verify(&p, &f, o.k).is_ok());
        let m = f.induced_interpretation(&p).unwrap();
        let text = m.to_string();
        assert!(text.contains("atom support(_x,a)"), "{text}");
        assert!(text.contains("atom support(_x,b)"), "{text}");
    }

    #[test]
    fn ex2_needs_infinite_chain() {
        let o = run(EX2, "smember");
        assert_eq!(o.verdict, Verdict::Unsat);
        assert_eq!(o.k, 5);
        assert!(o.trace.iter().any(|t| matches!(t, TraceEvent::Redundant { equal: 5, .. })));
    }

    #[test]
    fn self_negation_unsat() {
        assert_eq!(run("p(X) :- not p(X).", "p").verdict, Verdict::Unsat);
    }

    #[test]
    fn pr_sat_through_blocking() {
        let o = run(PR, "p");
        assert_eq!(o.verdict, Verdict::Sat);
        let f = o.forest.unwrap();
        assert!(f.node_ids().any(|x| matches!(f.node(x).phase, Phase::Blocked(_))));
        assert!(verify(&prog(PR), &f, o.k).is_ok());
        assert_eq!(run(PR, "q").verdict, Verdict::Unsat);
    }

    #[test]
    fn constants_and_unknown_predicate() {
        let o = run("q(a).\np(X) :- f(X,a), q(a).\nf(X,Y) v not f(X,Y).", "p");
        assert_eq!(o.verdict, Verdict::Sat);
        let e = check_sat(&parse_program("q(a).").unwrap(), "zz", &RedundancyPolicy::default());
        assert!(matches!(e, Err(EngineError::UnknownPredicate(_))));
    }

    #[test]
    fn depth_limit_gives_unknown() {
        let pol = RedundancyPolicy {
            max_depth: Some(2),
            ..Default::default()
        };
        let o = check_sat(&parse_program(EX2).unwrap(), "smember", &pol).unwrap();
        assert_eq!(o.verdict, Verdict::Unknown);
    }

    #[test]
    fn lowered_bound_is_not_a_proof() {
        let o = check_sat(&parse_program(EX2).unwrap(), "smember", &RedundancyPolicy::with_k(2)).unwrap();
        assert_eq!(o.verdict, Verdict::Unknown);
        let o = check_sat(&parse_program(EX2).unwrap(), "smember", &RedundancyPolicy::with_k(9)).unwrap();
        assert_eq!(o.verdict, Verdict::Unsat);
    }
}
