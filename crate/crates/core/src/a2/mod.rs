//! The second reasoner: builds a completion structure by matching each node
//! against a precompiled unit structure and copying the unit's successors,
//! arcs and dependency arcs into the forest.

use std::collections::HashSet;

use crate::a1::{initial_forest, initial_roots};
use crate::forest::{Forest, GAtom, LitSet, NodeId, Phase};
use crate::search::{
    deepen, next_open, prepare, Driver, EngineError, Expander, Failure, Outcome, RedundancyPolicy,
    Round, Stats, Step, TraceEvent, TRACE_LIMIT,
};
use crate::syntax::{Folp, Lit, Program, UPred};
use crate::units::{compile_prepared, litset, LNode, UAtom, Unit, UnitSet};

/// Expand a node with the unit of the given index.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Expand(NodeId, usize);

struct A2<'p> {
    prog: &'p Folp,
    units: &'p [Unit],
    roots: Vec<LitSet<UPred>>,
    /// Indices of units in the order they are tried.
    order: Vec<usize>,
    f: Forest,
    k: u64,
    bounded_k: bool,
    depth_bound: u32,
    stats: Stats,
    trace: Vec<TraceEvent>,
    cut: bool,
    bounded_clash: bool,
    used: HashSet<usize>,
}

impl<'p> A2<'p> {
    fn new(prog: &'p Folp, units: &'p [Unit], f: Forest, policy: &RedundancyPolicy, depth_bound: u32) -> Self {
        let n = prog.n_upreds();
        // Units that leave fewer obligations behind come first.
        let cost = |u: &Unit| {
            let open: Vec<LNode> = u
                .successors()
                .into_iter()
                .filter(|&s| !u.blocked_by_root(prog, s))
                .collect();
            let paths: usize = open.iter().map(|&s| u.paths(prog, s).len()).sum();
            (open.len(), paths)
        };
        let mut order: Vec<usize> = (0..units.len()).collect();
        order.sort_by_key(|&i| cost(&units[i]));
        A2 {
            prog,
            units,
            roots: units.iter().map(|u| litset(n, &u.root_ct)).collect(),
            order,
            f,
            k: policy.k(n),
            bounded_k: policy.redundancy_is_bounded(n),
            depth_bound,
            stats: Stats::default(),
            trace: vec![],
            cut: false,
            bounded_clash: false,
            used: HashSet::new(),
        }
    }

    fn expand(&mut self, x: NodeId, ui: usize) -> Result<(), Failure> {
        let u = &self.units[ui];
        let f = &mut self.f;
        let clash = Failure::Clash;
        for &l in &u.root_ct {
            f.insert_ulit(x, l).map_err(clash)?;
        }
        let mut child = Vec::with_capacity(u.children.len());
        for ch in &u.children {
            let (c, a) = f.add_child(x);
            self.stats.nodes_created += 1;
            child.push(c);
            for &l in &ch.ct {
                f.insert_ulit(c, l).map_err(clash)?;
            }
            for &l in &ch.arc {
                f.insert_blit(a, l).map_err(clash)?;
            }
        }
        for (c, lits) in &u.const_arcs {
            let cn = f.constant_node(*c).expect("constant tree");
            let a = match f.arc_between(x, cn) {
                Some(a) => a,
                None => f.add_es_arc(x, *c).expect("arc is new"),
            };
            for &l in lits {
                f.insert_blit(a, l).map_err(clash)?;
            }
        }
        for (c, lits) in &u.const_ct {
            let cn = f.constant_node(*c).expect("constant tree");
            let done = f.node(cn).phase == Phase::Done;
            for &l in lits {
                if done && !f.node(cn).ct.contains(l) {
                    return Err(Failure::NoJustification);
                }
                f.insert_ulit(cn, l).map_err(clash)?;
            }
        }
        let node = |f: &Forest, n: LNode| match n {
            LNode::Root => x,
            LNode::Child(i) => child[i as usize],
            LNode::Const(c) => f.constant_node(c).expect("constant tree"),
        };
        let atom = |f: &Forest, a: UAtom| match a {
            UAtom::U(n, p) => GAtom::U(node(f, n), p),
            UAtom::B(n, q) => GAtom::B(f.arc_between(x, node(f, n)).expect("unit arc"), q),
        };
        for &(s, t) in &u.deps {
            let (gs, gt) = (atom(f, s), atom(f, t));
            f.add_dep(gs, gt).map_err(clash)?;
        }
        f.set_phase(x, Phase::Done);
        self.stats.unit_matches += 1;
        if !self.used.insert(ui) {
            self.stats.unit_reuse += 1;
        }
        if f.node(x).parent.is_some() {
            let eq = f.equal_content_ancestors(x);
            if eq as u64 >= self.k {
                if self.trace.len() < TRACE_LIMIT {
                    self.trace.push(TraceEvent::Redundant {
                        node: f.name(x),
                        depth: f.node(x).depth,
                        equal: eq,
                    });
                }
                if self.bounded_k {
                    self.bounded_clash = true;
                }
                return Err(Failure::Redundant);
            }
        }
        Ok(())
    }

    fn candidates(&self, x: NodeId) -> Vec<Expand> {
        let n = self.f.node(x);
        self.order
            .iter()
            .copied()
            .filter(|&i| self.units[i].root == n.constant && n.ct.is_subset(&self.roots[i]))
            .map(|i| Expand(x, i))
            .collect()
    }
}

impl Expander for A2<'_> {
    type Alt = Expand;

    fn forest_mut(&mut self) -> &mut Forest {
        &mut self.f
    }

    fn stats_mut(&mut self) -> &mut Stats {
        &mut self.stats
    }

    fn step(&mut self) -> Step<Expand> {
        let Some(x) = next_open(&self.f) else {
            return Step::Complete;
        };
        if self.f.node(x).phase == Phase::Open {
            if self.f.node(x).parent.is_some() {
                if let Some(y) = self.f.find_blocking_pair(self.prog, x) {
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
        let c = self.candidates(x);
        self.stats.units_tried += c.len() as u64;
        Step::Choice(c)
    }

    fn apply(&mut self, alt: &Expand) -> Result<(), Failure> {
        self.expand(alt.0, alt.1)
    }
}

/// Decides satisfiability of `pred` from a compiled unit set.
pub fn check_sat_with_units(
    program: &Program,
    units: &UnitSet,
    pred: &str,
    policy: &RedundancyPolicy,
) -> Result<Outcome, EngineError> {
    policy.validate()?;
    let prog = prepare(program)?;
    check_sat_prepared(&prog, &units.units, pred, policy)
}

/// Compiles the units of `program` and decides satisfiability of `pred`.
pub fn check_sat(program: &Program, pred: &str, policy: &RedundancyPolicy) -> Result<Outcome, EngineError> {
    policy.validate()?;
    let prog = prepare(program)?;
    let (set, _) = compile_prepared(program, &prog, policy)?;
    check_sat_prepared(&prog, &set.units, pred, policy)
}

pub(crate) fn check_sat_prepared(
    prog: &Folp,
    units: &[Unit],
    pred: &str,
    policy: &RedundancyPolicy,
) -> Result<Outcome, EngineError> {
    let p = prog
        .upred(pred)
        .ok_or_else(|| EngineError::UnknownPredicate(pred.to_string()))?;
    deepen(prog, policy, |bound, stats, trace| {
        let mut round = Round::default();
        for root in initial_roots(prog) {
            let (mut f, eps) = initial_forest(prog, root);
            f.insert_ulit(eps, Lit::pos(p)).expect("fresh node");
            let mut e = A2::new(prog, units, f, policy, bound);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a1::verify;
    use crate::search::Verdict;
    use crate::syntax::parse_program;

    fn run(src: &str, pred: &str) -> (Folp, Outcome) {
        let program = parse_program(src).unwrap();
        let o = check_sat(&program, pred, &RedundancyPolicy::default()).unwrap();
        (prepare(&program).unwrap(), o)
    }

    #[test]
    fn pr_sat_with_final_unit() {
        let (prog, o) = run(include_str!("../../data/pr.folp"), "p");
        assert_eq!(o.verdict, Verdict::Sat);
        let f = o.forest.unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.node(NodeId(1)).phase, Phase::Blocked(NodeId(0)));
        verify(&prog, &f, o.k).unwrap();
    }

    #[test]
    fn ex1_sat_and_verified() {
        let (prog, o) = run(include_str!("../../data/ex1.folp"), "smember");
        assert_eq!(o.verdict, Verdict::Sat);
        verify(&prog, &o.forest.unwrap(), o.k).unwrap();
    }

    #[test]
    fn ex2_redundancy_clash_at_sixth_node() {
        let (_, o) = run(include_str!("../../data/ex2.folp"), "smember");
        assert_eq!(o.verdict, Verdict::Unsat);
        let clash = o
            .trace
            .iter()
            .find(|t| matches!(t, TraceEvent::Redundant { .. }))
            .unwrap();
        assert!(clash.to_string().contains("node 6 with equal content"), "{clash}");
    }

    #[test]
    fn self_negation_has_no_units() {
        let (_, o) = run("p(X) :- not p(X).", "p");
        assert_eq!(o.verdict, Verdict::Unsat);
    }
}
