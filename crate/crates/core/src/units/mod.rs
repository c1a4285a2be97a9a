//! Unit completion structures: a root expanded one level deep together with
//! its direct successors, the arcs to them and the dependency arcs between
//! their atoms. The second reasoner assembles models from a precompiled set
//! of these.

mod cache;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

pub use cache::{load, parse_cache, render_cache, save, CacheError, CACHE_VERSION};

use crate::a1::{initial_forest, Mode, A1};
use crate::forest::{Forest, GAtom, LitSet, NodeId, Phase};
use crate::search::{prepare, Driver, EngineError, RedundancyPolicy};
use crate::syntax::{BPred, ConstId, Folp, Lit, Program, UPred};

/// A node of a unit structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LNode {
    Root,
    /// The i-th child, from 0.
    Child(u32),
    Const(ConstId),
}

/// An atom of a unit structure. Binary atoms sit on the arc from the root
/// to the given node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UAtom {
    U(LNode, UPred),
    B(LNode, BPred),
}

impl UAtom {
    fn node(self) -> LNode {
        match self {
            UAtom::U(n, _) | UAtom::B(n, _) => n,
        }
    }

    fn relabel(self, f: impl Fn(LNode) -> LNode) -> UAtom {
        match self {
            UAtom::U(n, p) => UAtom::U(f(n), p),
            UAtom::B(n, q) => UAtom::B(f(n), q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitChild {
    pub ct: Vec<Lit<UPred>>,
    /// Content of the tree arc from the root.
    pub arc: Vec<Lit<BPred>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    /// None for an anonymous root.
    pub root: Option<ConstId>,
    pub root_ct: Vec<Lit<UPred>>,
    pub children: Vec<UnitChild>,
    /// Arcs from the root to constant trees.
    pub const_arcs: Vec<(ConstId, Vec<Lit<BPred>>)>,
    /// Non-empty contents of constant nodes other than the root.
    pub const_ct: Vec<(ConstId, Vec<Lit<UPred>>)>,
    pub deps: Vec<(UAtom, UAtom)>,
}

fn subset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.contains(x))
}

impl Unit {
    /// Reads the unit rooted at `r` off a forest.
    pub(crate) fn from_forest(f: &Forest, r: NodeId) -> Unit {
        let mut label: HashMap<NodeId, LNode> = HashMap::new();
        label.insert(r, LNode::Root);
        let rn = f.node(r);
        let mut children = vec![];
        for (i, &c) in rn.children.iter().enumerate() {
            label.insert(c, LNode::Child(i as u32));
            let a = f.arc_between(r, c).expect("tree arc");
            children.push(UnitChild {
                ct: f.node(c).ct.lits(),
                arc: f.arc(a).ct.lits(),
            });
        }
        let mut const_ct = vec![];
        for &root in f.roots() {
            if let (Some(c), true) = (f.node(root).constant, root != r) {
                label.insert(root, LNode::Const(c));
                if !f.node(root).ct.is_empty() {
                    const_ct.push((c, f.node(root).ct.lits()));
                }
            }
        }
        let mut const_arcs = vec![];
        for &a in &rn.out {
            let arc = f.arc(a);
            if let Some(c) = f.node(arc.to).constant {
                const_arcs.push((c, arc.ct.lits()));
            }
        }
        const_arcs.sort();
        const_ct.sort();
        let atom = |g: GAtom| match g {
            GAtom::U(n, p) => UAtom::U(label[&n], p),
            GAtom::B(a, q) => {
                debug_assert_eq!(f.arc(a).from, r);
                UAtom::B(label[&f.arc(a).to], q)
            }
        };
        let mut deps: Vec<(UAtom, UAtom)> = f.graph().arcs().into_iter().map(|(u, v)| (atom(u), atom(v))).collect();
        deps.sort();
        Unit {
            root: rn.constant,
            root_ct: rn.ct.lits(),
            children,
            const_arcs,
            const_ct,
            deps,
        }
    }

    /// Sorts children by content, arc content and incident dependency
    /// arcs, so isomorphic units become equal.
    pub fn canonical(mut self) -> Unit {
        type Key = (Vec<Lit<UPred>>, Vec<Lit<BPred>>, Vec<(UAtom, UAtom)>);
        const ME: LNode = LNode::Child(u32::MAX);
        let keys: Vec<Key> = (0..self.children.len())
            .map(|i| {
                let me = LNode::Child(i as u32);
                let sub = |n: LNode| if n == me { ME } else { n };
                let mut inc: Vec<(UAtom, UAtom)> = self
                    .deps
                    .iter()
                    .filter(|(u, v)| u.node() == me || v.node() == me)
                    .map(|(u, v)| (u.relabel(sub), v.relabel(sub)))
                    .collect();
                inc.sort();
                (self.children[i].ct.clone(), self.children[i].arc.clone(), inc)
            })
            .collect();
        let mut order: Vec<usize> = (0..self.children.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut new_of = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new as u32;
        }
        let rel = |n: LNode| match n {
            LNode::Child(i) => LNode::Child(new_of[i as usize]),
            n => n,
        };
        self.children = order.iter().map(|&i| self.children[i].clone()).collect();
        self.deps = self.deps.iter().map(|(u, v)| (u.relabel(rel), v.relabel(rel))).collect();
        self.deps.sort();
        self
    }

    /// Successor nodes: children, then constants the root points to or
    /// constrains.
    pub fn successors(&self) -> Vec<LNode> {
        let mut out: Vec<LNode> = (0..self.children.len() as u32).map(LNode::Child).collect();
        let mut cs: BTreeSet<ConstId> = self.const_arcs.iter().map(|(c, _)| *c).collect();
        cs.extend(self.const_ct.iter().map(|(c, _)| *c));
        out.extend(cs.into_iter().map(LNode::Const));
        out
    }

    pub fn ct(&self, n: LNode) -> &[Lit<UPred>] {
        match n {
            LNode::Root => &self.root_ct,
            LNode::Child(i) => &self.children[i as usize].ct,
            LNode::Const(c) => self
                .const_ct
                .iter()
                .find(|(d, _)| *d == c)
                .map(|(_, v)| v.as_slice())
                .unwrap_or(&[]),
        }
    }

    pub fn arc_ct(&self, n: LNode) -> &[Lit<BPred>] {
        match n {
            LNode::Root => &[],
            LNode::Child(i) => &self.children[i as usize].arc,
            LNode::Const(c) => self
                .const_arcs
                .iter()
                .find(|(d, _)| *d == c)
                .map(|(_, v)| v.as_slice())
                .unwrap_or(&[]),
        }
    }

    /// Pairs `(p, q)` with a dependency path from `p` at the root to a
    /// non-free `q` at `n`.
    pub fn paths(&self, prog: &Folp, n: LNode) -> BTreeSet<(UPred, UPred)> {
        let mut succ: HashMap<UAtom, Vec<UAtom>> = HashMap::new();
        for &(u, v) in &self.deps {
            succ.entry(u).or_default().push(v);
        }
        let mut out = BTreeSet::new();
        for l in self.root_ct.iter().filter(|l| l.positive) {
            let mut seen: HashSet<UAtom> = HashSet::new();
            let mut stack = vec![UAtom::U(LNode::Root, l.pred)];
            while let Some(a) = stack.pop() {
                for &b in succ.get(&a).map(|v| v.as_slice()).unwrap_or(&[]) {
                    if seen.insert(b) {
                        if let UAtom::U(m, q) = b {
                            if m == n && !prog.is_ufree(q) {
                                out.insert((l.pred, q));
                            }
                        }
                        stack.push(b);
                    }
                }
            }
        }
        out
    }

    /// A child whose content is within the root's and that no root atom
    /// reaches through the dependency graph, so the root can block it.
    pub fn blocked_by_root(&self, prog: &Folp, n: LNode) -> bool {
        self.root.is_none()
            && matches!(n, LNode::Child(_))
            && subset(self.ct(n), &self.root_ct)
            && self.paths(prog, n).is_empty()
    }

    /// The unit ends a branch: every child is blocked by the root and no
    /// constant node is constrained.
    pub fn is_final(&self, prog: &Folp) -> bool {
        self.const_ct.iter().all(|(_, ct)| ct.is_empty())
            && (0..self.children.len() as u32).all(|i| self.blocked_by_root(prog, LNode::Child(i)))
    }

    /// Rebuilds the unit as a forest, with children blocked by the root
    /// where possible. Returns the forest and the root.
    pub fn to_forest(&self, prog: &Folp) -> (Forest, NodeId) {
        let (mut f, r) = initial_forest(prog, self.root);
        let mut node: HashMap<LNode, NodeId> = HashMap::new();
        node.insert(LNode::Root, r);
        for c in prog.all_constants() {
            if let Some(n) = f.constant_node(c) {
                if n != r {
                    node.insert(LNode::Const(c), n);
                }
            }
        }
        for l in &self.root_ct {
            f.insert_ulit(r, *l).expect("consistent unit");
        }
        for (i, ch) in self.children.iter().enumerate() {
            let (c, a) = f.add_child(r);
            node.insert(LNode::Child(i as u32), c);
            for l in &ch.ct {
                f.insert_ulit(c, *l).expect("consistent unit");
            }
            for l in &ch.arc {
                f.insert_blit(a, *l).expect("consistent unit");
            }
        }
        for (c, lits) in &self.const_arcs {
            let a = f.add_es_arc(r, *c).expect("one arc per constant");
            for l in lits {
                f.insert_blit(a, *l).expect("consistent unit");
            }
        }
        for (c, lits) in &self.const_ct {
            for l in lits {
                f.insert_ulit(node[&LNode::Const(*c)], *l).expect("consistent unit");
            }
        }
        let atom = |f: &Forest, a: UAtom| match a {
            UAtom::U(n, p) => GAtom::U(node[&n], p),
            UAtom::B(n, q) => GAtom::B(f.arc_between(r, node[&n]).expect("arc"), q),
        };
        for &(u, v) in &self.deps {
            let (gu, gv) = (atom(&f, u), atom(&f, v));
            f.add_dep(gu, gv).expect("acyclic unit");
        }
        f.set_phase(r, Phase::Done);
        for i in 0..self.children.len() as u32 {
            if self.blocked_by_root(prog, LNode::Child(i)) {
                f.set_phase(node[&LNode::Child(i)], Phase::Blocked(r));
            }
        }
        (f, r)
    }

    /// Human readable one-line summary.
    pub fn describe(&self, prog: &Folp) -> String {
        let lits = |v: &[Lit<UPred>]| v.iter().map(|l| prog.ulit_name(*l)).collect::<Vec<_>>().join(", ");
        let mut s = format!(
            "root {} {{{}}}",
            self.root.map(|c| prog.cname(c)).unwrap_or(crate::forest::ANON_ROOT),
            lits(&self.root_ct)
        );
        for ch in &self.children {
            let _ = write!(s, "; child {{{}}}", lits(&ch.ct));
        }
        let _ = write!(s, "; {} deps", self.deps.len());
        s
    }
}

/// Per-successor data compared by the redundancy test, computed once per
/// unit.
struct Profile<'u> {
    unit: &'u Unit,
    succ: Vec<SuccInfo<'u>>,
}

struct SuccInfo<'u> {
    node: LNode,
    ct: &'u [Lit<UPred>],
    arc: &'u [Lit<BPred>],
    paths: BTreeSet<(UPred, UPred)>,
    blocked: bool,
}

impl<'u> Profile<'u> {
    fn new(prog: &Folp, unit: &'u Unit) -> Self {
        let succ = unit
            .successors()
            .into_iter()
            .map(|n| SuccInfo {
                node: n,
                ct: unit.ct(n),
                arc: unit.arc_ct(n),
                paths: unit.paths(prog, n),
                blocked: unit.blocked_by_root(prog, n),
            })
            .collect();
        Profile { unit, succ }
    }
}

/// Whether `uc1` is redundant with respect to `uc2`: same root and root
/// content, and the non-blocked successors of `uc2` embed into those of
/// `uc1` with smaller content, arc content and path sets, at least one of
/// them strictly or with some successor of `uc1` left over.
pub fn is_redundant(prog: &Folp, uc1: &Unit, uc2: &Unit) -> bool {
    same_root(uc1, uc2) && redundant(&Profile::new(prog, uc1), &Profile::new(prog, uc2))
}

fn same_root(uc1: &Unit, uc2: &Unit) -> bool {
    uc1.root == uc2.root && uc1.root_ct == uc2.root_ct
}

fn redundant(p1: &Profile, p2: &Profile) -> bool {
    if !same_root(p1.unit, p2.unit) {
        return false;
    }
    // Candidate images (indices into p1.succ) with a strictness flag.
    let mut cands: Vec<Vec<(usize, bool)>> = vec![];
    for s in p2.succ.iter().filter(|s| !s.blocked) {
        let mut v = vec![];
        for (ti, t) in p1.succ.iter().enumerate() {
            let ok_kind = match (s.node, t.node) {
                (LNode::Const(a), LNode::Const(b)) => a == b,
                (LNode::Child(_), LNode::Child(_)) => true,
                _ => false,
            };
            if ok_kind && subset(s.ct, t.ct) && subset(s.arc, t.arc) && s.paths.is_subset(&t.paths) {
                let strict = s.ct.len() < t.ct.len() || s.arc.len() < t.arc.len() || s.paths.len() < t.paths.len();
                v.push((ti, strict));
            }
        }
        if v.is_empty() {
            return false;
        }
        cands.push(v);
    }
    let have: Vec<usize> = (0..p1.succ.len()).filter(|&i| !p1.succ[i].blocked).collect();
    fn search(i: usize, cands: &[Vec<(usize, bool)>], used: &mut Vec<usize>, strict: bool, have: &[usize]) -> bool {
        if i == cands.len() {
            return strict || have.iter().any(|h| !used.contains(h));
        }
        for &(t, s) in &cands[i] {
            if used.contains(&t) {
                continue;
            }
            used.push(t);
            if search(i + 1, cands, used, strict || s, have) {
                return true;
            }
            used.pop();
        }
        false
    }
    search(0, &cands, &mut vec![], false, &have)
}

/// Drops units redundant with respect to a unit that is kept. Units are
/// considered in the given order.
pub fn prune(prog: &Folp, units: &[Unit]) -> Vec<Unit> {
    let profiles: Vec<Profile> = units.iter().map(|u| Profile::new(prog, u)).collect();
    let mut alive = vec![true; units.len()];
    for i in 0..units.len() {
        let dominated = (0..units.len()).any(|j| j != i && alive[j] && redundant(&profiles[i], &profiles[j]));
        if dominated {
            alive[i] = false;
        }
    }
    units.iter().zip(alive).filter(|(_, a)| *a).map(|(u, _)| u.clone()).collect()
}

/// Drops units that can never take part in a match, repeating until no
/// more go. A successor that is not blocked by the root must later be
/// matched or blocked by an anonymous node, whose content is then the root
/// content of some unit; the content given to a constant must likewise fit
/// inside the root content of a unit for that constant.
pub fn matchable(prog: &Folp, units: &[Unit]) -> Vec<Unit> {
    let mut alive = vec![true; units.len()];
    loop {
        let roots: Vec<(Option<ConstId>, &[Lit<UPred>])> = units
            .iter()
            .zip(&alive)
            .filter(|(_, a)| **a)
            .map(|(u, _)| (u.root, &u.root_ct[..]))
            .collect();
        let covered = |root: Option<ConstId>, ct: &[Lit<UPred>]| {
            roots.iter().any(|(r, rc)| *r == root && subset(ct, rc))
        };
        let mut changed = false;
        for (i, u) in units.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            let children_ok = (0..u.children.len() as u32)
                .map(LNode::Child)
                .all(|c| u.blocked_by_root(prog, c) || covered(None, u.ct(c)));
            let consts_ok = u.const_ct.iter().all(|(c, ct)| ct.is_empty() || covered(Some(*c), ct));
            if !(children_ok && consts_ok) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return units.iter().zip(alive).filter(|(_, a)| *a).map(|(u, _)| u.clone()).collect();
        }
    }
}

/// All unit structures up to isomorphism, in canonical order: anonymous
/// roots first, then one root per constant.
pub fn enumerate(prog: &Folp, policy: &RedundancyPolicy) -> Result<Vec<Unit>, EngineError> {
    let mut out: BTreeSet<Unit> = BTreeSet::new();
    let roots: Vec<Option<ConstId>> = std::iter::once(None).chain(prog.all_constants().map(Some)).collect();
    let mut steps = 0;
    for root in roots {
        let (f, r) = initial_forest(prog, root);
        let mut e = A1::new(prog, f, Mode::Unit(r), policy, u32::MAX);
        e.stats.steps = steps;
        let mut d = Driver::new(e, policy.max_steps);
        let mut found = d.run()?;
        while found {
            out.insert(Unit::from_forest(&d.e.f, r).canonical());
            found = d.resume()?;
        }
        steps = d.e.stats.steps;
    }
    Ok(out.into_iter().collect())
}

/// A compiled unit set for one program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSet {
    /// SHA-256 of the program's canonical text, hex encoded.
    pub fingerprint: String,
    pub units: Vec<Unit>,
}

/// Fingerprint of a program as stored in caches.
pub fn fingerprint(p: &Program) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(p.canonical_text().as_bytes()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileReport {
    pub enumerated: usize,
    /// Units with a successor that no unit can ever expand.
    pub unmatchable: usize,
    /// Units dropped as redundant among the matchable ones.
    pub redundant: usize,
    pub retained: usize,
    pub finals: usize,
}

/// Enumerates and prunes the unit structures of `program`.
pub fn compile(program: &Program, policy: &RedundancyPolicy) -> Result<(UnitSet, CompileReport), EngineError> {
    let prog = prepare(program)?;
    compile_prepared(program, &prog, policy)
}

pub(crate) fn compile_prepared(
    program: &Program,
    prog: &Folp,
    policy: &RedundancyPolicy,
) -> Result<(UnitSet, CompileReport), EngineError> {
    let all = enumerate(prog, policy)?;
    let live = matchable(prog, &all);
    let units = prune(prog, &live);
    let report = CompileReport {
        enumerated: all.len(),
        unmatchable: all.len() - live.len(),
        redundant: live.len() - units.len(),
        retained: units.len(),
        finals: units.iter().filter(|u| u.is_final(prog)).count(),
    };
    Ok((
        UnitSet {
            fingerprint: fingerprint(program),
            units,
        },
        report,
    ))
}

/// Content as a bit set, for comparisons against forest nodes.
pub(crate) fn litset<P: crate::forest::PredIndex>(n: usize, lits: &[Lit<P>]) -> LitSet<P> {
    LitSet::from_lits(n, lits.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a1::verify::{verify_with, VerifyOptions};
    use crate::syntax::parse_program;

    const PR: &str = include_str!("../../data/pr.folp");

    fn setup() -> (Program, Folp, Vec<Unit>) {
        let program = parse_program(PR).unwrap();
        let prog = prepare(&program).unwrap();
        let units = enumerate(&prog, &RedundancyPolicy::default()).unwrap();
        (program, prog, units)
    }

    fn names(prog: &Folp, v: &[Lit<UPred>]) -> Vec<String> {
        v.iter().map(|l| prog.ulit_name(*l)).collect()
    }

    /// The three one-child anonymous units with root content {p, not q}.
    fn pr_units(prog: &Folp, units: &[Unit]) -> (Unit, Unit, Unit) {
        let pick = |child: &[&str], deps: usize| {
            units
                .iter()
                .find(|u| {
                    u.root.is_none()
                        && names(prog, &u.root_ct) == ["p", "not q"]
                        && u.children.len() == 1
                        && names(prog, &u.children[0].ct) == child
                        && u.deps.len() == deps
                })
                .cloned()
                .unwrap_or_else(|| panic!("no unit with child {child:?}"))
        };
        // r4: f, not q(Y), p(Y); r3: f, p(Y); r2: f, not q(Y).
        (pick(&["p", "not q"], 2), pick(&["p"], 2), pick(&["p", "not q"], 1))
    }

    #[test]
    fn pr_units_and_their_order() {
        let (_, prog, units) = setup();
        assert!(units.iter().all(|u| !names(&prog, &u.root_ct).contains(&"not p".to_string())));
        let (uc1, uc2, uc3) = pr_units(&prog, &units);
        assert!(uc3.is_final(&prog));
        assert!(!uc1.is_final(&prog));
        assert!(!uc2.is_final(&prog));
        assert!(uc3.paths(&prog, LNode::Child(0)).is_empty());
        assert!(is_redundant(&prog, &uc1, &uc3));
        assert!(is_redundant(&prog, &uc2, &uc3));
        assert!(is_redundant(&prog, &uc1, &uc2));
        assert!(!is_redundant(&prog, &uc3, &uc1));
        assert!(!is_redundant(&prog, &uc3, &uc2));
        let kept = prune(&prog, &[uc1, uc2, uc3.clone()]);
        assert_eq!(kept, vec![uc3]);
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let (_, prog, units) = setup();
        for u in &units {
            let mut r = u.clone();
            r.children.reverse();
            let n = r.children.len() as u32;
            let flip = |x: LNode| match x {
                LNode::Child(i) => LNode::Child(n - 1 - i),
                x => x,
            };
            r.deps = r.deps.iter().map(|(a, b)| (a.relabel(flip), b.relabel(flip))).collect();
            assert_eq!(r.canonical(), *u, "{}", u.describe(&prog));
        }
    }

    #[test]
    fn final_units_are_models() {
        let (_, prog, units) = setup();
        let k = RedundancyPolicy::default().k(prog.n_upreds());
        let mut n = 0;
        for u in units.iter().filter(|u| u.is_final(&prog)) {
            let (f, _) = u.to_forest(&prog);
            let opts = VerifyOptions {
                allow_bare_constants: true,
                ..Default::default()
            };
            verify_with(&prog, &f, k, opts).unwrap();
            n += 1;
        }
        assert!(n > 0);
    }
}
