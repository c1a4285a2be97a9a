//! The tableau state shared by both reasoners: an extended forest, the
//! content and status of nodes and arcs, and the atom dependency graph.
//!
//! All mutations are logged on a trail so a search can return to any earlier
//! mark with [`Forest::undo_to`]. Node and arc ids are indices that are only
//! ever released by undo, so ids are stable along a search branch.

mod dot;
mod graph;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

pub use dot::to_dot;
pub use graph::{DepGraph, GAtom};

use crate::oracle::{GroundAtom, Interpretation};
use crate::syntax::{BPred, ConstId, Folp, Lit, UPred};

/// Display name of the anonymous tree root.
pub const ANON_ROOT: &str = "_x";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub u32);

/// Index conversion for predicate handles.
pub trait PredIndex: Copy {
    fn index(self) -> usize;
    fn from_index(i: usize) -> Self;
}

impl PredIndex for UPred {
    fn index(self) -> usize {
        self.0 as usize
    }
    fn from_index(i: usize) -> Self {
        UPred(i as u16)
    }
}

impl PredIndex for BPred {
    fn index(self) -> usize {
        self.0 as usize
    }
    fn from_index(i: usize) -> Self {
        BPred(i as u16)
    }
}

/// A set of possibly negated predicates over a fixed alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LitSet<P> {
    pos: FixedBitSet,
    neg: FixedBitSet,
    _p: PhantomData<P>,
}

impl<P: PredIndex> LitSet<P> {
    pub fn new(n: usize) -> Self {
        LitSet {
            pos: FixedBitSet::with_capacity(n),
            neg: FixedBitSet::with_capacity(n),
            _p: PhantomData,
        }
    }

    pub fn from_lits(n: usize, lits: impl IntoIterator<Item = Lit<P>>) -> Self {
        let mut s = Self::new(n);
        for l in lits {
            s.insert(l);
        }
        s
    }

    fn side(&self, positive: bool) -> &FixedBitSet {
        if positive {
            &self.pos
        } else {
            &self.neg
        }
    }

    pub fn contains(&self, l: Lit<P>) -> bool {
        self.side(l.positive).contains(l.pred.index())
    }

    pub fn insert(&mut self, l: Lit<P>) -> bool {
        let side = if l.positive { &mut self.pos } else { &mut self.neg };
        !side.put(l.pred.index())
    }

    pub fn remove(&mut self, l: Lit<P>) {
        let side = if l.positive { &mut self.pos } else { &mut self.neg };
        side.set(l.pred.index(), false);
    }

    pub fn decided(&self, p: P) -> bool {
        self.pos.contains(p.index()) || self.neg.contains(p.index())
    }

    /// Every predicate of the alphabet occurs with some sign.
    pub fn is_total(&self) -> bool {
        let mut u = self.pos.clone();
        u.union_with(&self.neg);
        u.count_ones(..) == u.len()
    }

    pub fn is_contradictory(&self) -> bool {
        !self.pos.is_disjoint(&self.neg)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.pos.is_subset(&other.pos) && self.neg.is_subset(&other.neg)
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_clear() && self.neg.is_clear()
    }

    pub fn len(&self) -> usize {
        self.pos.count_ones(..) + self.neg.count_ones(..)
    }

    pub fn alphabet(&self) -> usize {
        self.pos.len()
    }

    /// Literals ordered by predicate index, positive before negative.
    pub fn lits(&self) -> Vec<Lit<P>> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.pos.len() {
            if self.pos.contains(i) {
                out.push(Lit::pos(P::from_index(i)));
            }
            if self.neg.contains(i) {
                out.push(Lit::neg(P::from_index(i)));
            }
        }
        out
    }

    pub fn positives(&self) -> impl Iterator<Item = P> + '_ {
        self.pos.ones().map(P::from_index)
    }
}

impl<P: PredIndex + fmt::Debug> fmt::Debug for LitSet<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.lits()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Not yet looked at.
    Open,
    /// Checked for blocking and depth, expansion under way.
    Working,
    /// Saturated (first reasoner) or matched against a unit (second).
    Done,
    Blocked(NodeId),
}

#[derive(Clone, Debug)]
pub struct Node {
    pub parent: Option<NodeId>,
    /// Position among the parent's children, starting at 1.
    pub child_no: u32,
    pub depth: u32,
    pub root: NodeId,
    /// Set on constant tree roots.
    pub constant: Option<ConstId>,
    pub children: Vec<NodeId>,
    /// Outgoing arcs, tree arcs and arcs to constants, in creation order.
    pub out: Vec<ArcId>,
    pub ct: LitSet<UPred>,
    pub exp: LitSet<UPred>,
    pub phase: Phase,
}

#[derive(Clone, Debug)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    pub tree: bool,
    pub ct: LitSet<BPred>,
    pub exp: LitSet<BPred>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Clash {
    #[error("contradictory content")]
    Contradiction,
    #[error("cycle in the dependency graph")]
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ForestError {
    #[error("arc from {from} to constant {to} already exists")]
    DuplicateArc { from: String, to: String },
    #[error("no tree for constant {0}")]
    NoSuchConstant(String),
    #[error("node {0} is blocked; the structure is not a finite model")]
    Blocked(String),
}

#[derive(Clone, Debug)]
enum Undo {
    Node,
    Arc,
    ULit(NodeId, Lit<UPred>),
    BLit(ArcId, Lit<BPred>),
    UExp(NodeId, Lit<UPred>, bool),
    BExp(ArcId, Lit<BPred>, bool),
    G(GAtom, GAtom),
    Phase(NodeId, Phase),
}

#[derive(Clone, Debug)]
pub struct Forest {
    nu: usize,
    nb: usize,
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    roots: Vec<NodeId>,
    const_node: Vec<Option<NodeId>>,
    arc_of: HashMap<(NodeId, NodeId), ArcId>,
    g: DepGraph,
    trail: Vec<Undo>,
    const_names: Vec<String>,
}

impl Forest {
    /// An empty forest over the alphabet of `prog`.
    pub fn new(prog: &Folp) -> Self {
        Forest {
            nu: prog.n_upreds(),
            nb: prog.n_bpreds(),
            nodes: vec![],
            arcs: vec![],
            roots: vec![],
            const_node: vec![None; prog.constants.len()],
            arc_of: HashMap::new(),
            g: DepGraph::new(),
            trail: vec![],
            const_names: prog.constants.clone(),
        }
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Node => {
                    let n = self.nodes.pop().unwrap();
                    match n.parent {
                        Some(p) => {
                            self.nodes[p.0 as usize].children.pop();
                        }
                        None => {
                            self.roots.pop();
                            if let Some(c) = n.constant {
                                self.const_node[c.0 as usize] = None;
                            }
                        }
                    }
                }
                Undo::Arc => {
                    let a = self.arcs.pop().unwrap();
                    self.nodes[a.from.0 as usize].out.pop();
                    self.arc_of.remove(&(a.from, a.to));
                }
                Undo::ULit(x, l) => self.nodes[x.0 as usize].ct.remove(l),
                Undo::BLit(a, l) => self.arcs[a.0 as usize].ct.remove(l),
                Undo::UExp(x, l, prev) => {
                    let e = &mut self.nodes[x.0 as usize].exp;
                    if prev {
                        e.insert(l);
                    } else {
                        e.remove(l);
                    }
                }
                Undo::BExp(a, l, prev) => {
                    let e = &mut self.arcs[a.0 as usize].exp;
                    if prev {
                        e.insert(l);
                    } else {
                        e.remove(l);
                    }
                }
                Undo::G(u, v) => self.g.pop(u, v),
                Undo::Phase(x, prev) => self.nodes[x.0 as usize].phase = prev,
            }
        }
    }

    fn push_node(&mut self, node: Node) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node);
        self.trail.push(Undo::Node);
        id
    }

    /// Adds a single-node tree, anonymous or rooted at a constant.
    pub fn add_root(&mut self, constant: Option<ConstId>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.push_node(Node {
            parent: None,
            child_no: 0,
            depth: 0,
            root: id,
            constant,
            children: vec![],
            out: vec![],
            ct: LitSet::new(self.nu),
            exp: LitSet::new(self.nu),
            phase: Phase::Open,
        });
        self.roots.push(id);
        if let Some(c) = constant {
            self.const_node[c.0 as usize] = Some(id);
        }
        id
    }

    fn push_arc(&mut self, from: NodeId, to: NodeId, tree: bool) -> ArcId {
        let id = ArcId(self.arcs.len() as u32);
        self.arcs.push(Arc {
            from,
            to,
            tree,
            ct: LitSet::new(self.nb),
            exp: LitSet::new(self.nb),
        });
        self.nodes[from.0 as usize].out.push(id);
        self.arc_of.insert((from, to), id);
        self.trail.push(Undo::Arc);
        id
    }

    /// Adds the tree child `x.(n+1)` and the arc to it.
    pub fn add_child(&mut self, x: NodeId) -> (NodeId, ArcId) {
        let p = &self.nodes[x.0 as usize];
        let node = Node {
            parent: Some(x),
            child_no: p.children.len() as u32 + 1,
            depth: p.depth + 1,
            root: p.root,
            constant: None,
            children: vec![],
            out: vec![],
            ct: LitSet::new(self.nu),
            exp: LitSet::new(self.nu),
            phase: Phase::Open,
        };
        let id = self.push_node(node);
        self.nodes[x.0 as usize].children.push(id);
        let a = self.push_arc(x, id, true);
        (id, a)
    }

    /// Adds an arc from `x` to the root of the tree of constant `c`.
    pub fn add_es_arc(&mut self, x: NodeId, c: ConstId) -> Result<ArcId, ForestError> {
        let to = self
            .constant_node(c)
            .ok_or_else(|| ForestError::NoSuchConstant(self.const_names[c.0 as usize].clone()))?;
        if self.arc_of.contains_key(&(x, to)) {
            return Err(ForestError::DuplicateArc {
                from: self.name(x),
                to: self.const_names[c.0 as usize].clone(),
            });
        }
        Ok(self.push_arc(x, to, false))
    }

    /// Inserts `l` into `ct(x)` unexpanded. Returns whether it was new.
    pub fn insert_ulit(&mut self, x: NodeId, l: Lit<UPred>) -> Result<bool, Clash> {
        let ct = &mut self.nodes[x.0 as usize].ct;
        if ct.contains(l.complement()) {
            return Err(Clash::Contradiction);
        }
        if !ct.insert(l) {
            return Ok(false);
        }
        self.trail.push(Undo::ULit(x, l));
        Ok(true)
    }

    pub fn insert_blit(&mut self, a: ArcId, l: Lit<BPred>) -> Result<bool, Clash> {
        let ct = &mut self.arcs[a.0 as usize].ct;
        if ct.contains(l.complement()) {
            return Err(Clash::Contradiction);
        }
        if !ct.insert(l) {
            return Ok(false);
        }
        self.trail.push(Undo::BLit(a, l));
        Ok(true)
    }

    pub fn set_uexp(&mut self, x: NodeId, l: Lit<UPred>, on: bool) {
        let e = &mut self.nodes[x.0 as usize].exp;
        let prev = e.contains(l);
        if prev == on {
            return;
        }
        if on {
            e.insert(l);
        } else {
            e.remove(l);
        }
        self.trail.push(Undo::UExp(x, l, prev));
    }

    pub fn set_bexp(&mut self, a: ArcId, l: Lit<BPred>, on: bool) {
        let e = &mut self.arcs[a.0 as usize].exp;
        let prev = e.contains(l);
        if prev == on {
            return;
        }
        if on {
            e.insert(l);
        } else {
            e.remove(l);
        }
        self.trail.push(Undo::BExp(a, l, prev));
    }

    /// Adds `u -> v` to the dependency graph unless it would close a cycle.
    pub fn add_dep(&mut self, u: GAtom, v: GAtom) -> Result<(), Clash> {
        if self.g.contains(u, v) {
            return Ok(());
        }
        if self.g.closes_cycle(u, v) {
            return Err(Clash::Cycle);
        }
        self.g.add(u, v);
        self.trail.push(Undo::G(u, v));
        Ok(())
    }

    pub fn set_phase(&mut self, x: NodeId, phase: Phase) {
        let prev = self.nodes[x.0 as usize].phase;
        if prev != phase {
            self.nodes[x.0 as usize].phase = phase;
            self.trail.push(Undo::Phase(x, prev));
        }
    }

    pub fn node(&self, x: NodeId) -> &Node {
        &self.nodes[x.0 as usize]
    }

    pub fn arc(&self, a: ArcId) -> &Arc {
        &self.arcs[a.0 as usize]
    }

    pub fn graph(&self) -> &DepGraph {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.arcs.len() as u32).map(ArcId)
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn constant_node(&self, c: ConstId) -> Option<NodeId> {
        self.const_node[c.0 as usize]
    }

    pub fn arc_between(&self, x: NodeId, y: NodeId) -> Option<ArcId> {
        self.arc_of.get(&(x, y)).copied()
    }

    /// Not a constant (tree roots of constants are the only named nodes).
    pub fn is_anonymous(&self, x: NodeId) -> bool {
        self.node(x).constant.is_none()
    }

    /// Ancestors of `x` in its tree, nearest first.
    pub fn ancestors(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.node(x).parent, move |y| self.node(*y).parent)
    }

    /// Successor nodes of `x`, following `out` order.
    pub fn successors(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.node(x).out.iter().map(move |a| self.arc(*a).to)
    }

    /// `x` for roots, `x.i.j` for descendants, with `_x` for the anonymous
    /// root.
    pub fn name(&self, x: NodeId) -> String {
        let mut path = Vec::new();
        let mut cur = x;
        while let Some(p) = self.node(cur).parent {
            path.push(self.node(cur).child_no);
            cur = p;
        }
        let mut s = match self.node(cur).constant {
            Some(c) => self.const_names[c.0 as usize].clone(),
            None => ANON_ROOT.to_string(),
        };
        for i in path.iter().rev() {
            s.push('.');
            s.push_str(&i.to_string());
        }
        s
    }

    /// Pairs `(p, q)` with a path from `p(y)` to `q(x)` in the dependency
    /// graph and `q` not free.
    pub fn paths_set(&self, prog: &Folp, y: NodeId, x: NodeId) -> BTreeSet<(UPred, UPred)> {
        let mut out = BTreeSet::new();
        for p in self.node(y).ct.positives() {
            let reach = self.g.reachable(GAtom::U(y, p));
            for a in reach.iter() {
                if let GAtom::U(n, q) = *a {
                    if n == x && !prog.is_ufree(q) {
                        out.insert((p, q));
                    }
                }
            }
        }
        out
    }

    /// The nearest anonymous ancestor `y` of the anonymous node `x` with
    /// `ct(x) ⊆ ct(y)` and an empty `paths_set(y, x)`.
    pub fn find_blocking_pair(&self, prog: &Folp, x: NodeId) -> Option<NodeId> {
        if !self.is_anonymous(x) {
            return None;
        }
        let cx = &self.node(x).ct;
        self.ancestors(x).find(|&y| {
            self.is_anonymous(y) && cx.is_subset(&self.node(y).ct) && self.paths_set(prog, y, x).is_empty()
        })
    }

    /// Number of ancestors whose content equals `ct(x)`.
    pub fn equal_content_ancestors(&self, x: NodeId) -> usize {
        let cx = &self.node(x).ct;
        self.ancestors(x).filter(|y| self.node(*y).ct == *cx).count()
    }

    /// Every unary predicate decided and expanded at `x`, every binary
    /// predicate decided and expanded on every outgoing arc.
    pub fn is_saturated(&self, x: NodeId) -> bool {
        let n = self.node(x);
        n.ct.is_total()
            && n.ct.is_subset(&n.exp)
            && n.out.iter().all(|a| {
                let a = self.arc(*a);
                a.ct.is_total() && a.ct.is_subset(&a.exp)
            })
    }

    /// Whether some node or arc carries both `p` and `not p`.
    pub fn is_contradictory(&self) -> bool {
        self.nodes.iter().any(|n| n.ct.is_contradictory())
            || self.arcs.iter().any(|a| a.ct.is_contradictory())
    }

    /// The open interpretation read off the structure: every node is an
    /// element, every positive content entry an atom.
    pub fn induced_interpretation(&self, prog: &Folp) -> Result<Interpretation, ForestError> {
        let mut universe = Vec::with_capacity(self.nodes.len());
        let mut atoms = BTreeSet::new();
        for x in self.node_ids() {
            if let Phase::Blocked(_) = self.node(x).phase {
                return Err(ForestError::Blocked(self.name(x)));
            }
            let name = self.name(x);
            for p in self.node(x).ct.positives() {
                atoms.insert(GroundAtom {
                    pred: prog.uname(p).to_string(),
                    args: vec![name.clone()],
                });
            }
            universe.push(name);
        }
        for a in self.arc_ids() {
            let arc = self.arc(a);
            for f in arc.ct.positives() {
                atoms.insert(GroundAtom {
                    pred: prog.bname(f).to_string(),
                    args: vec![self.name(arc.from), self.name(arc.to)],
                });
            }
        }
        Ok(Interpretation { universe, atoms })
    }

    pub fn atom_name(&self, prog: &Folp, a: GAtom) -> String {
        match a {
            GAtom::U(x, p) => format!("{}({})", prog.uname(p), self.name(x)),
            GAtom::B(arc, f) => {
                let arc = self.arc(arc);
                format!("{}({},{})", prog.bname(f), self.name(arc.from), self.name(arc.to))
            }
        }
    }

    /// Content of `x` as text, e.g. `{p, not q}`.
    pub fn content_text(&self, prog: &Folp, x: NodeId) -> String {
        let lits: Vec<String> = self.node(x).ct.lits().into_iter().map(|l| prog.ulit_name(l)).collect();
        format!("{{{}}}", lits.join(", "))
    }

    pub fn arc_content_text(&self, prog: &Folp, a: ArcId) -> String {
        let lits: Vec<String> = self.arc(a).ct.lits().into_iter().map(|l| prog.blit_name(l)).collect();
        format!("{{{}}}", lits.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{eliminate_constraints, parse_program};

    fn folp(text: &str) -> Folp {
        Folp::compile(&eliminate_constraints(&parse_program(text).unwrap())).unwrap()
    }

    #[test]
    fn child_numbering_and_names() {
        let p = folp("q(a).\nf(X,Y) v not f(X,Y).");
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        let a = f.add_root(Some(ConstId(0)));
        let (c1, _) = f.add_child(x);
        let (c2, _) = f.add_child(x);
        let (c21, _) = f.add_child(c2);
        assert_eq!(f.name(c1), "_x.1");
        assert_eq!(f.name(c21), "_x.2.1");
        assert_eq!(f.name(a), "a");
        assert_eq!(f.node(c21).depth, 2);
        let arc = f.add_es_arc(x, ConstId(0)).unwrap();
        assert_eq!(f.arc(arc).to, a);
        assert!(!f.arc(arc).tree);
        assert!(matches!(
            f.add_es_arc(x, ConstId(0)),
            Err(ForestError::DuplicateArc { .. })
        ));
    }

    #[test]
    fn undo_restores_ids_and_contents() {
        let p = folp("q(X) :- f(X,Y), q(Y).\nf(X,Y) v not f(X,Y).");
        let q = p.upred("q").unwrap();
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        f.insert_ulit(x, Lit::pos(q)).unwrap();
        let m = f.mark();
        let (c, _) = f.add_child(x);
        f.insert_ulit(c, Lit::pos(q)).unwrap();
        f.add_dep(GAtom::U(x, q), GAtom::U(c, q)).unwrap();
        assert_eq!(f.insert_ulit(x, Lit::neg(q)), Err(Clash::Contradiction));
        f.undo_to(m);
        assert_eq!(f.len(), 1);
        assert!(f.graph().is_empty());
        let (c2, _) = f.add_child(x);
        assert_eq!(c2, c);
        assert_eq!(f.name(c2), "_x.1");
    }

    #[test]
    fn blocking_needs_an_empty_path_set() {
        let p = folp("s(X) :- f(X,Y), s(Y).\nf(X,Y) v not f(X,Y).");
        let s = p.upred("s").unwrap();
        let fp = p.bpred("f").unwrap();
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        let (y, arc) = f.add_child(x);
        f.insert_ulit(x, Lit::pos(s)).unwrap();
        f.insert_ulit(y, Lit::pos(s)).unwrap();
        f.insert_blit(arc, Lit::pos(fp)).unwrap();
        assert_eq!(f.find_blocking_pair(&p, y), Some(x));
        f.add_dep(GAtom::U(x, s), GAtom::B(arc, fp)).unwrap();
        assert!(f.paths_set(&p, x, y).is_empty());
        f.add_dep(GAtom::U(x, s), GAtom::U(y, s)).unwrap();
        assert_eq!(f.paths_set(&p, x, y), [(s, s)].into_iter().collect());
        assert_eq!(f.find_blocking_pair(&p, y), None);
    }

    #[test]
    fn constants_never_block() {
        let p = folp("s(a).\ns(X) :- f(X,Y), s(Y).\nf(X,Y) v not f(X,Y).");
        let mut f = Forest::new(&p);
        let a = f.add_root(Some(ConstId(0)));
        let (y, _) = f.add_child(a);
        assert_eq!(f.find_blocking_pair(&p, y), None);
        assert_eq!(f.find_blocking_pair(&p, a), None);
    }

    #[test]
    fn induced_interpretation_of_single_node() {
        let p = folp("p(X) :- not q(X).\nq(X) :- not p(X).");
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        f.insert_ulit(x, Lit::pos(p.upred("p").unwrap())).unwrap();
        let i = f.induced_interpretation(&p).unwrap();
        assert_eq!(i.to_string(), "element _x\natom p(_x)\n");
        let (y, _) = f.add_child(x);
        f.set_phase(y, Phase::Blocked(x));
        assert!(f.induced_interpretation(&p).is_err());
    }

    #[test]
    fn saturation_requires_totality_and_expansion() {
        let p = folp("p(X) :- not q(X).\nq(X) :- not p(X).");
        let (pp, qq) = (p.upred("p").unwrap(), p.upred("q").unwrap());
        let mut f = Forest::new(&p);
        let x = f.add_root(None);
        f.insert_ulit(x, Lit::pos(pp)).unwrap();
        assert!(!f.is_saturated(x));
        f.insert_ulit(x, Lit::neg(qq)).unwrap();
        assert!(!f.is_saturated(x));
        f.set_uexp(x, Lit::pos(pp), true);
        f.set_uexp(x, Lit::neg(qq), true);
        assert!(f.is_saturated(x));
    }
}
