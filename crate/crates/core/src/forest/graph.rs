use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::{ArcId, NodeId};
use crate::syntax::{BPred, UPred};

/// A vertex of the dependency graph: a unary atom on a node or a binary atom
/// on an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GAtom {
    U(NodeId, UPred),
    B(ArcId, BPred),
}

/// Directed graph over atoms with memoized reachability. Arcs are removed in
/// the reverse order of insertion only (the trail guarantees this).
#[derive(Clone, Debug, Default)]
pub struct DepGraph {
    succ: HashMap<GAtom, Vec<GAtom>>,
    edges: HashSet<(GAtom, GAtom)>,
    memo: RefCell<HashMap<GAtom, Rc<HashSet<GAtom>>>>,
}

impl DepGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, u: GAtom, v: GAtom) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Adds `u -> v`; returns false if it was already present.
    pub fn add(&mut self, u: GAtom, v: GAtom) -> bool {
        if !self.edges.insert((u, v)) {
            return false;
        }
        self.succ.entry(u).or_default().push(v);
        self.memo.get_mut().clear();
        true
    }

    pub(crate) fn pop(&mut self, u: GAtom, v: GAtom) {
        self.edges.remove(&(u, v));
        let list = self.succ.get_mut(&u).expect("arc present");
        let last = list.pop();
        debug_assert_eq!(last, Some(v));
        if list.is_empty() {
            self.succ.remove(&u);
        }
        self.memo.get_mut().clear();
    }

    pub fn successors(&self, u: GAtom) -> &[GAtom] {
        self.succ.get(&u).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// All arcs, sorted.
    pub fn arcs(&self) -> Vec<(GAtom, GAtom)> {
        let mut v: Vec<_> = self.edges.iter().copied().collect();
        v.sort();
        v
    }

    /// Atoms reachable from `u` by a non-empty path.
    pub fn reachable(&self, u: GAtom) -> Rc<HashSet<GAtom>> {
        if let Some(r) = self.memo.borrow().get(&u) {
            return r.clone();
        }
        let mut seen = HashSet::new();
        let mut stack: Vec<GAtom> = self.successors(u).to_vec();
        while let Some(a) = stack.pop() {
            if seen.insert(a) {
                stack.extend_from_slice(self.successors(a));
            }
        }
        let r = Rc::new(seen);
        self.memo.borrow_mut().insert(u, r.clone());
        r
    }

    pub fn reaches(&self, from: GAtom, to: GAtom) -> bool {
        self.reachable(from).contains(&to)
    }

    /// Whether adding `u -> v` would close a cycle.
    pub fn closes_cycle(&self, u: GAtom, v: GAtom) -> bool {
        u == v || self.reaches(v, u)
    }

    /// Full directed cycle detection, independent of the memo.
    pub fn has_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        let mut mark: HashMap<GAtom, Mark> = HashMap::new();
        let mut starts: Vec<GAtom> = self.succ.keys().copied().collect();
        starts.sort();
        for s in starts {
            if mark.contains_key(&s) {
                continue;
            }
            let mut stack: Vec<(GAtom, usize)> = vec![(s, 0)];
            mark.insert(s, Mark::Active);
            while let Some((a, i)) = stack.last_mut() {
                let next = self.successors(*a).get(*i).copied();
                *i += 1;
                match next {
                    None => {
                        mark.insert(*a, Mark::Done);
                        stack.pop();
                    }
                    Some(b) => match mark.get(&b) {
                        Some(Mark::Active) => return true,
                        Some(Mark::Done) => {}
                        None => {
                            mark.insert(b, Mark::Active);
                            stack.push((b, 0));
                        }
                    },
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32, p: u16) -> GAtom {
        GAtom::U(NodeId(n), UPred(p))
    }

    #[test]
    fn cycles() {
        let mut g = DepGraph::new();
        assert!(!g.has_cycle());
        g.add(u(0, 0), u(1, 0));
        assert!(!g.has_cycle());
        assert!(g.closes_cycle(u(1, 0), u(0, 0)));
        g.add(u(1, 0), u(0, 0));
        assert!(g.has_cycle());
        g.pop(u(1, 0), u(0, 0));
        assert!(!g.has_cycle());
    }

    #[test]
    fn memo_is_invalidated() {
        let mut g = DepGraph::new();
        g.add(u(0, 0), u(1, 0));
        assert!(!g.reaches(u(0, 0), u(2, 0)));
        g.add(u(1, 0), u(2, 0));
        assert!(g.reaches(u(0, 0), u(2, 0)));
        g.pop(u(1, 0), u(2, 0));
        assert!(!g.reaches(u(0, 0), u(2, 0)));
    }
}
