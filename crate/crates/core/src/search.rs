//! Pieces shared by both reasoners: the redundancy policy, verdicts and
//! statistics, node selection, and a chronological backtracking driver over
//! the trail of a [`Forest`].

use std::fmt;

use crate::forest::{Clash, Forest, NodeId, Phase};
use crate::oracle::Interpretation;
use crate::syntax::{
    eliminate_constraints, validate_folp, CO_PREFIX, CompileError, Folp, Program, Violation,
};

/// `2^p (2^(p^2) - 1) + 3`, saturating at `u64::MAX`.
pub fn default_k(p: usize) -> u64 {
    let p = p as u32;
    let sq = p.saturating_mul(p);
    if sq >= 64 || p >= 64 {
        return u64::MAX;
    }
    let inner = (1u64 << sq) - 1;
    (1u64 << p).checked_mul(inner).and_then(|v| v.checked_add(3)).unwrap_or(u64::MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedundancyPolicy {
    /// Replaces the computed redundancy bound.
    pub override_k: Option<u64>,
    /// Never expand nodes deeper than this.
    pub max_depth: Option<u32>,
    /// Cap on search steps over the whole run.
    pub max_steps: u64,
}

impl Default for RedundancyPolicy {
    fn default() -> Self {
        RedundancyPolicy {
            override_k: None,
            max_depth: None,
            max_steps: 50_000_000,
        }
    }
}

impl RedundancyPolicy {
    pub fn with_k(k: u64) -> Self {
        RedundancyPolicy {
            override_k: Some(k),
            ..Default::default()
        }
    }

    pub fn k(&self, p: usize) -> u64 {
        self.override_k.unwrap_or_else(|| default_k(p))
    }

    /// An override below the computed bound can turn models into clashes.
    pub fn redundancy_is_bounded(&self, p: usize) -> bool {
        self.override_k.is_some_and(|k| k < default_k(p))
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.override_k == Some(0) || self.max_depth == Some(0) {
            return Err(EngineError::BadPolicy);
        }
        Ok(())
    }

    /// Depth bounds tried in turn: 0, 1, 2, 4, ... up to the cap.
    pub(crate) fn depth_schedule(&self, p: usize) -> Vec<u32> {
        let k = self.k(p);
        let structural = k.saturating_mul(1u64.checked_shl(p as u32).unwrap_or(u64::MAX));
        let cap = match self.max_depth {
            Some(d) => (d as u64).min(structural),
            None => structural,
        }
        .min(u32::MAX as u64) as u32;
        let mut out = vec![0];
        let mut l = 1u32;
        while l < cap {
            out.push(l);
            l = l.saturating_mul(2);
        }
        if cap > 0 {
            out.push(cap);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("invalid program: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("`{0}` is not a unary predicate of the program")]
    UnknownPredicate(String),
    #[error("search step budget of {0} exhausted")]
    Budget(u64),
    #[error("redundancy override and depth limit must be at least 1")]
    BadPolicy,
}

/// Validates, eliminates constraints and compiles.
pub fn prepare(p: &Program) -> Result<Folp, EngineError> {
    validate_folp(p).map_err(EngineError::Invalid)?;
    Ok(Folp::compile(&eliminate_constraints(p))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    /// The search was cut by a depth limit or a lowered redundancy bound.
    Unknown,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Sat => 0,
            Verdict::Unsat => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Unknown => "DEPTH_BOUNDED_UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes_created: u64,
    pub choice_points: u64,
    pub backtracks: u64,
    pub max_depth: u32,
    pub steps: u64,
    /// Unit structures offered as match candidates (second reasoner).
    pub units_tried: u64,
    pub unit_matches: u64,
    /// Matches of a unit that had been matched before in the run.
    pub unit_reuse: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// A saturated unblocked node had `equal` ancestors with its content.
    Redundant { node: String, depth: u32, equal: usize },
    /// A node beyond the current depth bound was left unexpanded.
    DepthCut { bound: u32 },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Redundant { node, depth, equal } => write!(
                f,
                "redundancy clash at {node} (depth {depth}): node {} with equal content on its branch",
                equal + 1
            ),
            TraceEvent::DepthCut { bound } => write!(f, "depth bound {bound} reached"),
        }
    }
}

pub(crate) const TRACE_LIMIT: usize = 256;

/// Why the current branch cannot be continued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Failure {
    Clash(Clash),
    /// No rule or unit can justify an obligation.
    NoJustification,
    Redundant,
    DepthCut,
}

pub(crate) enum Step<A> {
    Progress,
    Choice(Vec<A>),
    Fail(Failure),
    Complete,
}

/// A rule engine driven by [`Driver`]. All state that must be restored on
/// backtracking lives in the forest returned by `forest_mut`.
pub(crate) trait Expander {
    type Alt: Clone;
    fn forest_mut(&mut self) -> &mut Forest;
    fn step(&mut self) -> Step<Self::Alt>;
    fn apply(&mut self, alt: &Self::Alt) -> Result<(), Failure>;
    fn stats_mut(&mut self) -> &mut Stats;
    fn note_failure(&mut self, _f: Failure) {}
}

struct ChoicePoint<A> {
    mark: usize,
    alts: Vec<A>,
    next: usize,
}

/// Depth-first chronological backtracking.
pub(crate) struct Driver<E: Expander> {
    pub e: E,
    stack: Vec<ChoicePoint<E::Alt>>,
    max_steps: u64,
}

impl<E: Expander> Driver<E> {
    pub fn new(e: E, max_steps: u64) -> Self {
        Driver {
            e,
            stack: vec![],
            max_steps,
        }
    }

    fn tick(&mut self) -> Result<(), EngineError> {
        let s = self.e.stats_mut();
        s.steps += 1;
        if s.steps > self.max_steps {
            return Err(EngineError::Budget(self.max_steps));
        }
        Ok(())
    }

    /// Moves to the next untried alternative. False when exhausted.
    fn backtrack(&mut self) -> Result<bool, EngineError> {
        loop {
            self.tick()?;
            let Some(cp) = self.stack.last_mut() else {
                return Ok(false);
            };
            if cp.next >= cp.alts.len() {
                self.stack.pop();
                continue;
            }
            let mark = cp.mark;
            let alt = cp.alts[cp.next].clone();
            cp.next += 1;
            self.e.forest_mut().undo_to(mark);
            self.e.stats_mut().backtracks += 1;
            match self.e.apply(&alt) {
                Ok(()) => return Ok(true),
                Err(f) => self.e.note_failure(f),
            }
        }
    }

    /// Runs until a complete structure is reached (true) or the search space
    /// is exhausted (false).
    pub fn run(&mut self) -> Result<bool, EngineError> {
        loop {
            self.tick()?;
            match self.e.step() {
                Step::Progress => {}
                Step::Complete => return Ok(true),
                Step::Fail(f) => {
                    self.e.note_failure(f);
                    if !self.backtrack()? {
                        return Ok(false);
                    }
                }
                Step::Choice(alts) => {
                    if alts.is_empty() {
                        self.e.note_failure(Failure::NoJustification);
                        if !self.backtrack()? {
                            return Ok(false);
                        }
                        continue;
                    }
                    self.e.stats_mut().choice_points += 1;
                    let mark = self.e.forest_mut().mark();
                    let first = alts[0].clone();
                    self.stack.push(ChoicePoint {
                        mark,
                        alts,
                        next: 1,
                    });
                    if let Err(f) = self.e.apply(&first) {
                        self.e.note_failure(f);
                        if !self.backtrack()? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }

    /// Continues after a complete structure, looking for the next one.
    pub fn resume(&mut self) -> Result<bool, EngineError> {
        if !self.backtrack()? {
            return Ok(false);
        }
        self.run()
    }
}

/// Result of a satisfiability check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    /// The complete clash-free structure when satisfiable.
    pub forest: Option<Forest>,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
    pub k: u64,
    /// Depth bound of the last search round.
    pub depth_bound: u32,
}

/// What one bounded search round found.
#[derive(Default)]
pub(crate) struct Round {
    pub found: Option<Forest>,
    /// Some node was left unexpanded because of the depth bound.
    pub cut: bool,
    /// A redundancy clash fired under a lowered bound.
    pub bounded: bool,
}

/// Iterative deepening over the policy's depth schedule. A round without
/// depth cuts settles the answer.
pub(crate) fn deepen(
    prog: &Folp,
    policy: &RedundancyPolicy,
    mut round: impl FnMut(u32, &mut Stats, &mut Vec<TraceEvent>) -> Result<Round, EngineError>,
) -> Result<Outcome, EngineError> {
    let p = prog.n_upreds();
    let k = policy.k(p);
    let mut stats = Stats::default();
    let mut trace = vec![];
    let mut last = 0;
    for bound in policy.depth_schedule(p) {
        last = bound;
        let r = round(bound, &mut stats, &mut trace)?;
        let verdict = if r.found.is_some() {
            Verdict::Sat
        } else if r.cut {
            continue;
        } else if r.bounded {
            Verdict::Unknown
        } else {
            Verdict::Unsat
        };
        return Ok(Outcome {
            verdict,
            forest: r.found,
            stats,
            trace,
            k,
            depth_bound: bound,
        });
    }
    if trace.len() < TRACE_LIMIT {
        trace.push(TraceEvent::DepthCut { bound: last });
    }
    Ok(Outcome {
        verdict: Verdict::Unknown,
        forest: None,
        stats,
        trace,
        k,
        depth_bound: last,
    })
}

/// The next node to work on: roots in order, then descendants of each tree
/// in preorder. Only nodes that are neither finished nor blocked qualify.
/// The open interpretation induced by a blocking-free structure, without
/// the auxiliary predicates introduced for constraints.
pub fn witness(prog: &Folp, f: &Forest) -> Option<Interpretation> {
    let mut i = f.induced_interpretation(prog).ok()?;
    i.atoms.retain(|a| !a.pred.starts_with(CO_PREFIX));
    Some(i)
}

pub(crate) fn next_open(f: &Forest) -> Option<NodeId> {
    let roots = f.roots();
    let open = |x: NodeId| matches!(f.node(x).phase, Phase::Open | Phase::Working);
    if let Some(&r) = roots.iter().find(|&&r| open(r)) {
        return Some(r);
    }
    for &r in roots {
        let mut stack: Vec<NodeId> = f.node(r).children.iter().rev().copied().collect();
        while let Some(x) = stack.pop() {
            let n = f.node(x);
            if open(x) {
                return Some(x);
            }
            stack.extend(n.children.iter().rev().copied());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn redundancy_bound_arithmetic() {
        assert_eq!(default_k(1), 5);
        assert_eq!(default_k(2), 63);
        assert_eq!(default_k(3), 4091);
        assert_eq!(default_k(0), 3);
        assert_eq!(default_k(9), u64::MAX);
    }

    #[test]
    fn depth_schedule_doubles_up_to_cap() {
        let p = RedundancyPolicy::default();
        assert_eq!(p.depth_schedule(1), vec![0, 1, 2, 4, 8, 10]);
        let p = RedundancyPolicy {
            max_depth: Some(3),
            ..Default::default()
        };
        assert_eq!(p.depth_schedule(1), vec![0, 1, 2, 3]);
    }

    #[test]
    fn override_below_bound_is_flagged() {
        assert!(RedundancyPolicy::with_k(3).redundancy_is_bounded(2));
        assert!(!RedundancyPolicy::with_k(5).redundancy_is_bounded(1));
        assert!(RedundancyPolicy::with_k(0).validate().is_err());
    }
}
