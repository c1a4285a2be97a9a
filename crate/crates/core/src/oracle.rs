//! Brute-force semantics over finite universes: grounding, the reduct,
//! least models, answer set checks and a bounded search for open answer sets.
//!
//! Everything here works on the surface [`Program`], constraints included,
//! and shares no code with the tableau engines.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::syntax::{Literal, Program, Term};

/// Default cap on the number of ground atoms the bounded search may touch.
pub const DEFAULT_ATOM_BUDGET: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("ground program has {atoms} atoms, over the budget of {budget}")]
    Budget { atoms: usize, budget: usize },
    #[error("rule {0} is not positive and non-disjunctive")]
    NotPositive(usize),
    #[error("universe size {max} is smaller than the {constants} constants of the program")]
    UniverseTooSmall { max: usize, constants: usize },
    #[error("unknown unary predicate `{0}`")]
    UnknownPredicate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub pred: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(pred: impl Into<String>, args: &[&str]) -> Self {
        GroundAtom {
            pred: pred.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.pred, self.args.join(","))
    }
}

/// An open interpretation `(U, M)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Interpretation {
    pub universe: Vec<String>,
    pub atoms: BTreeSet<GroundAtom>,
}

impl Interpretation {
    /// Whether two interpretations coincide after renaming the elements for
    /// which `anonymous` holds. Named elements must match exactly.
    pub fn same_up_to_renaming(&self, other: &Interpretation, anonymous: impl Fn(&str) -> bool) -> bool {
        if self.universe.len() != other.universe.len() || self.atoms.len() != other.atoms.len() {
            return false;
        }
        let (a_anon, a_named): (Vec<&String>, Vec<&String>) =
            self.universe.iter().partition(|e| anonymous(e));
        let (b_anon, b_named): (Vec<&String>, Vec<&String>) =
            other.universe.iter().partition(|e| anonymous(e));
        let a_named: BTreeSet<_> = a_named.into_iter().collect();
        let b_named: BTreeSet<_> = b_named.into_iter().collect();
        if a_named != b_named || a_anon.len() != b_anon.len() {
            return false;
        }
        let mut perm: Vec<usize> = (0..b_anon.len()).collect();
        loop {
            let map: HashMap<&str, &str> = a_anon
                .iter()
                .zip(perm.iter().map(|&i| b_anon[i]))
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let renamed: BTreeSet<GroundAtom> = self
                .atoms
                .iter()
                .map(|at| GroundAtom {
                    pred: at.pred.clone(),
                    args: at
                        .args
                        .iter()
                        .map(|e| map.get(e.as_str()).map(|s| s.to_string()).unwrap_or_else(|| e.clone()))
                        .collect(),
                })
                .collect();
            if renamed == other.atoms {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Witness format: `element` lines then `atom` lines, each block sorted.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut elems = self.universe.clone();
        elems.sort();
        for e in elems {
            writeln!(f, "element {e}")?;
        }
        let mut atoms: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        atoms.sort();
        for a in atoms {
            writeln!(f, "atom {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundRule {
    pub head: Option<GroundAtom>,
    /// `a v not a.`
    pub free: bool,
    pub pos: Vec<GroundAtom>,
    pub neg: Vec<GroundAtom>,
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
            if self.free {
                write!(f, " v not {h}")?;
            }
        }
        let body: Vec<String> = self
            .pos
            .iter()
            .map(|a| a.to_string())
            .chain(self.neg.iter().map(|a| format!("not {a}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        } else if self.head.is_none() {
            write!(f, ":-")?;
        }
        write!(f, ".")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
}

fn rule_vars(r: &crate::syntax::Rule) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let mut note = |t: &Term| {
        if t.is_var() && !vars.iter().any(|v| v == t.name()) {
            vars.push(t.name().to_string());
        }
    };
    if let Some(h) = &r.head {
        h.args.iter().for_each(&mut note);
    }
    for l in &r.body {
        match l {
            Literal::Pos(a) | Literal::Naf(a) => a.args.iter().for_each(&mut note),
            Literal::Neq(s, t) => {
                note(s);
                note(t);
            }
        }
    }
    vars
}

/// All ground instances of `p` over `universe`. Satisfied inequalities are
/// dropped; instances with a violated inequality are dropped entirely.
pub fn ground(p: &Program, universe: &[String]) -> GroundProgram {
    let mut out = Vec::new();
    for r in p.rules() {
        let vars = rule_vars(r);
        let mut assign = vec![0usize; vars.len()];
        loop {
            let val = |t: &Term| -> String {
                match t {
                    Term::Const(c) => c.clone(),
                    Term::Var { name, .. } => {
                        let i = vars.iter().position(|v| v == name).unwrap();
                        universe[assign[i]].clone()
                    }
                }
            };
            let atom = |a: &crate::syntax::Atom| GroundAtom {
                pred: a.pred.clone(),
                args: a.args.iter().map(val).collect(),
            };
            let mut keep = true;
            let (mut pos, mut neg) = (vec![], vec![]);
            for l in &r.body {
                match l {
                    Literal::Pos(a) => pos.push(atom(a)),
                    Literal::Naf(a) => neg.push(atom(a)),
                    Literal::Neq(s, t) => {
                        if val(s) == val(t) {
                            keep = false;
                        }
                    }
                }
            }
            if keep {
                out.push(GroundRule {
                    head: r.head.as_ref().map(atom),
                    free: r.free,
                    pos,
                    neg,
                });
            }
            // odometer over the assignment
            let mut i = 0;
            loop {
                if i == assign.len() {
                    break;
                }
                assign[i] += 1;
                if assign[i] < universe.len() {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == assign.len() || universe.is_empty() {
                break;
            }
        }
    }
    GroundProgram { rules: out }
}

/// The reduct of `gp` with respect to `i`: `head <- pos` for every rule whose
/// negative body is false in `i`; a free rule keeps its head as a fact iff the
/// head is in `i`. Constraints have no head and are left out; they are
/// checked separately by [`is_answer_set`].
pub fn gl_reduct(gp: &GroundProgram, i: &BTreeSet<GroundAtom>) -> GroundProgram {
    let mut rules = Vec::new();
    for r in &gp.rules {
        let Some(h) = &r.head else { continue };
        if r.free {
            if i.contains(h) {
                rules.push(GroundRule {
                    head: Some(h.clone()),
                    free: false,
                    pos: vec![],
                    neg: vec![],
                });
            }
            continue;
        }
        if r.neg.iter().all(|a| !i.contains(a)) {
            rules.push(GroundRule {
                head: Some(h.clone()),
                free: false,
                pos: r.pos.clone(),
                neg: vec![],
            });
        }
    }
    GroundProgram { rules }
}

/// Least fixpoint of the immediate consequence operator.
pub fn least_model(pp: &GroundProgram) -> Result<BTreeSet<GroundAtom>, OracleError> {
    let mut ids: HashMap<&GroundAtom, usize> = HashMap::new();
    let mut atoms: Vec<&GroundAtom> = Vec::new();
    let mut rules: Vec<(usize, Vec<usize>)> = Vec::with_capacity(pp.rules.len());
    for (n, r) in pp.rules.iter().enumerate() {
        let Some(h) = &r.head else {
            return Err(OracleError::NotPositive(n));
        };
        if r.free || !r.neg.is_empty() {
            return Err(OracleError::NotPositive(n));
        }
        let mut get = |a| {
            *ids.entry(a).or_insert_with(|| {
                atoms.push(a);
                atoms.len() - 1
            })
        };
        let head = get(h);
        let body = r.pos.iter().map(&mut get).collect();
        rules.push((head, body));
    }
    let facts = horn_fixpoint(atoms.len(), &rules);
    Ok(facts
        .iter()
        .enumerate()
        .filter(|(_, t)| **t)
        .map(|(i, _)| atoms[i].clone())
        .collect())
}

/// Counter-based forward chaining over interned Horn rules.
fn horn_fixpoint(n: usize, rules: &[(usize, Vec<usize>)]) -> Vec<bool> {
    let mut truth = vec![false; n];
    let mut missing: Vec<usize> = rules.iter().map(|(_, b)| b.len()).collect();
    let mut watch: Vec<Vec<usize>> = vec![vec![]; n];
    for (ri, (_, b)) in rules.iter().enumerate() {
        for &a in b {
            watch[a].push(ri);
        }
    }
    let mut queue: Vec<usize> = Vec::new();
    for (ri, (h, _)) in rules.iter().enumerate() {
        if missing[ri] == 0 && !truth[*h] {
            truth[*h] = true;
            queue.push(*h);
        }
    }
    while let Some(a) = queue.pop() {
        for &ri in &watch[a] {
            missing[ri] -= 1;
            if missing[ri] == 0 {
                let h = rules[ri].0;
                if !truth[h] {
                    truth[h] = true;
                    queue.push(h);
                }
            }
        }
    }
    truth
}

/// Whether `m` satisfies every rule of `gp` read classically (free rules are
/// tautologies).
pub fn satisfies_all(gp: &GroundProgram, m: &BTreeSet<GroundAtom>) -> bool {
    gp.rules.iter().all(|r| {
        if r.free {
            return true;
        }
        let body = r.pos.iter().all(|a| m.contains(a)) && r.neg.iter().all(|a| !m.contains(a));
        !body || r.head.as_ref().is_some_and(|h| m.contains(h))
    })
}

fn constraints_hold(gp: &GroundProgram, m: &BTreeSet<GroundAtom>) -> bool {
    gp.rules.iter().filter(|r| r.head.is_none()).all(|r| {
        !(r.pos.iter().all(|a| m.contains(a)) && r.neg.iter().all(|a| !m.contains(a)))
    })
}

/// `M` is an answer set of the program grounded over `U`, and every ground
/// constraint has a false body.
pub fn is_answer_set(p: &Program, i: &Interpretation) -> bool {
    let universe: BTreeSet<&String> = i.universe.iter().collect();
    if universe.is_empty() || p.constants().iter().any(|c| !universe.contains(c)) {
        return false;
    }
    for a in &i.atoms {
        if a.args.iter().any(|e| !universe.contains(e)) || p.arity(&a.pred) != Some(a.args.len()) {
            return false;
        }
    }
    let gp = ground(p, &i.universe);
    if !constraints_hold(&gp, &i.atoms) {
        return false;
    }
    let reduct = gl_reduct(&gp, &i.atoms);
    match least_model(&reduct) {
        Ok(lm) => lm == i.atoms,
        Err(_) => false,
    }
}

/// Interned ground program used by the bounded search.
struct Indexed {
    atoms: Vec<GroundAtom>,
    /// (head, pos, neg) of ordinary rules
    rules: Vec<(usize, Vec<usize>, Vec<usize>)>,
    constraints: Vec<(Vec<usize>, Vec<usize>)>,
    free_heads: Vec<usize>,
}

impl Indexed {
    fn new(gp: GroundProgram) -> Self {
        let mut ids: HashMap<GroundAtom, usize> = HashMap::new();
        let mut atoms = Vec::new();
        let mut get = |a: GroundAtom| {
            *ids.entry(a.clone()).or_insert_with(|| {
                atoms.push(a);
                atoms.len() - 1
            })
        };
        let mut rules = Vec::new();
        let mut constraints = Vec::new();
        let mut free_heads = Vec::new();
        for r in gp.rules {
            let pos: Vec<usize> = r.pos.into_iter().map(&mut get).collect();
            let neg: Vec<usize> = r.neg.into_iter().map(&mut get).collect();
            match r.head {
                None => constraints.push((pos, neg)),
                Some(h) if r.free => free_heads.push(get(h)),
                Some(h) => rules.push((get(h), pos, neg)),
            }
        }
        free_heads.sort_unstable();
        free_heads.dedup();
        Indexed {
            atoms,
            rules,
            constraints,
            free_heads,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    True,
    False,
}

struct Search<'a> {
    ix: &'a Indexed,
    guess: Vec<usize>,
    targets: Vec<usize>,
    best: Option<(usize, Vec<String>, Vec<bool>)>,
}

impl Search<'_> {
    /// Least model of the rules usable under `val`. With `lower`, a negative
    /// literal counts only if its atom is known false and a free atom only if
    /// known true; otherwise only known-true atoms block a rule.
    fn bound(&self, val: &[Val], lower: bool) -> Vec<bool> {
        let mut horn: Vec<(usize, Vec<usize>)> = Vec::new();
        for (h, pos, neg) in &self.ix.rules {
            let ok = if lower {
                neg.iter().all(|&a| val[a] == Val::False)
            } else {
                neg.iter().all(|&a| val[a] != Val::True)
            };
            if ok {
                horn.push((*h, pos.clone()));
            }
        }
        for &a in &self.ix.free_heads {
            let ok = if lower {
                val[a] == Val::True
            } else {
                val[a] != Val::False
            };
            if ok {
                horn.push((a, vec![]));
            }
        }
        horn_fixpoint(self.ix.atoms.len(), &horn)
    }

    fn run(&mut self, val: &mut Vec<Val>) {
        // propagate to a fixpoint
        let (lo, hi) = loop {
            let lo = self.bound(val, true);
            let hi = self.bound(val, false);
            let mut changed = false;
            for &a in &self.guess {
                match val[a] {
                    Val::True if !hi[a] => return,
                    Val::False if lo[a] => return,
                    Val::Unknown if lo[a] => {
                        val[a] = Val::True;
                        changed = true;
                    }
                    Val::Unknown if !hi[a] => {
                        val[a] = Val::False;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break (lo, hi);
            }
        };
        if !self.targets.iter().any(|&a| hi[a]) {
            return;
        }
        for (pos, neg) in &self.ix.constraints {
            if pos.iter().all(|&a| lo[a]) && neg.iter().all(|&a| !hi[a]) {
                return;
            }
        }
        let size = lo.iter().filter(|t| **t).count();
        if let Some((best, _, _)) = &self.best {
            if size > *best {
                return;
            }
        }
        match self.guess.iter().find(|&&a| val[a] == Val::Unknown) {
            Some(&a) => {
                for v in [Val::False, Val::True] {
                    let mut next = val.clone();
                    next[a] = v;
                    self.run(&mut next);
                }
            }
            None => {
                // lo == hi here; check the remaining conditions on M
                if !self.targets.iter().any(|&a| lo[a]) {
                    return;
                }
                let holds = self.ix.constraints.iter().all(|(pos, neg)| {
                    !(pos.iter().all(|&a| lo[a]) && neg.iter().all(|&a| !lo[a]))
                });
                if !holds {
                    return;
                }
                let mut names: Vec<String> = (0..lo.len())
                    .filter(|&a| lo[a])
                    .map(|a| self.ix.atoms[a].to_string())
                    .collect();
                names.sort();
                let better = match &self.best {
                    None => true,
                    Some((s, n, _)) => (size, &names) < (*s, n),
                };
                if better {
                    self.best = Some((size, names, lo));
                }
            }
        }
    }
}

/// Searches universes of `|cts(P)|` up to `max_size` elements (at least one)
/// for an open answer set containing `pred(e)` for some element `e`. The
/// fresh elements are named `u1, u2, ...`. At the smallest universe size with
/// a witness, the witness with the fewest atoms (then the lexicographically
/// smallest atom list) is returned. `None` says nothing about larger
/// universes.
pub fn bounded_sat(
    p: &Program,
    pred: &str,
    max_size: usize,
) -> Result<Option<Interpretation>, OracleError> {
    bounded_sat_with_budget(p, pred, max_size, DEFAULT_ATOM_BUDGET)
}

pub fn bounded_sat_with_budget(
    p: &Program,
    pred: &str,
    max_size: usize,
    budget: usize,
) -> Result<Option<Interpretation>, OracleError> {
    if p.arity(pred) != Some(1) {
        return Err(OracleError::UnknownPredicate(pred.to_string()));
    }
    let nc = p.constants().len();
    if max_size < nc.max(1) {
        return Err(OracleError::UniverseTooSmall {
            max: max_size,
            constants: nc,
        });
    }
    for size in nc.max(1)..=max_size {
        let n_atoms: usize = p.upreds().len() * size + p.bpreds().len() * size * size;
        if n_atoms > budget {
            return Err(OracleError::Budget {
                atoms: n_atoms,
                budget,
            });
        }
        let mut universe: Vec<String> = p.constants().to_vec();
        for k in 1..=size - nc {
            universe.push(format!("u{k}"));
        }
        let ix = Indexed::new(ground(p, &universe));
        let mut guess: BTreeSet<usize> = ix.free_heads.iter().copied().collect();
        for (_, _, neg) in &ix.rules {
            guess.extend(neg.iter().copied());
        }
        for (_, neg) in &ix.constraints {
            guess.extend(neg.iter().copied());
        }
        let targets: Vec<usize> = (0..ix.atoms.len())
            .filter(|&a| ix.atoms[a].pred == pred)
            .collect();
        let mut s = Search {
            ix: &ix,
            guess: guess.into_iter().collect(),
            targets,
            best: None,
        };
        let mut val = vec![Val::Unknown; ix.atoms.len()];
        s.run(&mut val);
        if let Some((_, _, model)) = s.best {
            let atoms = (0..model.len())
                .filter(|&a| model[a])
                .map(|a| ix.atoms[a].clone())
                .collect();
            return Ok(Some(Interpretation { universe, atoms }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    const EX1: &str = "smember(X) :- support(X,Y), smember(Y).\n\
        smember(X) :- support(X,Y1), rmember(Y1), support(X,Y2), rmember(Y2), Y1 != Y2.\n\
        support(X,Y) v not support(X,Y).\n\
        :- smember(X), rmember(X).\n\
        rmember(a).\n\
        rmember(b).\n";

    fn u(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn fig1() -> Interpretation {
        Interpretation {
            universe: u(&["x", "a", "b"]),
            atoms: [
                GroundAtom::new("rmember", &["a"]),
                GroundAtom::new("rmember", &["b"]),
                GroundAtom::new("support", &["x", "a"]),
                GroundAtom::new("support", &["x", "b"]),
                GroundAtom::new("smember", &["x"]),
            ]
            .into_iter()
            .collect(),
        }
    }

    #[test]
    fn grounding_counts_and_inequalities() {
        let p = parse_program(EX1).unwrap();
        let r1 = Program::new(vec![p.rules()[0].clone()]).unwrap();
        assert_eq!(ground(&r1, &u(&["x", "a"])).rules.len(), 4);

        let gp = ground(&p, &u(&["x", "a", "b"]));
        let want = "smember(x) :- support(x,a), rmember(a), support(x,b), rmember(b).";
        assert!(gp.rules.iter().any(|r| r.to_string() == want));

        let neq = parse_program("p(X) :- f(X,Y), f(X,Z), Y != Z.").unwrap();
        let gp = ground(&neq, &u(&["a"]));
        assert!(gp.rules.is_empty());
    }

    #[test]
    fn reduct_of_free_and_self_negating_rules() {
        let free = parse_program("a(x) v not a(x).").unwrap();
        let gp = ground(&free, &u(&["x"]));
        let with: BTreeSet<_> = [GroundAtom::new("a", &["x"])].into_iter().collect();
        assert_eq!(gl_reduct(&gp, &with).rules.len(), 1);
        assert!(gl_reduct(&gp, &BTreeSet::new()).rules.is_empty());

        let neg = parse_program("p(x) :- not p(x).").unwrap();
        let gp = ground(&neg, &u(&["x"]));
        let px: BTreeSet<_> = [GroundAtom::new("p", &["x"])].into_iter().collect();
        assert!(gl_reduct(&gp, &px).rules.is_empty());
        let r = gl_reduct(&gp, &BTreeSet::new());
        assert_eq!(r.rules[0].to_string(), "p(x).");
        // neither candidate reproduces itself
        assert_ne!(least_model(&gl_reduct(&gp, &px)).unwrap(), px);
        assert_ne!(least_model(&r).unwrap(), BTreeSet::new());
    }

    #[test]
    fn least_model_basics() {
        let p = parse_program("a(x).\nb(x) :- a(x).").unwrap();
        let gp = ground(&p, &u(&["x"]));
        let lm = least_model(&gp).unwrap();
        assert_eq!(lm.len(), 2);
        assert!(least_model(&GroundProgram::default()).unwrap().is_empty());
        let bad = parse_program("a(x) :- not b(x).").unwrap();
        assert!(least_model(&ground(&bad, &u(&["x"]))).is_err());
    }

    #[test]
    fn figure_one_is_an_answer_set() {
        let p = parse_program(EX1).unwrap();
        let m = fig1();
        assert!(is_answer_set(&p, &m));
        let gp = ground(&p, &m.universe);
        assert_eq!(least_model(&gl_reduct(&gp, &m.atoms)).unwrap(), m.atoms);
        assert!(satisfies_all(&gp, &m.atoms));

        let mut smaller = m.clone();
        smaller.atoms.remove(&GroundAtom::new("support", &["x", "b"]));
        assert!(!is_answer_set(&p, &smaller));

        let mut stray = m;
        stray.atoms.insert(GroundAtom::new("rmember", &["z"]));
        assert!(!is_answer_set(&p, &stray));
    }

    #[test]
    fn bounded_search_finds_figure_one() {
        let p = parse_program(EX1).unwrap();
        let w = bounded_sat(&p, "smember", 3).unwrap().unwrap();
        assert!(w.same_up_to_renaming(&fig1(), |e| !p.constants().iter().any(|c| c == e)));
        assert!(is_answer_set(&p, &w));
    }

    #[test]
    fn bounded_search_fact_and_unsat() {
        let p = parse_program("rmember(a).").unwrap();
        let w = bounded_sat(&p, "rmember", 1).unwrap().unwrap();
        assert_eq!(w.to_string(), "element a\natom rmember(a)\n");

        let ex2 = parse_program(
            "smember(X) :- support(X,Y), smember(Y).\nsupport(X,Y) v not support(X,Y).",
        )
        .unwrap();
        assert_eq!(bounded_sat(&ex2, "smember", 3).unwrap(), None);

        let pr1 = parse_program("p(X) :- not p(X).").unwrap();
        assert_eq!(bounded_sat(&pr1, "p", 3).unwrap(), None);
    }

    #[test]
    fn bounded_search_errors() {
        let p = parse_program("q(a).\nq(b).").unwrap();
        assert!(matches!(
            bounded_sat(&p, "q", 1),
            Err(OracleError::UniverseTooSmall { .. })
        ));
        let p = parse_program("f(X,Y) v not f(X,Y).\nq(X) :- f(X,Y).").unwrap();
        assert!(matches!(
            bounded_sat_with_budget(&p, "q", 3, 1),
            Err(OracleError::Budget { .. })
        ));
    }

    #[test]
    fn renaming_respects_named_elements() {
        let a = fig1();
        let mut b = a.clone();
        b.universe[0] = "u1".into();
        b.atoms = b
            .atoms
            .into_iter()
            .map(|mut at| {
                for e in at.args.iter_mut() {
                    if e == "x" {
                        *e = "u1".into();
                    }
                }
                at
            })
            .collect();
        assert!(a.same_up_to_renaming(&b, |e| e == "x" || e == "u1"));
        assert!(!a.same_up_to_renaming(&b, |_| false));
    }
}
