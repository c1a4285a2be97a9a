//! Interned, shape-classified form of a validated constraint-free program.

use std::fmt;

use super::validate::{classify, BodyShape, Shape, SignedName};
use super::{Program, Term, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPred(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BPred(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstId(pub u16);

/// A possibly negated predicate symbol, `p` or `not p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit<P> {
    pub pred: P,
    pub positive: bool,
}

impl<P: Copy> Lit<P> {
    pub fn pos(pred: P) -> Self {
        Lit {
            pred,
            positive: true,
        }
    }

    pub fn neg(pred: P) -> Self {
        Lit {
            pred,
            positive: false,
        }
    }

    pub fn complement(self) -> Self {
        Lit {
            pred: self.pred,
            positive: !self.positive,
        }
    }
}

/// A rule term after standardization: every variable position of a rule is
/// a distinct variable, so only the constant case carries data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTerm {
    Var,
    Const(ConstId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Successor {
    pub term: RuleTerm,
    pub gamma: Vec<Lit<BPred>>,
    pub delta: Vec<Lit<UPred>>,
}

impl Successor {
    /// Whether a ground instance needs an arc to the successor to hold.
    pub fn needs_arc(&self) -> bool {
        self.gamma.iter().any(|l| l.positive)
    }
}

/// `a(s) :- beta(s), (gamma_m(s,t_m), delta_m(t_m))_m, psi.` or a unary
/// choice rule (`free`, empty body).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryRule {
    /// Position of the source rule in the program.
    pub index: usize,
    pub head: UPred,
    pub s: RuleTerm,
    pub beta: Vec<Lit<UPred>>,
    pub succ: Vec<Successor>,
    /// Pairs of successor positions that must be mapped to distinct nodes.
    pub neq: Vec<(usize, usize)>,
    pub free: bool,
}

/// `f(s,t) :- beta(s), gamma(s,t), delta(t).` or a binary choice rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRule {
    pub index: usize,
    pub head: BPred,
    pub s: RuleTerm,
    pub t: RuleTerm,
    pub beta: Vec<Lit<UPred>>,
    pub gamma: Vec<Lit<BPred>>,
    pub delta: Vec<Lit<UPred>>,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error("program is not a forest logic program: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotForest(Vec<Violation>),
    #[error("constraints must be eliminated before compilation")]
    HasConstraints,
    #[error("too many symbols")]
    TooManySymbols,
}

/// A program ready for the tableau engines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folp {
    pub upreds: Vec<String>,
    pub bpreds: Vec<String>,
    pub constants: Vec<String>,
    pub unary_rules: Vec<UnaryRule>,
    pub binary_rules: Vec<BinaryRule>,
    ufree: Vec<bool>,
    bfree: Vec<bool>,
    urules_for: Vec<Vec<usize>>,
    brules_for: Vec<Vec<usize>>,
}

impl Folp {
    pub fn compile(p: &Program) -> Result<Folp, CompileError> {
        if p.has_constraints() {
            return Err(CompileError::HasConstraints);
        }
        super::validate_folp(p).map_err(CompileError::NotForest)?;
        if p.upreds().len() > u16::MAX as usize
            || p.bpreds().len() > u16::MAX as usize
            || p.constants().len() > u16::MAX as usize
        {
            return Err(CompileError::TooManySymbols);
        }
        let upreds = p.upreds().to_vec();
        let bpreds = p.bpreds().to_vec();
        let constants = p.constants().to_vec();
        let mut f = Folp {
            ufree: upreds.iter().map(|q| p.is_free(q)).collect(),
            bfree: bpreds.iter().map(|q| p.is_free(q)).collect(),
            urules_for: vec![vec![]; upreds.len()],
            brules_for: vec![vec![]; bpreds.len()],
            upreds,
            bpreds,
            constants,
            unary_rules: vec![],
            binary_rules: vec![],
        };
        for (index, r) in p.rules().iter().enumerate() {
            let shape = classify(r).expect("validated");
            match shape {
                Shape::Free { atom } => {
                    if atom.arity() == 1 {
                        let head = f.upred(&atom.pred).unwrap();
                        let rule = UnaryRule {
                            index,
                            head,
                            s: f.term(&atom.args[0]),
                            beta: vec![],
                            succ: vec![],
                            neq: vec![],
                            free: true,
                        };
                        f.urules_for[head.0 as usize].push(f.unary_rules.len());
                        f.unary_rules.push(rule);
                    } else {
                        let head = f.bpred(&atom.pred).unwrap();
                        let rule = BinaryRule {
                            index,
                            head,
                            s: f.term(&atom.args[0]),
                            t: f.term(&atom.args[1]),
                            beta: vec![],
                            gamma: vec![],
                            delta: vec![],
                            free: true,
                        };
                        f.brules_for[head.0 as usize].push(f.binary_rules.len());
                        f.binary_rules.push(rule);
                    }
                }
                Shape::Unary { pred, body } => {
                    let head = f.upred(&pred).unwrap();
                    let rule = f.unary(index, head, &body);
                    f.urules_for[head.0 as usize].push(f.unary_rules.len());
                    f.unary_rules.push(rule);
                }
                Shape::Binary {
                    pred,
                    s,
                    t,
                    beta,
                    gamma,
                    delta,
                } => {
                    let head = f.bpred(&pred).unwrap();
                    let rule = BinaryRule {
                        index,
                        head,
                        s: f.term(&s),
                        t: f.term(&t),
                        beta: f.ulits(&beta),
                        gamma: f.blits(&gamma),
                        delta: f.ulits(&delta),
                        free: false,
                    };
                    f.brules_for[head.0 as usize].push(f.binary_rules.len());
                    f.binary_rules.push(rule);
                }
                Shape::Constraint { .. } => unreachable!("checked above"),
            }
        }
        Ok(f)
    }

    fn unary(&self, index: usize, head: UPred, body: &BodyShape) -> UnaryRule {
        UnaryRule {
            index,
            head,
            s: self.term(&body.s),
            beta: self.ulits(&body.beta),
            succ: body
                .succ
                .iter()
                .map(|sc| Successor {
                    term: self.term(sc.term.as_ref().unwrap()),
                    gamma: self.blits(&sc.gamma),
                    delta: self.ulits(&sc.delta),
                })
                .collect(),
            neq: body.neq.clone(),
            free: false,
        }
    }

    fn term(&self, t: &Term) -> RuleTerm {
        match t {
            Term::Var { .. } => RuleTerm::Var,
            Term::Const(c) => RuleTerm::Const(self.constant(c).expect("constant in inventory")),
        }
    }

    fn ulits(&self, v: &[SignedName]) -> Vec<Lit<UPred>> {
        let mut out: Vec<Lit<UPred>> = v
            .iter()
            .map(|(pos, n)| Lit {
                pred: self.upred(n).unwrap(),
                positive: *pos,
            })
            .collect();
        out.dedup();
        out
    }

    fn blits(&self, v: &[SignedName]) -> Vec<Lit<BPred>> {
        let mut out: Vec<Lit<BPred>> = v
            .iter()
            .map(|(pos, n)| Lit {
                pred: self.bpred(n).unwrap(),
                positive: *pos,
            })
            .collect();
        out.dedup();
        out
    }

    pub fn upred(&self, name: &str) -> Option<UPred> {
        self.upreds
            .iter()
            .position(|p| p == name)
            .map(|i| UPred(i as u16))
    }

    pub fn bpred(&self, name: &str) -> Option<BPred> {
        self.bpreds
            .iter()
            .position(|p| p == name)
            .map(|i| BPred(i as u16))
    }

    pub fn constant(&self, name: &str) -> Option<ConstId> {
        self.constants
            .iter()
            .position(|p| p == name)
            .map(|i| ConstId(i as u16))
    }

    pub fn n_upreds(&self) -> usize {
        self.upreds.len()
    }

    pub fn n_bpreds(&self) -> usize {
        self.bpreds.len()
    }

    pub fn uname(&self, p: UPred) -> &str {
        &self.upreds[p.0 as usize]
    }

    pub fn bname(&self, p: BPred) -> &str {
        &self.bpreds[p.0 as usize]
    }

    pub fn cname(&self, c: ConstId) -> &str {
        &self.constants[c.0 as usize]
    }

    pub fn is_ufree(&self, p: UPred) -> bool {
        self.ufree[p.0 as usize]
    }

    pub fn is_bfree(&self, p: BPred) -> bool {
        self.bfree[p.0 as usize]
    }

    /// Unary rules with head predicate `p`, in program order.
    pub fn urules(&self, p: UPred) -> impl Iterator<Item = &UnaryRule> + '_ {
        self.urules_for[p.0 as usize]
            .iter()
            .map(move |&i| &self.unary_rules[i])
    }

    pub fn brules(&self, p: BPred) -> impl Iterator<Item = &BinaryRule> + '_ {
        self.brules_for[p.0 as usize]
            .iter()
            .map(move |&i| &self.binary_rules[i])
    }

    pub fn all_upreds(&self) -> impl Iterator<Item = UPred> {
        (0..self.upreds.len() as u16).map(UPred)
    }

    pub fn all_bpreds(&self) -> impl Iterator<Item = BPred> {
        (0..self.bpreds.len() as u16).map(BPred)
    }

    pub fn all_constants(&self) -> impl Iterator<Item = ConstId> {
        (0..self.constants.len() as u16).map(ConstId)
    }

    /// Binary rules whose ground instances towards a constant need no
    /// connecting binary atom: `f(s,c) :- beta(s), delta(c)`. Every node
    /// matching `s` must carry an arc to `c` so the choice over `f` is made.
    pub fn implicit_arcs(&self) -> impl Iterator<Item = (RuleTerm, ConstId)> + '_ {
        self.binary_rules.iter().filter_map(|r| match r.t {
            RuleTerm::Const(c) if !r.free && !r.gamma.iter().any(|l| l.positive) => {
                Some((r.s, c))
            }
            _ => None,
        })
    }

    pub fn ulit_name(&self, l: Lit<UPred>) -> String {
        if l.positive {
            self.uname(l.pred).to_string()
        } else {
            format!("not {}", self.uname(l.pred))
        }
    }

    pub fn blit_name(&self, l: Lit<BPred>) -> String {
        if l.positive {
            self.bname(l.pred).to_string()
        } else {
            format!("not {}", self.bname(l.pred))
        }
    }
}

impl fmt::Display for UPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{eliminate_constraints, parse_program};

    #[test]
    fn example_one_compiles() {
        let p = parse_program(
            "smember(X) :- support(X,Y), smember(Y).\n\
             smember(X) :- support(X,Y), rmember(Y), support(X,Z), rmember(Z), Y != Z.\n\
             support(X,Y) v not support(X,Y).\n\
             :- smember(X), rmember(X).\n\
             rmember(a).\nrmember(b).",
        )
        .unwrap();
        assert_eq!(
            Folp::compile(&p).unwrap_err(),
            CompileError::HasConstraints
        );
        let f = Folp::compile(&eliminate_constraints(&p)).unwrap();
        assert_eq!(f.n_upreds(), 3);
        let sm = f.upred("smember").unwrap();
        let r2 = f.urules(sm).nth(1).unwrap();
        assert_eq!(r2.succ.len(), 2);
        assert_eq!(r2.neq, vec![(0, 1)]);
        assert!(f.is_bfree(f.bpred("support").unwrap()));
        let rm = f.upred("rmember").unwrap();
        let facts: Vec<_> = f.urules(rm).collect();
        assert_eq!(facts.len(), 2);
        assert!(matches!(facts[0].s, RuleTerm::Const(_)));
    }

    #[test]
    fn implicit_arcs_for_unlinked_constant_targets() {
        let p = parse_program("f(X,a) :- q(X).\ng(X,a) :- h(X,a).\nh(X,Y) v not h(X,Y).").unwrap();
        let f = Folp::compile(&p).unwrap();
        let arcs: Vec<_> = f.implicit_arcs().collect();
        assert_eq!(arcs, vec![(RuleTerm::Var, ConstId(0))]);
    }
}
