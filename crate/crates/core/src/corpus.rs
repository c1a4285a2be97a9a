//! Seeded random forest logic programs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::syntax::{parse_program, validate_folp, Program};

#[derive(Clone, Debug)]
pub struct CorpusProgram {
    pub name: String,
    pub text: String,
    pub program: Program,
    /// A unary predicate of the program to query.
    pub query: String,
}

/// Size limits for generated programs.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub constants: usize,
    pub unary: usize,
    pub binary: usize,
    pub rules: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            constants: 2,
            unary: 3,
            binary: 2,
            rules: 6,
        }
    }
}

const UNARY: [&str; 4] = ["p", "q", "r", "s"];
const BINARY: [&str; 3] = ["f", "g", "h"];
const CONSTS: [&str; 3] = ["a", "b", "c"];

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    unary: &'a [&'static str],
    binary: &'a [&'static str],
    consts: &'a [&'static str],
}

impl Gen<'_> {
    fn pick<'s>(&mut self, v: &[&'s str]) -> &'s str {
        v.choose(self.rng).copied().unwrap()
    }

    fn sign(&mut self, neg_prob: f64) -> &'static str {
        if self.rng.gen_bool(neg_prob) {
            "not "
        } else {
            ""
        }
    }

    fn term(&mut self, var: &str) -> String {
        if !self.consts.is_empty() && self.rng.gen_bool(0.15) {
            self.pick(self.consts).to_string()
        } else {
            var.to_string()
        }
    }

    fn unary_lits(&mut self, t: &str, max: usize, out: &mut Vec<String>) {
        for _ in 0..self.rng.gen_range(0..=max) {
            let s = self.sign(0.4);
            let p = self.pick(self.unary);
            out.push(format!("{s}{p}({t})"));
        }
    }

    fn free_rule(&mut self) -> String {
        if !self.binary.is_empty() && self.rng.gen_bool(0.6) {
            let f = self.pick(self.binary);
            format!("{f}(X,Y) v not {f}(X,Y).")
        } else {
            let p = self.pick(self.unary);
            format!("{p}(X) v not {p}(X).")
        }
    }

    fn unary_rule(&mut self) -> String {
        let head = self.pick(self.unary);
        let s = self.term("X");
        let mut body = vec![];
        self.unary_lits(&s, 1, &mut body);
        let n_succ = if self.binary.is_empty() { 0 } else { self.rng.gen_range(0..=2) };
        let mut vars = vec![];
        for i in 0..n_succ {
            let constant = !self.consts.is_empty() && self.rng.gen_bool(0.2);
            let t = if constant {
                self.pick(self.consts).to_string()
            } else {
                let v = format!("Y{i}");
                vars.push(v.clone());
                v
            };
            let f = self.pick(self.binary);
            if constant && self.rng.gen_bool(0.3) {
                // no connecting literal for a constant successor
            } else {
                body.push(format!("{f}({s},{t})"));
            }
            if self.rng.gen_bool(0.2) {
                let g = self.pick(self.binary);
                body.push(format!("not {g}({s},{t})"));
            }
            self.unary_lits(&t, 2, &mut body);
        }
        if vars.len() == 2 && self.rng.gen_bool(0.5) {
            body.push(format!("{} != {}", vars[0], vars[1]));
        }
        if body.is_empty() {
            format!("{head}({s}).")
        } else {
            format!("{head}({s}) :- {}.", body.join(", "))
        }
    }

    fn binary_rule(&mut self) -> String {
        let f = self.pick(self.binary);
        let mut body = vec![];
        let t = if !self.consts.is_empty() && self.rng.gen_bool(0.3) {
            self.pick(self.consts).to_string()
        } else {
            "Y".to_string()
        };
        self.unary_lits("X", 1, &mut body);
        if t == "Y" || self.rng.gen_bool(0.5) {
            let g = self.pick(self.binary);
            body.push(format!("{g}(X,{t})"));
        }
        self.unary_lits(&t, 1, &mut body);
        if body.is_empty() {
            format!("{f}(X,{t}) :- {}({t}).", self.pick(self.unary))
        } else {
            format!("{f}(X,{t}) :- {}.", body.join(", "))
        }
    }

    fn constraint(&mut self) -> String {
        let p = self.pick(self.unary);
        let q = self.pick(self.unary);
        let s = self.sign(0.5);
        format!(":- {p}(X), {s}{q}(X).")
    }

    fn fact(&mut self) -> String {
        let p = self.pick(self.unary);
        let c = self.pick(self.consts);
        format!("{p}({c}).")
    }
}

/// Generates one valid program from `rng`, retrying until validation
/// passes.
pub fn random_program(rng: &mut ChaCha8Rng, limits: Limits) -> (String, Program) {
    loop {
        let nu = rng.gen_range(1..=limits.unary.clamp(1, UNARY.len()));
        let nb = rng.gen_range(0..=limits.binary.min(BINARY.len()));
        let nc = rng.gen_range(0..=limits.constants.min(CONSTS.len()));
        let n_rules = rng.gen_range(2..=limits.rules.max(2));
        let mut g = Gen {
            rng,
            unary: &UNARY[..nu],
            binary: &BINARY[..nb],
            consts: &CONSTS[..nc],
        };
        let mut rules = vec![];
        // The query predicate gets a defining rule first.
        let first = g.unary_rule();
        let first = format!("p{}", &first[first.find('(').unwrap()..]);
        rules.push(first);
        while rules.len() < n_rules {
            let roll = g.rng.gen_range(0..100);
            let r = match roll {
                0..=24 => g.free_rule(),
                25..=69 => g.unary_rule(),
                70..=84 if !g.binary.is_empty() => g.binary_rule(),
                85..=92 if !g.consts.is_empty() => g.fact(),
                _ => g.constraint(),
            };
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
        let text = rules.join("\n") + "\n";
        let Ok(program) = parse_program(&text) else { continue };
        if validate_folp(&program).is_ok() {
            return (text, program);
        }
    }
}

/// `n` programs from `seed`, named `rand-<seed>-<i>`, querying `p`.
pub fn generate(seed: u64, n: usize, limits: Limits) -> Vec<CorpusProgram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (text, program) = random_program(&mut rng, limits);
            CorpusProgram {
                name: format!("rand-{seed}-{i}"),
                text,
                program,
                query: "p".into(),
            }
        })
        .collect()
}

/// Number of chained predicates in [`repeated_shapes`].
pub const SHAPE_LEVELS: usize = 4;

/// A family of programs where many rules share the same body shape, so the
/// same local justification recurs at every node of a deep tree.
///
/// Predicate `l{i}` needs an `f`-successor with `l{i+1}`, and the last level
/// needs a `g`-successor with `dead`, which has no rules. Every level gets
/// `ceil(n_rules / SHAPE_LEVELS)` copies of its rule that differ only in
/// variable names, so all of `l0 ... l3` are unsatisfiable after
/// trying every combination of copies along the chain.
pub fn repeated_shapes(n_rules: usize) -> String {
    let copies = n_rules.div_ceil(SHAPE_LEVELS).max(1);
    let mut out = String::from("f(X,Y) v not f(X,Y).\ng(X,Y) v not g(X,Y).\n");
    for i in 0..SHAPE_LEVELS {
        for j in 0..copies {
            let v = format!("Y{j}");
            if i + 1 < SHAPE_LEVELS {
                out.push_str(&format!("l{i}(X) :- f(X,{v}), l{}({v}).\n", i + 1));
            } else {
                out.push_str(&format!("l{i}(X) :- g(X,{v}), dead({v}).\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_within_limits() {
        let a = generate(7, 20, Limits::default());
        let b = generate(7, 20, Limits::default());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.text, y.text);
            let p = &x.program;
            assert!(p.rules().len() <= 6, "{}", x.text);
            assert!(p.constants().len() <= 2);
            assert!(p.upreds().len() <= 3);
            assert!(p.bpreds().len() <= 2);
            assert!(p.upreds().iter().any(|u| u == "p"));
        }
    }

    #[test]
    fn repeated_family_is_valid() {
        let text = repeated_shapes(24);
        let p = parse_program(&text).unwrap();
        validate_folp(&p).unwrap();
        assert!(p.rules().len() >= 24);
    }
}
