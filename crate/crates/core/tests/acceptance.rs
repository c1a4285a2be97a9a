//! Acceptance suite. Every criterion prints one `PASS` or `FAIL` line; the
//! test fails if any criterion other than the timing comparison fails.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to also see the
//! detail lines.

use std::io::Write;
use std::time::{Duration, Instant};

use folp::a1::verify::{verify_with, VerifyOptions};
use folp::bench::bench_program;
use folp::corpus::{generate, repeated_shapes, CorpusProgram, Limits};
use folp::oracle::{bounded_sat, is_answer_set, GroundAtom, Interpretation};
use folp::search::{default_k, prepare, witness, Outcome, RedundancyPolicy, TraceEvent, Verdict};
use folp::syntax::{parse_program, Program};
use folp::units::{self, enumerate, is_redundant, prune, render_cache, LNode, Unit};
use folp::{a1, a2};

const EX1: &str = include_str!("../data/ex1.folp");
const EX2: &str = include_str!("../data/ex2.folp");
const PR: &str = include_str!("../data/pr.folp");
const PR_GOLDEN: &str = include_str!("golden/pr.units");

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 50;
const CORPUS_K: u64 = 5;
const ORACLE_MAX: usize = 3;

const EX1_LIMIT: Duration = Duration::from_secs(5);
const EX2_LIMIT: Duration = Duration::from_secs(30);
const CORPUS_LIMIT: Duration = Duration::from_secs(600);

const SHAPE_RULES: usize = 24;
const SHAPE_STEPS: u64 = 2_000_000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(n: u32, title: &str, res: &Check) {
    // Written straight to the process stdout so the lines survive output
    // capture by the test harness.
    let mut out = std::io::stdout().lock();
    let _ = match res {
        Ok(detail) => writeln!(out, "PASS criterion {n}: {title} ({detail})"),
        Err(why) => writeln!(out, "FAIL criterion {n}: {title} ({why})"),
    };
}

fn parse(src: &str) -> Program {
    parse_program(src).expect("bundled program parses")
}

fn corpus() -> Vec<CorpusProgram> {
    generate(CORPUS_SEED, CORPUS_SIZE, Limits::default())
}

fn ex1_model() -> Interpretation {
    let atom = |p: &str, args: &[&str]| GroundAtom::new(p, args);
    Interpretation {
        universe: vec!["_x".into(), "a".into(), "b".into()],
        atoms: [
            atom("smember", &["_x"]),
            atom("rmember", &["a"]),
            atom("rmember", &["b"]),
            atom("support", &["_x", "a"]),
            atom("support", &["_x", "b"]),
        ]
        .into_iter()
        .collect(),
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let program = parse(EX1);
    let prog = prepare(&program).map_err(|e| e.to_string())?;
    let policy = RedundancyPolicy::default();
    let runs = [
        ("a1", a1::check_sat(&program, "smember", &policy)),
        ("a2", a2::check_sat(&program, "smember", &policy)),
    ];
    let expected = ex1_model();
    for (alg, r) in runs {
        let o = r.map_err(|e| format!("{alg}: {e}"))?;
        ensure(o.verdict == Verdict::Sat, || format!("{alg} says {}", o.verdict))?;
        let f = o.forest.as_ref().unwrap();
        let m = witness(&prog, f).ok_or_else(|| format!("{alg} witness has blocked nodes"))?;
        ensure(m.same_up_to_renaming(&expected, |e| e.starts_with('_')), || {
            format!("{alg} witness differs: {:?}", m.atoms)
        })?;
        ensure(is_answer_set(&program, &m), || format!("{alg} witness rejected by the oracle"))?;
    }
    let t = start.elapsed();
    ensure(t < EX1_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("both SAT, witness matches, {t:.2?}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let program = parse(EX2);
    let policy = RedundancyPolicy::default();
    ensure(default_k(program.upreds().len()) == 5, || "k is not 5".into())?;
    let o1 = a1::check_sat(&program, "smember", &policy).map_err(|e| e.to_string())?;
    let o2 = a2::check_sat(&program, "smember", &policy).map_err(|e| e.to_string())?;
    ensure(o1.verdict == Verdict::Unsat && o2.verdict == Verdict::Unsat, || {
        format!("a1 {} a2 {}", o1.verdict, o2.verdict)
    })?;
    ensure(o2.k == 5, || format!("a2 used k = {}", o2.k))?;
    let sixth = o2
        .trace
        .iter()
        .any(|t| matches!(t, TraceEvent::Redundant { equal: 5, .. }) && t.to_string().contains("node 6"));
    ensure(sixth, || "no redundancy clash at the sixth equal node in the a2 trace".into())?;
    let oracle = bounded_sat(&program, "smember", ORACLE_MAX).map_err(|e| e.to_string())?;
    ensure(oracle.is_none(), || "oracle found a witness".into())?;
    let t = start.elapsed();
    ensure(t < EX2_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("both UNSAT, k = 5, clash at node 6, oracle none up to {ORACLE_MAX}, {t:.2?}"))
}

fn criterion_3() -> Check {
    let program = parse(PR);
    let prog = prepare(&program).map_err(|e| e.to_string())?;
    let all = enumerate(&prog, &RedundancyPolicy::default()).map_err(|e| e.to_string())?;
    let names = |u: &Unit, l: LNode| u.ct(l).iter().map(|x| prog.ulit_name(*x)).collect::<Vec<_>>();
    let pick = |child: &[&str], deps: usize| {
        all.iter()
            .find(|u| {
                u.root.is_none()
                    && names(u, LNode::Root) == ["p", "not q"]
                    && u.children.len() == 1
                    && names(u, LNode::Child(0)) == child
                    && u.deps.len() == deps
            })
            .cloned()
            .ok_or_else(|| format!("no unit with child {child:?} and {deps} dependencies"))
    };
    let uc1 = pick(&["p", "not q"], 2)?;
    let uc2 = pick(&["p"], 2)?;
    let uc3 = pick(&["p", "not q"], 1)?;
    ensure(is_redundant(&prog, &uc1, &uc3) && is_redundant(&prog, &uc2, &uc3), || {
        "UC1 or UC2 not redundant to UC3".into()
    })?;
    ensure(!is_redundant(&prog, &uc3, &uc1) && !is_redundant(&prog, &uc3, &uc2), || {
        "UC3 redundant".into()
    })?;
    ensure(uc3.is_final(&prog) && uc3.paths(&prog, LNode::Child(0)).is_empty(), || {
        "UC3 not final".into()
    })?;
    let (set, report) = units::compile(&program, &RedundancyPolicy::default()).map_err(|e| e.to_string())?;
    ensure(set.units.contains(&uc3), || "UC3 not retained".into())?;
    ensure(!set.units.contains(&uc1) && !set.units.contains(&uc2), || "UC1 or UC2 retained".into())?;
    ensure(render_cache(&set, &prog) == PR_GOLDEN, || "cache differs from golden file".into())?;
    Ok(format!(
        "{} enumerated, {} retained, {} final, golden match",
        report.enumerated, report.retained, report.finals
    ))
}

fn criterion_4(corpus: &[CorpusProgram]) -> Check {
    let mut finals = 0;
    let mut bad = vec![];
    let opts = VerifyOptions {
        allow_bare_constants: true,
        ..Default::default()
    };
    for c in corpus {
        let prog = prepare(&c.program).map_err(|e| format!("{}: {e}", c.name))?;
        let policy = RedundancyPolicy::default();
        let all = enumerate(&prog, &policy).map_err(|e| format!("{}: {e}", c.name))?;
        let k = policy.k(prog.n_upreds());
        for u in all.iter().filter(|u| u.is_final(&prog)) {
            finals += 1;
            let (f, _) = u.to_forest(&prog);
            if let Err(v) = verify_with(&prog, &f, k, opts) {
                bad.push(format!("{}: {}", c.name, v[0]));
            }
        }
    }
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!("{finals} final units over {} programs, 0 violations", corpus.len()))
}

struct Runs {
    a1: Vec<Result<Outcome, String>>,
    a2: Vec<Result<Outcome, String>>,
    elapsed: Duration,
}

fn run_corpus(corpus: &[CorpusProgram]) -> Runs {
    let start = Instant::now();
    let policy = RedundancyPolicy::with_k(CORPUS_K);
    let mut runs = Runs {
        a1: vec![],
        a2: vec![],
        elapsed: Duration::ZERO,
    };
    for c in corpus {
        runs.a1.push(a1::check_sat(&c.program, &c.query, &policy).map_err(|e| e.to_string()));
        runs.a2.push(a2::check_sat(&c.program, &c.query, &policy).map_err(|e| e.to_string()));
    }
    runs.elapsed = start.elapsed();
    runs
}

fn criterion_5(corpus: &[CorpusProgram], runs: &Runs) -> Check {
    let mut bad = vec![];
    let mut counts = [0usize; 3];
    for (i, c) in corpus.iter().enumerate() {
        match (&runs.a1[i], &runs.a2[i]) {
            (Ok(x), Ok(y)) if x.verdict == y.verdict => {
                counts[x.verdict.exit_code() as usize] += 1;
            }
            (Ok(x), Ok(y)) => bad.push(format!("{}: a1 {} a2 {}", c.name, x.verdict, y.verdict)),
            (x, y) => bad.push(format!("{}: a1 {:?} a2 {:?}", c.name, x.as_ref().err(), y.as_ref().err())),
        }
    }
    ensure(bad.is_empty(), || format!("{} of {} differ, first {}", bad.len(), corpus.len(), bad[0]))?;
    Ok(format!(
        "{} programs with k = {CORPUS_K}: {} SAT, {} UNSAT, {} unknown",
        corpus.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}

fn criterion_6(corpus: &[CorpusProgram], runs: &Runs) -> Check {
    let start = Instant::now();
    let mut bad = vec![];
    let (mut oracle_sat, mut checked, mut blocked, mut over_budget) = (0, 0, 0, 0);
    for (i, c) in corpus.iter().enumerate() {
        let prog = prepare(&c.program).map_err(|e| e.to_string())?;
        let oracle = bounded_sat(&c.program, &c.query, ORACLE_MAX);
        let engines = [("a1", &runs.a1[i]), ("a2", &runs.a2[i])];
        match &oracle {
            Ok(Some(_)) => {
                oracle_sat += 1;
                for (alg, r) in engines {
                    if !matches!(r, Ok(o) if o.verdict == Verdict::Sat) {
                        bad.push(format!("{}: oracle SAT but {alg} not", c.name));
                    }
                }
            }
            Ok(None) => {}
            Err(_) => over_budget += 1,
        }
        for (alg, r) in engines {
            let Ok(Outcome { forest: Some(f), .. }) = r else { continue };
            match witness(&prog, f) {
                Some(m) => {
                    checked += 1;
                    if !is_answer_set(&c.program, &m) {
                        bad.push(format!("{}: {alg} witness rejected", c.name));
                    }
                }
                None => blocked += 1,
            }
        }
    }
    let t = runs.elapsed + start.elapsed();
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    ensure(t < CORPUS_LIMIT, || format!("corpus run took {t:?}"))?;
    Ok(format!(
        "oracle SAT on {oracle_sat}, {checked} witnesses accepted, {blocked} blocked witnesses skipped, \
         {over_budget} over oracle budget, {t:.2?}"
    ))
}

fn criterion_7(corpus: &[CorpusProgram]) -> Check {
    let mut pairs = 0usize;
    for c in corpus {
        let prog = prepare(&c.program).map_err(|e| e.to_string())?;
        let all = enumerate(&prog, &RedundancyPolicy::default()).map_err(|e| e.to_string())?;
        let n = all.len();
        let rel: Vec<Vec<bool>> = all
            .iter()
            .map(|a| all.iter().map(|b| is_redundant(&prog, a, b)).collect())
            .collect();
        pairs += n * n;
        for i in 0..n {
            ensure(!rel[i][i], || format!("{}: unit {i} redundant to itself", c.name))?;
            for j in 0..n {
                if !rel[i][j] {
                    continue;
                }
                for l in 0..n {
                    ensure(!rel[j][l] || rel[i][l], || {
                        format!("{}: transitivity fails on {i}, {j}, {l}", c.name)
                    })?;
                }
            }
        }
        let kept = prune(&prog, &all);
        for a in &kept {
            for b in &kept {
                ensure(!is_redundant(&prog, a, b), || format!("{}: pruned set not dominance-free", c.name))?;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs checked over {} programs", corpus.len()))
}

fn criterion_8() -> Check {
    let program = parse(&repeated_shapes(SHAPE_RULES));
    let queries: Vec<String> = ["l0", "l1", "l2", "l3", "dead"].iter().map(|s| s.to_string()).collect();
    let policy = RedundancyPolicy {
        max_steps: SHAPE_STEPS,
        ..Default::default()
    };
    let row = bench_program("repeated", &program, &queries, &policy).map_err(|e| e.to_string())?;
    ensure(row.agree(), || "verdicts differ".into())?;
    ensure(row.a2_verdicts.iter().all(Option::is_some), || "a2 ran out of steps".into())?;
    // A run that exhausts its step budget makes a1_time a lower bound.
    let a1_out = row.a1_verdicts.iter().filter(|v| v.is_none()).count();
    let detail = format!(
        "{} rules; a1 {:.2?} for 5 queries ({a1_out} stopped at {SHAPE_STEPS} steps), a2 {:.2?} \
         (compile {:.2?} + queries {:.2?})",
        program.rules().len(),
        row.a1_time,
        row.a2_total(),
        row.a2_compile_time,
        row.a2_query_time
    );
    ensure(row.a2_total() <= row.a1_time, || detail.clone())?;
    Ok(detail)
}

#[test]
fn acceptance() {
    let corpus = corpus();
    let runs = run_corpus(&corpus);
    let results = [
        (1, "example 1 satisfiable with the expected model", criterion_1()),
        (2, "example 2 unsatisfiable through redundancy", criterion_2()),
        (3, "unit compilation of the Pr program", criterion_3()),
        (4, "final units are complete clash-free structures", criterion_4(&corpus)),
        (5, "both reasoners agree on the corpus", criterion_5(&corpus, &runs)),
        (6, "oracle and reasoners are consistent", criterion_6(&corpus, &runs)),
        (7, "redundancy is a strict order and pruning is dominance-free", criterion_7(&corpus)),
        (8, "compiled units beat the first reasoner on repeated shapes", criterion_8()),
    ];
    for (n, title, res) in &results {
        report(*n, title, res);
    }
    // The timing comparison is tracked, not enforced.
    let failed: Vec<u32> = results
        .iter()
        .filter(|(n, _, r)| *n != 8 && r.is_err())
        .map(|(n, _, _)| *n)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
