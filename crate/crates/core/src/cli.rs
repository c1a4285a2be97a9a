//! The `folp` command line: argument parsing and the five subcommands.
//!
//! Exit codes: 0 satisfiable, 1 unsatisfiable, 2 unknown (the search was
//! cut by a depth limit or a lowered redundancy bound), 3 for errors and 4
//! when the reasoners or the oracle contradict each other.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::bench::bench_program;
use crate::forest::to_dot;
use crate::oracle::{bounded_sat, is_answer_set, OracleError};
use crate::search::{prepare, witness, EngineError, Outcome, RedundancyPolicy, Verdict};
use crate::syntax::{parse_program, Folp, ParseError, Program, CO_PREFIX};
use crate::units::{self, CacheError, UnitSet};
use crate::{a1, a2};

pub const EXIT_ERROR: i32 = 3;
pub const EXIT_CONFLICT: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: reasoners disagree on `{pred}` (a1 {a1}, a2 {a2})")]
    Disagreement { pred: String, a1: Verdict, a2: Verdict },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Disagreement { .. } => EXIT_CONFLICT,
            _ => EXIT_ERROR,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "folp", version, about = "Satisfiability checking for forest logic programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a unary predicate is satisfiable.
    Check(CheckArgs),
    /// Enumerate and prune unit structures and write them to a cache.
    CompileUnits(CompileArgs),
    /// Compare the reasoners against the bounded oracle.
    Verify(VerifyArgs),
    /// Time both reasoners over a directory of programs.
    Bench(BenchArgs),
    /// Print the completion structure found for a predicate as Graphviz.
    ExportDot(DotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    A1,
    A2,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Replace the computed redundancy bound.
    #[arg(long)]
    pub k: Option<u64>,
    /// Never expand nodes deeper than this.
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// Search step budget per run.
    #[arg(long, default_value_t = RedundancyPolicy::default().max_steps)]
    pub max_steps: u64,
    /// Unit cache used by a2.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Compile units on the fly when a2 runs without a cache.
    #[arg(long)]
    pub auto_cache: bool,
    /// Single-task mode. The reasoners never run in parallel, so this only
    /// documents intent.
    #[arg(long)]
    pub deterministic: bool,
}

impl SearchArgs {
    pub fn policy(&self) -> RedundancyPolicy {
        RedundancyPolicy {
            override_k: self.k,
            max_depth: self.max_depth,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub program: PathBuf,
    #[arg(long, short)]
    pub pred: String,
    #[arg(long, value_enum, default_value_t = Alg::A1)]
    pub alg: Alg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    pub program: PathBuf,
    /// Where to write the cache. Defaults to the program path with the
    /// extension `units`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub program: PathBuf,
    #[arg(long, short)]
    pub pred: String,
    #[arg(long, value_enum, default_value_t = Alg::Both)]
    pub alg: Alg,
    /// Largest universe the oracle enumerates.
    #[arg(long, default_value_t = 3)]
    pub oracle_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Directory of `.folp` files, or individual files.
    pub corpus: Vec<PathBuf>,
    /// Predicates to query. Defaults to every unary predicate of each
    /// program.
    #[arg(long = "pred", short)]
    pub preds: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct DotArgs {
    pub program: PathBuf,
    #[arg(long, short)]
    pub pred: String,
    #[arg(long, value_enum, default_value_t = Alg::A1)]
    pub alg: Alg,
    /// Write the graph here instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

/// Parses `args` (without the program name) and runs the command, writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("folp".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Check(a) => cmd_check(&a, out),
        Command::CompileUnits(a) => cmd_compile_units(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::ExportDot(a) => cmd_export_dot(&a, out),
    }
}

pub fn read_program(path: &Path) -> Result<Program, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_program(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn put(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Write {
        path: "<stdout>".into(),
        source,
    })
}

/// A program together with whatever the requested reasoners found.
struct Session {
    program: Program,
    prog: Folp,
    units: Option<UnitSet>,
}

impl Session {
    fn open(path: &Path, alg: Alg, search: &SearchArgs) -> Result<Session, CliError> {
        let program = read_program(path)?;
        let prog = prepare(&program)?;
        let units = if alg == Alg::A1 {
            None
        } else if let Some(c) = &search.cache {
            Some(units::load(c, &program, &prog)?)
        } else if search.auto_cache {
            Some(units::compile_prepared(&program, &prog, &search.policy())?.0)
        } else {
            return Err(CliError::Usage(
                "a2 needs a unit cache: pass --cache <file> or --auto-cache".into(),
            ));
        };
        Ok(Session { program, prog, units })
    }

    fn run(&self, alg: Alg, pred: &str, policy: &RedundancyPolicy) -> Result<Vec<(&'static str, Outcome)>, CliError> {
        let mut res = vec![];
        if alg != Alg::A2 {
            res.push(("a1", a1::check_sat_compiled(&self.prog, pred, policy)?));
        }
        if let Some(u) = &self.units {
            res.push(("a2", a2::check_sat_prepared(&self.prog, &u.units, pred, policy)?));
        }
        if let [(_, x), (_, y)] = &res[..] {
            if x.verdict != y.verdict {
                return Err(CliError::Disagreement {
                    pred: pred.into(),
                    a1: x.verdict,
                    a2: y.verdict,
                });
            }
        }
        Ok(res)
    }
}

fn outcome_json(alg: &str, pred: &str, o: &Outcome) -> String {
    let s = &o.stats;
    let mut m = Map::new();
    m.insert("alg".into(), alg.into());
    m.insert("backtracks".into(), s.backtracks.into());
    m.insert("choice_points".into(), s.choice_points.into());
    m.insert("depth_bound".into(), o.depth_bound.into());
    m.insert("k".into(), o.k.into());
    m.insert("max_depth".into(), s.max_depth.into());
    m.insert("nodes".into(), s.nodes_created.into());
    m.insert("predicate".into(), pred.into());
    m.insert("steps".into(), s.steps.into());
    m.insert(
        "trace".into(),
        o.trace.iter().map(|t| t.to_string()).collect::<Vec<_>>().into(),
    );
    m.insert("unit_matches".into(), s.unit_matches.into());
    m.insert("unit_reuse".into(), s.unit_reuse.into());
    m.insert("units_tried".into(), s.units_tried.into());
    m.insert("verdict".into(), o.verdict.to_string().into());
    Value::Object(m).to_string()
}

fn outcome_text(alg: &str, o: &Outcome) -> Vec<String> {
    let s = &o.stats;
    let mut lines = vec![format!(
        "{alg}: {} (nodes {}, choice points {}, backtracks {}, max depth {}, k {}, depth bound {})",
        o.verdict, s.nodes_created, s.choice_points, s.backtracks, s.max_depth, o.k, o.depth_bound
    )];
    if alg == "a2" {
        lines.push(format!(
            "{alg}: units tried {}, matched {}, reused {}",
            s.units_tried, s.unit_matches, s.unit_reuse
        ));
    }
    lines.extend(o.trace.iter().map(|t| format!("{alg}: {t}")));
    lines
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let policy = a.search.policy();
    let s = Session::open(&a.program, a.alg, &a.search)?;
    let res = s.run(a.alg, &a.pred, &policy)?;
    for (alg, o) in &res {
        match a.format {
            Format::Json => put(out, &outcome_json(alg, &a.pred, o))?,
            Format::Text => {
                for l in outcome_text(alg, o) {
                    put(out, &l)?;
                }
            }
            Format::Dot => return Err(CliError::Usage("check does not print dot; use export-dot".into())),
        }
    }
    Ok(res[0].1.verdict.exit_code())
}

pub fn cmd_compile_units(a: &CompileArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let program = read_program(&a.program)?;
    let prog = prepare(&program)?;
    let (set, report) = units::compile_prepared(&program, &prog, &a.search.policy())?;
    let path = a.out.clone().unwrap_or_else(|| a.program.with_extension("units"));
    units::save(&path, &set, &prog)?;
    match a.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("cache".into(), path.display().to_string().into());
            m.insert("enumerated".into(), report.enumerated.into());
            m.insert("final".into(), report.finals.into());
            m.insert("redundant".into(), report.redundant.into());
            m.insert("unmatchable".into(), report.unmatchable.into());
            m.insert("retained".into(), report.retained.into());
            put(out, &Value::Object(m).to_string())?;
        }
        _ => {
            put(
                out,
                &format!(
                    "enumerated {}, unmatchable {}, redundant {}, retained {}, final {}",
                    report.enumerated, report.unmatchable, report.redundant, report.retained, report.finals
                ),
            )?;
            put(out, &format!("wrote {}", path.display()))?;
        }
    }
    Ok(0)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let policy = a.search.policy();
    let mut search = a.search.clone();
    search.auto_cache |= search.cache.is_none();
    let s = Session::open(&a.program, a.alg, &search)?;
    let res = s.run(a.alg, &a.pred, &policy)?;
    let oracle = bounded_sat(&s.program, &a.pred, a.oracle_max)?;
    let mut consistent = true;
    let mut rows: Vec<(String, String)> = vec![];
    for (alg, o) in &res {
        let (check, answer) = match &o.forest {
            None => ("-".to_string(), "-".to_string()),
            Some(f) => {
                let check = match a1::verify(&s.prog, f, o.k) {
                    Ok(()) => "ok".to_string(),
                    Err(v) => {
                        consistent = false;
                        format!("{} violations", v.len())
                    }
                };
                let answer = match witness(&s.prog, f) {
                    Some(i) if is_answer_set(&s.program, &i) => "accepted".to_string(),
                    Some(_) => {
                        consistent = false;
                        "rejected".to_string()
                    }
                    None => "skipped (structure has blocked nodes)".to_string(),
                };
                (check, answer)
            }
        };
        if oracle.is_some() && o.verdict == Verdict::Unsat {
            consistent = false;
        }
        rows.push((
            alg.to_string(),
            format!("verdict {}, structure check {check}, oracle on witness {answer}", o.verdict),
        ));
    }
    let found = match &oracle {
        Some(i) => format!("witness with {} elements", i.universe.len()),
        None => format!("no witness up to {} elements", a.oracle_max),
    };
    match a.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("consistent".into(), consistent.into());
            m.insert("oracle".into(), found.into());
            m.insert("oracle_max".into(), a.oracle_max.into());
            for (alg, row) in rows {
                m.insert(alg, row.into());
            }
            put(out, &Value::Object(m).to_string())?;
        }
        _ => {
            for (alg, row) in rows {
                put(out, &format!("{alg}: {row}"))?;
            }
            put(out, &format!("oracle: {found}"))?;
            put(out, &format!("consistent: {}", if consistent { "yes" } else { "no" }))?;
        }
    }
    Ok(if consistent { 0 } else { EXIT_CONFLICT })
}

fn corpus_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = vec![];
    for p in paths {
        if p.is_dir() {
            let rd = std::fs::read_dir(p).map_err(|source| CliError::Read {
                path: p.clone(),
                source,
            })?;
            let mut found: Vec<PathBuf> = rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "folp"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let policy = a.search.policy();
    for path in corpus_files(&a.corpus)? {
        let program = read_program(&path)?;
        let queries: Vec<String> = if a.preds.is_empty() {
            program
                .upreds()
                .iter()
                .filter(|p| !p.starts_with(CO_PREFIX))
                .cloned()
                .collect()
        } else {
            a.preds.iter().filter(|p| program.arity(p.as_str()) == Some(1)).cloned().collect()
        };
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let row = bench_program(&name, &program, &queries, &policy)?;
        if !row.agree() {
            let i = (0..queries.len())
                .find(|&i| row.a1_verdicts[i].is_some() && row.a2_verdicts[i].is_some() && row.a1_verdicts[i] != row.a2_verdicts[i])
                .unwrap_or(0);
            return Err(CliError::Disagreement {
                pred: queries[i].clone(),
                a1: row.a1_verdicts[i].unwrap(),
                a2: row.a2_verdicts[i].unwrap(),
            });
        }
        match a.format {
            Format::Text => put(
                out,
                &format!(
                    "{name}: a1 {:.3} ms, a2 compile {:.3} ms + query {:.3} ms, nodes {}/{}, units {}{}",
                    row.a1_time.as_secs_f64() * 1e3,
                    row.a2_compile_time.as_secs_f64() * 1e3,
                    row.a2_query_time.as_secs_f64() * 1e3,
                    row.a1_nodes,
                    row.a2_nodes,
                    row.units,
                    if row.timed_out() { ", timeout" } else { "" }
                ),
            )?,
            _ => put(out, &row.to_json())?,
        }
    }
    Ok(0)
}

pub fn cmd_export_dot(a: &DotArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.alg == Alg::Both {
        return Err(CliError::Usage("export-dot takes a single reasoner".into()));
    }
    let s = Session::open(&a.program, a.alg, &a.search)?;
    let res = s.run(a.alg, &a.pred, &a.search.policy())?;
    let o = &res[0].1;
    let Some(f) = &o.forest else {
        return Ok(o.verdict.exit_code());
    };
    let dot = to_dot(f, &s.prog);
    match &a.out {
        Some(p) => std::fs::write(p, dot).map_err(|source| CliError::Write {
            path: p.clone(),
            source,
        })?,
        None => write!(out, "{dot}").map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        })?,
    }
    Ok(o.verdict.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (vec![], vec![]);
        let code = run(args.iter().copied(), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn check_exit_codes() {
        let (c, out, _) = call(&["check", &data("ex1.folp"), "-p", "smember", "--alg", "both", "--auto-cache"]);
        assert_eq!(c, 0);
        assert!(out.contains("a1: SAT") && out.contains("a2: SAT"), "{out}");
        assert_eq!(call(&["check", &data("ex2.folp"), "-p", "smember"]).0, 1);
        assert_eq!(call(&["check", &data("ex2.folp"), "-p", "smember", "--k", "2"]).0, 2);
        let (c, _, err) = call(&["check", "no/such/file.folp", "-p", "p"]);
        assert!(c > 2 && err.contains("cannot read"), "{err}");
        assert_eq!(call(&["check", &data("pr.folp")]).0, EXIT_ERROR);
    }

    #[test]
    fn a2_needs_cache_or_auto() {
        let (c, _, err) = call(&["check", &data("pr.folp"), "-p", "p", "--alg", "a2"]);
        assert_eq!(c, EXIT_ERROR);
        assert!(err.contains("--auto-cache"));
    }

    #[test]
    fn json_is_stable() {
        let args = ["check", &data("ex2.folp"), "-p", "smember", "--format", "json"];
        let (_, a, _) = call(&args);
        let (_, b, _) = call(&args);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(a.trim()).unwrap();
        assert_eq!(v["verdict"], "UNSAT");
        assert_eq!(v["k"], 5);
    }
}
