//! Timing both reasoners on the same programs.

use std::time::{Duration, Instant};

use crate::search::{prepare, EngineError, RedundancyPolicy, Verdict};
use crate::syntax::Program;
use crate::units::compile_prepared;
use crate::{a1, a2};

/// One program of a benchmark run. Times are totals over all queries.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub queries: Vec<String>,
    pub a1_time: Duration,
    pub a2_compile_time: Duration,
    pub a2_query_time: Duration,
    pub a1_nodes: u64,
    pub a2_nodes: u64,
    pub units: usize,
    /// Verdicts per query, `None` where the step budget ran out.
    pub a1_verdicts: Vec<Option<Verdict>>,
    pub a2_verdicts: Vec<Option<Verdict>>,
}

impl BenchRow {
    pub fn a2_total(&self) -> Duration {
        self.a2_compile_time + self.a2_query_time
    }

    pub fn timed_out(&self) -> bool {
        self.a1_verdicts.iter().chain(&self.a2_verdicts).any(Option::is_none)
    }

    /// Verdicts agree wherever both reasoners finished.
    pub fn agree(&self) -> bool {
        self.a1_verdicts
            .iter()
            .zip(&self.a2_verdicts)
            .all(|(a, b)| a.is_none() || b.is_none() || a == b)
    }

    /// Line-delimited record with sorted keys.
    pub fn to_json(&self) -> String {
        let v = |vs: &[Option<Verdict>]| {
            vs.iter()
                .map(|v| v.map(|v| v.to_string()).unwrap_or_else(|| "TIMEOUT".into()))
                .collect::<Vec<_>>()
        };
        let mut m = serde_json::Map::new();
        m.insert("a1_ms".into(), ms(self.a1_time).into());
        m.insert("a1_nodes".into(), self.a1_nodes.into());
        m.insert("a1_verdicts".into(), v(&self.a1_verdicts).into());
        m.insert("a2_compile_ms".into(), ms(self.a2_compile_time).into());
        m.insert("a2_nodes".into(), self.a2_nodes.into());
        m.insert("a2_query_ms".into(), ms(self.a2_query_time).into());
        m.insert("a2_verdicts".into(), v(&self.a2_verdicts).into());
        m.insert("program".into(), self.name.clone().into());
        m.insert("queries".into(), self.queries.clone().into());
        m.insert("timeout".into(), self.timed_out().into());
        m.insert("units".into(), self.units.into());
        serde_json::Value::Object(m).to_string()
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn budgeted<T>(r: Result<T, EngineError>) -> Result<Option<T>, EngineError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(EngineError::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs every query with the first reasoner, then compiles units once and
/// runs every query with the second.
pub fn bench_program(
    name: &str,
    program: &Program,
    queries: &[String],
    policy: &RedundancyPolicy,
) -> Result<BenchRow, EngineError> {
    let prog = prepare(program)?;
    let mut row = BenchRow {
        name: name.to_string(),
        queries: queries.to_vec(),
        a1_time: Duration::ZERO,
        a2_compile_time: Duration::ZERO,
        a2_query_time: Duration::ZERO,
        a1_nodes: 0,
        a2_nodes: 0,
        units: 0,
        a1_verdicts: vec![],
        a2_verdicts: vec![],
    };
    let t = Instant::now();
    for q in queries {
        let o = budgeted(a1::check_sat_compiled(&prog, q, policy))?;
        row.a1_nodes += o.as_ref().map_or(0, |o| o.stats.nodes_created);
        row.a1_verdicts.push(o.map(|o| o.verdict));
    }
    row.a1_time = t.elapsed();
    let t = Instant::now();
    let compiled = budgeted(compile_prepared(program, &prog, policy))?;
    row.a2_compile_time = t.elapsed();
    let Some((set, _)) = compiled else {
        row.a2_verdicts = vec![None; queries.len()];
        return Ok(row);
    };
    row.units = set.units.len();
    let t = Instant::now();
    for q in queries {
        let o = budgeted(a2::check_sat_prepared(&prog, &set.units, q, policy))?;
        row.a2_nodes += o.as_ref().map_or(0, |o| o.stats.nodes_created);
        row.a2_verdicts.push(o.map(|o| o.verdict));
    }
    row.a2_query_time = t.elapsed();
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn rows_agree_on_examples() {
        for (name, src, q) in [
            ("ex1", include_str!("../data/ex1.folp"), "smember"),
            ("ex2", include_str!("../data/ex2.folp"), "smember"),
            ("pr", include_str!("../data/pr.folp"), "p"),
        ] {
            let row = bench_program(name, &parse_program(src).unwrap(), &[q.to_string()], &RedundancyPolicy::default())
                .unwrap();
            assert!(row.agree() && !row.timed_out(), "{name}");
            let json: serde_json::Value = serde_json::from_str(&row.to_json()).unwrap();
            let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn tiny_budget_marks_timeout() {
        let p = parse_program(include_str!("../data/ex2.folp")).unwrap();
        let pol = RedundancyPolicy {
            max_steps: 10,
            ..Default::default()
        };
        let row = bench_program("ex2", &p, &["smember".into()], &pol).unwrap();
        assert!(row.timed_out());
    }
}
