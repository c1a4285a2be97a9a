//! Runs both reasoners and the bounded oracle over a seeded random corpus
//! and prints one line per program.
//!
//! Run with `cargo run --release --example cross_check -- [seed] [count]`.

use folp::corpus::{generate, Limits};
use folp::oracle::{bounded_sat, is_answer_set};
use folp::search::{RedundancyPolicy, Verdict};
use folp::{a1, a2};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let policy = RedundancyPolicy::with_k(5);
    let mut disagreements = 0;
    for item in generate(seed, count, Limits::default()) {
        let t = std::time::Instant::now();
        let (r1, r2) = match (
            a1::check_sat(&item.program, &item.query, &policy),
            a2::check_sat(&item.program, &item.query, &policy),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                println!("!! {} error a1={:?} a2={:?}\n{}", item.name, a.err(), b.err(), item.text);
                disagreements += 1;
                continue;
            }
        };
        let oracle = bounded_sat(&item.program, &item.query, 3);
        let witness_ok = match &r1.forest {
            Some(f) => {
                let prog = folp::search::prepare(&item.program).unwrap();
                match f.induced_interpretation(&prog) {
                    Ok(i) => if is_answer_set(&item.program, &i) { "model" } else { "NOT-A-MODEL" },
                    Err(_) => "blocked",
                }
            }
            None => "-",
        };
        let o = match &oracle {
            Ok(Some(_)) => "oracle-sat",
            Ok(None) => "oracle-none",
            Err(_) => "oracle-budget",
        };
        let bad = r1.verdict != r2.verdict
            || (matches!(oracle, Ok(Some(_))) && (r1.verdict != Verdict::Sat || r2.verdict != Verdict::Sat))
            || witness_ok == "NOT-A-MODEL";
        if bad {
            disagreements += 1;
        }
        println!(
            "{} {} a1={} a2={} {o} {witness_ok} {:?}{}",
            if bad { "!!" } else { "  " },
            item.name,
            r1.verdict,
            r2.verdict,
            t.elapsed(),
            if bad { format!("\n{}", item.text) } else { String::new() }
        );
    }
    println!("{disagreements} problems");
}
