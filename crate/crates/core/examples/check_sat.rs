//! Runs both reasoners on the bundled example programs and prints the
//! verdicts, statistics and redundancy traces.
//!
//! Run with `cargo run --example check_sat`.

use folp::search::{Outcome, RedundancyPolicy};
use folp::syntax::parse_program;
use folp::{a1, a2};

const PROGRAMS: [(&str, &str, &str); 4] = [
    ("ex1", include_str!("../data/ex1.folp"), "smember"),
    ("ex2", include_str!("../data/ex2.folp"), "smember"),
    ("pr", include_str!("../data/pr.folp"), "p"),
    ("pr", include_str!("../data/pr.folp"), "q"),
];

fn show(alg: &str, o: &Outcome) {
    println!(
        "  {alg}: {} after {} nodes, {} backtracks (k = {})",
        o.verdict, o.stats.nodes_created, o.stats.backtracks, o.k
    );
    for t in &o.trace {
        println!("      {t}");
    }
}

fn main() {
    let policy = RedundancyPolicy::default();
    for (name, text, pred) in PROGRAMS {
        let program = parse_program(text).expect("bundled program parses");
        println!("{name} / {pred}");
        show("a1", &a1::check_sat(&program, pred, &policy).expect("a1 runs"));
        show("a2", &a2::check_sat(&program, pred, &policy).expect("a2 runs"));
    }
}
