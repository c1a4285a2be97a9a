//! Prints the completion structure found for a predicate in Graphviz
//! format. Blocked nodes are labelled with their blocker.
//!
//! Run with `cargo run --example export_dot -- [path] [predicate] | dot -Tsvg > out.svg`.

use folp::forest::to_dot;
use folp::search::{prepare, RedundancyPolicy};
use folp::syntax::parse_program;
use folp::a2;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "crates/core/data/pr.folp".into());
    let pred = args.next().unwrap_or_else(|| "p".into());
    let text = std::fs::read_to_string(&path).expect("readable program");
    let program = parse_program(&text).expect("valid syntax");
    let prog = prepare(&program).expect("forest logic program");
    let o = a2::check_sat(&program, &pred, &RedundancyPolicy::default()).expect("a2 runs");
    match o.forest {
        Some(f) => print!("{}", to_dot(&f, &prog)),
        None => eprintln!("{pred} is {}", o.verdict),
    }
}
