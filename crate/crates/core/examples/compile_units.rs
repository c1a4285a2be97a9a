//! Compiles the unit structures of a program and prints the retained ones.
//!
//! Run with `cargo run --example compile_units -- [path]`.

use folp::search::{prepare, RedundancyPolicy};
use folp::syntax::parse_program;
use folp::units::{compile, render_cache};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "crates/core/data/pr.folp".into());
    let text = std::fs::read_to_string(&path).expect("readable program");
    let program = parse_program(&text).expect("valid syntax");
    let prog = prepare(&program).expect("forest logic program");
    let (set, report) = compile(&program, &RedundancyPolicy::default()).expect("compiles");
    println!(
        "{} enumerated, {} unmatchable, {} redundant, {} retained, {} final",
        report.enumerated, report.unmatchable, report.redundant, report.retained, report.finals
    );
    for u in &set.units {
        let tag = if u.is_final(&prog) { "final" } else { "     " };
        println!("{tag} {}", u.describe(&prog));
    }
    print!("{}", render_cache(&set, &prog));
}
