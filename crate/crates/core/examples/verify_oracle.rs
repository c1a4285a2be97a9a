//! Checks a witness found by the first reasoner with the structure checker
//! and, when no node is blocked, with the answer set oracle. Also runs the
//! bounded oracle search.
//!
//! Run with `cargo run --example verify_oracle -- [path] [predicate]`.

use folp::a1;
use folp::oracle::{bounded_sat, is_answer_set};
use folp::search::{prepare, witness, RedundancyPolicy};
use folp::syntax::parse_program;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "crates/core/data/ex1.folp".into());
    let pred = args.next().unwrap_or_else(|| "smember".into());
    let text = std::fs::read_to_string(&path).expect("readable program");
    let program = parse_program(&text).expect("valid syntax");
    let prog = prepare(&program).expect("forest logic program");

    let o = a1::check_sat(&program, &pred, &RedundancyPolicy::default()).expect("a1 runs");
    println!("a1: {}", o.verdict);
    if let Some(f) = &o.forest {
        match a1::verify(&prog, f, o.k) {
            Ok(()) => println!("structure check: ok"),
            Err(v) => v.iter().for_each(|v| println!("structure check: {v}")),
        }
        match witness(&prog, f) {
            Some(m) => {
                let atoms: Vec<String> = m.atoms.iter().map(|a| a.to_string()).collect();
                println!("witness over {:?}: {}", m.universe, atoms.join(" "));
                println!("answer set: {}", is_answer_set(&program, &m));
            }
            None => println!("witness has blocked nodes, oracle check skipped"),
        }
    }
    match bounded_sat(&program, &pred, 3) {
        Ok(Some(m)) => println!("oracle: witness over {} elements", m.universe.len()),
        Ok(None) => println!("oracle: no witness up to 3 elements"),
        Err(e) => println!("oracle: {e}"),
    }
}
