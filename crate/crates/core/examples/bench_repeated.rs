//! Times both reasoners on the repeated-shapes family for growing rule
//! counts and prints one JSON line per size.
//!
//! Run with `cargo run --release --example bench_repeated -- [max_rules]`.

use folp::bench::bench_program;
use folp::corpus::repeated_shapes;
use folp::search::RedundancyPolicy;
use folp::syntax::parse_program;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    let queries: Vec<String> = ["l0", "l1", "l2", "l3", "dead"].iter().map(|s| s.to_string()).collect();
    for n in (4..=max).step_by(4) {
        let program = parse_program(&repeated_shapes(n)).expect("family parses");
        let row = bench_program(&format!("repeated-{n}"), &program, &queries, &RedundancyPolicy::default())
            .expect("family is valid");
        println!("{}", row.to_json());
    }
}
