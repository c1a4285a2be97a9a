//! Property tests over seeded random programs.

use folp::corpus::{random_program, Limits};
use folp::search::{prepare, RedundancyPolicy};
use folp::syntax::parse_program;
use folp::units::{enumerate, is_redundant, parse_cache, render_cache, UnitSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> Limits {
    Limits {
        constants: 1,
        unary: 2,
        binary: 1,
        rules: 4,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        let (_, p) = random_program(&mut ChaCha8Rng::seed_from_u64(seed), Limits::default());
        let again = parse_program(&p.canonical_text()).unwrap();
        prop_assert_eq!(again.canonical_text(), p.canonical_text());
    }

    #[test]
    fn caches_round_trip(seed in any::<u64>()) {
        let (_, p) = random_program(&mut ChaCha8Rng::seed_from_u64(seed), small());
        let prog = prepare(&p).unwrap();
        let policy = RedundancyPolicy { max_steps: 200_000, ..Default::default() };
        // Enumeration can be large; skip programs over the budget.
        if let Ok(units) = enumerate(&prog, &policy) {
            let set = UnitSet { fingerprint: "x".into(), units };
            prop_assert_eq!(parse_cache(&render_cache(&set, &prog), &prog).unwrap(), set.clone());
            for u in &set.units {
                prop_assert!(!is_redundant(&prog, u, u));
            }
        }
    }
}
