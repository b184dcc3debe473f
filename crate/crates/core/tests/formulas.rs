mod support;

use std::collections::BTreeMap;

use defcyc_core::aut::{automorphism_group, orbit, pointwise_stabilizer};
use defcyc_core::folang::{cayley_formula, print_formula, FormulaParser};
use defcyc_core::group::catalog_up_to;
use defcyc_core::{Dialect, Evaluator, FiniteGroup, Subset};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::logic::{equivalents, naive_holds, random_formula};

fn small_groups() -> Vec<FiniteGroup> {
    catalog_up_to(6).unwrap()
}

fn naive_solutions(g: &FiniteGroup, f: &defcyc_core::Formula, s: usize) -> Vec<usize> {
    let params = BTreeMap::from([("s".to_string(), s)]);
    g.elements().filter(|&x| naive_holds(g, f, &mut vec![("x".to_string(), x)], &params)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn compiled_evaluator_matches_naive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let groups = small_groups();
        let g = &groups[rng.gen_range(0..groups.len())];
        let s = rng.gen_range(0..g.order());
        let f = random_formula(&mut rng, 4);
        let expected = naive_solutions(g, &f, s);
        let eval = Evaluator::new(g).with_param("s", s);
        let got = eval.solutions(&f, "x").unwrap();
        prop_assert_eq!(got.as_slice(), &expected[..], "{} in {}", f, g.name());
        for (label, rewritten) in equivalents(&f) {
            let got = eval.solutions(&rewritten, "x").unwrap();
            prop_assert_eq!(got.as_slice(), &expected[..], "{}: {}", label, rewritten);
            prop_assert_eq!(naive_solutions(g, &rewritten, s), expected.clone(), "naive {}", label);
        }
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 4);
        for dialect in [Dialect::Multiplicative, Dialect::Additive] {
            let text = print_formula(&f, dialect);
            let back = FormulaParser::new(dialect).params(["s"]).parse(&text);
            prop_assert_eq!(back.as_ref(), Ok(&f), "{:?}: {}", dialect, text);
        }
    }
}

#[test]
fn cayley_solutions_are_stabilizer_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in catalog_up_to(8).unwrap() {
        let aut = automorphism_group(&g).unwrap();
        for _ in 0..6 {
            let bits = rng.gen_range(0..(1u64 << g.order()));
            let s = Subset::from_bits(g.order(), bits);
            let target = rng.gen_range(0..g.order());
            let cf = cayley_formula(&g, &s, target).unwrap();
            let sols = Evaluator::new(&g).with_params(cf.params.clone()).solutions(&cf.formula, &cf.free_var).unwrap();
            let expected = orbit(&pointwise_stabilizer(&aut, &s), target);
            assert_eq!(sols, expected, "{} S={:?} g={target}", g.name(), s.as_slice());
        }
    }
}
