mod common;

use common::{enumerate_sequences, forced};
use lghodge::les::{solve, ArrowFlag, ChaseStatus, ExactSequenceSpec};
use lghodge::random::random_sequence;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle_bound(spec: &ExactSequenceSpec) -> u64 {
    let known = spec
        .terms
        .iter()
        .filter_map(|t| t.dim)
        .chain(spec.arrows.iter().filter_map(|a| a.rank));
    known.max().unwrap_or(0) + 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solver_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hidden = random_sequence(&mut rng, 5, 3);
        let spec = &hidden.spec;
        let sol = solve(spec).unwrap();
        let all = enumerate_sequences(spec, oracle_bound(spec));
        prop_assert!(!all.is_empty());
        let dims = forced(all.iter().map(|(d, _)| d.clone()), spec.terms.len());
        let ranks = forced(all.iter().map(|(_, r)| r.clone()), spec.arrows.len());
        prop_assert_eq!(&sol.dims, &dims);
        prop_assert_eq!(&sol.ranks, &ranks);
        prop_assert_eq!(sol.is_solved(), all.len() == 1);
        if sol.is_solved() {
            prop_assert_eq!(sol.solved_dims(), hidden.dims.clone());
            prop_assert!(sol.satisfies(spec));
        }
    }

    #[test]
    fn more_information_never_loses_forced_values(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hidden = random_sequence(&mut rng, 5, 3);
        let before = solve(&hidden.spec).unwrap();
        let i = (seed as usize) % hidden.dims.len();
        let after = solve(&hidden.spec.clone().with_dim(i, hidden.dims[i])).unwrap();
        for (b, a) in before.dims.iter().zip(&after.dims) {
            if b.is_some() {
                prop_assert_eq!(b, a);
            }
        }
    }

    #[test]
    fn perturbed_specs_are_inconsistent_exactly_when_enumeration_is_empty(seed in any::<u64>(), bump in 1u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hidden = random_sequence(&mut rng, 4, 3);
        let i = (seed as usize) % hidden.dims.len();
        let spec = hidden.spec.clone().with_dim(i, hidden.dims[i] + bump);
        let sol = solve(&spec).unwrap();
        let all = enumerate_sequences(&spec, oracle_bound(&spec));
        prop_assert_eq!(matches!(sol.status, ChaseStatus::Inconsistent(_)), all.is_empty());
    }
}

#[test]
fn json_spec_with_flags() {
    let text = r#"{
        "terms": [{"label": "A", "dim": null}, {"label": "B", "dim": 4}, {"label": "C", "dim": null}],
        "arrows": [{"rank": null, "flags": ["injective"]}, {"rank": 1, "flags": []}]
    }"#;
    let spec = ExactSequenceSpec::from_json_str(text).unwrap();
    let sol = solve(&spec).unwrap();
    assert!(sol.is_solved());
    assert_eq!(sol.solved_dims(), vec![3, 4, 1]);
}

#[test]
fn contradictory_flags_are_rejected() {
    let spec = ExactSequenceSpec::new([("A", Some(2)), ("B", Some(2))])
        .with_flag(0, ArrowFlag::Zero)
        .with_flag(0, ArrowFlag::Injective);
    let bad = solve(&spec);
    assert!(bad.is_err() || matches!(bad.unwrap().status, ChaseStatus::Inconsistent(_)));
}
