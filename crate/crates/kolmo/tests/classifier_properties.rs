//! Property tests of the classifier: totality, agreement with the
//! brute-force oracle, and agreement between the decision list and the
//! theorem-walk route.

mod common;

use common::{oracle_classify, outcome_supports, random_lv, OracleOutcome};
use kolmo::classify::{classify_3d, match_case, DecisionOutcome};
use kolmo::lv::build_measure_tree;
use kolmo::model::{OutcomeKind, Tolerances};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kinds_match(outcome: &OutcomeKind, oracle: &OracleOutcome) -> bool {
    match (outcome, oracle) {
        (OutcomeKind::AllExtinct, OracleOutcome::AllExtinct) => true,
        (OutcomeKind::Persistence, OracleOutcome::Persistence) => true,
        (OutcomeKind::RpsBoundaryAttraction { .. }, OracleOutcome::RpsBoundary) => true,
        (OutcomeKind::AttractorSet(_), OracleOutcome::Attractors(supports)) => {
            &outcome_supports(outcome) == supports
        }
        (OutcomeKind::Degenerate(_), OracleOutcome::Degenerate) => true,
        _ => false,
    }
}

#[test]
fn classifier_agrees_with_oracle_on_seeded_models() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 1500 {
        let model = random_lv(&mut rng);
        let oracle = oracle_classify(&model, tol.tol_zero);
        if oracle == OracleOutcome::Degenerate {
            continue;
        }
        let table = build_measure_tree(&model, &tol).expect("tables build for sampled models");
        let outcome = classify_3d(&table, &tol);
        assert!(
            kinds_match(&outcome.kind, &oracle),
            "mismatch: classifier {:?} vs oracle {:?}\nmodel: {:?}",
            outcome.kind.name(),
            oracle,
            model
        );
        checked += 1;
    }
}

#[test]
fn decision_list_always_matches_some_case() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    while checked < 1000 {
        let model = random_lv(&mut rng);
        if oracle_classify(&model, tol.tol_zero) == OracleOutcome::Degenerate {
            continue;
        }
        let table = build_measure_tree(&model, &tol).unwrap();
        let matched = match_case(&table, &tol);
        assert!(
            matched.is_some(),
            "no decision-list entry fits the sign pattern of {model:?}"
        );
        checked += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Totality: a non-degenerate table always yields exactly one definitive
    /// verdict, and AllExtinct appears exactly when nothing grows at the
    /// origin.
    #[test]
    fn classify_is_total_and_all_extinct_is_characterized(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_lv(&mut rng);
        if oracle_classify(&model, tol.tol_zero) == OracleOutcome::Degenerate {
            return Ok(());
        }
        let table = build_measure_tree(&model, &tol).unwrap();
        let outcome = classify_3d(&table, &tol);
        prop_assert!(!matches!(outcome.kind, OutcomeKind::Degenerate(_)));
        let max_origin = table
            .origin()
            .exponents
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let is_all_extinct = matches!(outcome.kind, OutcomeKind::AllExtinct);
        prop_assert_eq!(is_all_extinct, max_origin < -tol.tol_zero);
        if is_all_extinct {
            prop_assert_eq!(table.rows().count(), 1);
        }
        // Attractor lists respect size and non-nesting constraints.
        if let OutcomeKind::AttractorSet(ms) = &outcome.kind {
            prop_assert!(!ms.is_empty() && ms.len() <= 3);
            for a in ms {
                for b in ms {
                    if a.support != b.support {
                        prop_assert!(!a.support.is_subset_of(&b.support));
                    }
                }
            }
        }
    }

    /// The data-driven decision list and the theorem walk always prescribe
    /// the same verdict.
    #[test]
    fn decision_list_agrees_with_theorem_walk(seed in any::<u64>()) {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_lv(&mut rng);
        if oracle_classify(&model, tol.tol_zero) == OracleOutcome::Degenerate {
            return Ok(());
        }
        let table = build_measure_tree(&model, &tol).unwrap();
        let outcome = classify_3d(&table, &tol);
        let case = match_case(&table, &tol).expect("a case must match");
        match case.outcome {
            DecisionOutcome::AllExtinct => {
                prop_assert!(matches!(outcome.kind, OutcomeKind::AllExtinct))
            }
            DecisionOutcome::Persistence => {
                prop_assert!(matches!(outcome.kind, OutcomeKind::Persistence))
            }
            DecisionOutcome::RpsByCriterion => {
                let settled_by_criterion = matches!(
                    outcome.kind,
                    OutcomeKind::Persistence | OutcomeKind::RpsBoundaryAttraction { .. }
                );
                prop_assert!(settled_by_criterion);
            }
            DecisionOutcome::Attractors(supports) => {
                let mut declared: Vec<Vec<usize>> =
                    supports.iter().map(|s| s.members().to_vec()).collect();
                declared.sort();
                prop_assert_eq!(outcome_supports(&outcome.kind), declared);
            }
        }
    }
}

/// Monotone existence: tabulated singles grow at the origin and tabulated
/// pairs satisfy the planar coexistence conditions, re-checked from raw
/// exponents.
#[test]
fn tabulated_rows_recheck_their_existence_conditions() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 500 {
        let model = random_lv(&mut rng);
        if oracle_classify(&model, tol.tol_zero) == OracleOutcome::Degenerate {
            continue;
        }
        let table = build_measure_tree(&model, &tol).unwrap();
        let origin = table.origin();
        for row in table.rows() {
            match row.support.len() {
                0 => {}
                1 => {
                    let i = row.support.members()[0];
                    assert!(origin.exponents[i] > 0.0);
                }
                2 => {
                    let (i, j) = (row.support.members()[0], row.support.members()[1]);
                    // At least one single on the face exists and every
                    // existing one is invadable by the other face species.
                    let mut any = false;
                    for (u, v) in [(i, j), (j, i)] {
                        if origin.exponents[u] > 0.0 {
                            any = true;
                            let single = table
                                .row(&kolmo::Subcommunity::singleton(u))
                                .expect("existing single is tabulated");
                            assert!(single.exponents[v] > 0.0);
                        }
                    }
                    assert!(any);
                }
                _ => panic!("full-support rows must not be tabulated"),
            }
        }
        checked += 1;
    }
}
