//! Empirical survivor-pattern frequencies for a bistable model: either of
//! the first two species can win, the third always dies.
//!
//! Run with: cargo run --release --example outcome_frequencies

use kolmo::classify::{attractor_probability_contract, classify_3d};
use kolmo::lv::build_measure_tree;
use kolmo::model::{AnyModel, Tolerances};
use kolmo::sim::{estimate_outcome_frequencies, SimConfig};
use kolmo::zoo::{figure1_model, Figure1Variant, FIGURE1_DEFAULT_NOISE};

fn main() {
    let model = match figure1_model(Figure1Variant::Ii, FIGURE1_DEFAULT_NOISE).unwrap() {
        AnyModel::Lv(m) => m,
        _ => unreachable!(),
    };
    let tol = Tolerances::default();
    let outcome = classify_3d(&build_measure_tree(&model, &tol).unwrap(), &tol);
    println!("analytic verdict: {}", outcome.kind.name());
    let contract = attractor_probability_contract(&outcome).unwrap();
    println!(
        "contract: patterns {:?} each with positive frequency, frequencies sum to one",
        contract
            .patterns
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );

    let cfg = SimConfig {
        t_final: 100.0,
        dt: 1e-3,
        seed: 12,
        ..SimConfig::default()
    };
    let trials = 60;
    let report = estimate_outcome_frequencies(&model, &[0.5, 0.5, 0.5], trials, &cfg).unwrap();
    println!("{trials} trials, horizon {}:", cfg.t_final);
    for (pattern, f) in report.frequencies() {
        println!("  survivors {pattern}: frequency {f:.3}");
    }
    if report.unresolved > 0 {
        println!("  unresolved: {}", report.unresolved);
    }
}
