//! Classify the symmetric cyclic competition model on both sides of the
//! persistence threshold.
//!
//! Run with: cargo run --example classify_rps

use kolmo::classify::classify_3d;
use kolmo::lv::build_measure_tree;
use kolmo::model::Tolerances;
use kolmo::zoo::{rps_model, rps_ode_trichotomy, RpsParams};

fn main() {
    let tol = Tolerances::default();
    for (alpha, beta) in [(1.2, 0.6), (1.6, 0.9), (1.3, 0.7)] {
        let p = RpsParams {
            alpha,
            beta,
            sigma: 0.5,
        };
        let model = rps_model(&p).unwrap();
        let table = build_measure_tree(&model, &tol).unwrap();
        let outcome = classify_3d(&table, &tol);

        println!("alpha = {alpha}, beta = {beta}, sigma = 0.5");
        println!("  deterministic flow: {:?}", rps_ode_trichotomy(&p));
        println!("  stochastic verdict: {}", outcome.kind.name());
        if let Some(c) = outcome.evidence.criterion {
            println!("  cyclic product criterion: {c:+.6}");
        }
        for row in table.rows() {
            let lambdas: Vec<String> = row.exponents.iter().map(|l| format!("{l:+.4}")).collect();
            println!(
                "  {:<8} lambda = ({})",
                row.support.to_string(),
                lambdas.join(", ")
            );
        }
        println!();
    }
}
