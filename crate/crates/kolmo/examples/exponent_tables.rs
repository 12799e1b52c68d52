//! Walk the nine standard three-species panels: build each analytic
//! exponent table and print the resulting verdict.
//!
//! Panel (vii) has product interaction terms, so it is not Lotka-Volterra
//! and its exponents are only available by simulation; panel (vi) violates
//! the self-limitation signs and its single-predator face has a singular
//! restriction, which the solver reports rather than glossing over.
//!
//! Run with: cargo run --example exponent_tables

use kolmo::classify::classify_3d;
use kolmo::lv::build_measure_tree;
use kolmo::model::{validate_lv, AnyModel, OutcomeKind, Tolerances};
use kolmo::zoo::{figure1_model, Figure1Variant, FIGURE1_DEFAULT_NOISE};

fn main() {
    let tol = Tolerances::default();
    for variant in Figure1Variant::ALL {
        print!("panel ({:<4}): ", variant.name());
        let model = figure1_model(variant, FIGURE1_DEFAULT_NOISE).unwrap();
        let lv = match &model {
            AnyModel::Lv(lv) => lv,
            AnyModel::General(_) => {
                println!("non-polynomial drift; use the Monte Carlo estimator");
                continue;
            }
        };
        let warnings = validate_lv(lv);
        match build_measure_tree(lv, &tol) {
            Ok(table) => {
                let outcome = classify_3d(&table, &tol);
                let detail = match &outcome.kind {
                    OutcomeKind::AttractorSet(ms) => {
                        let s: Vec<String> = ms.iter().map(|m| m.support.to_string()).collect();
                        format!(" -> {}", s.join(", "))
                    }
                    _ => String::new(),
                };
                println!(
                    "{}{} (case {})",
                    outcome.kind.name(),
                    detail,
                    outcome.evidence.case_id.as_deref().unwrap_or("-")
                );
            }
            Err(e) => println!("analysis stops: {e}"),
        }
        for v in warnings.violations {
            println!("              note: {v}");
        }
    }
}
