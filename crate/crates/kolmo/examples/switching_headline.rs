//! Two prey sharing a switching predator: the deterministic flow is not
//! permanent, yet the stochastic model persists. The closed-form exponent
//! table explains why (no prey-prey measure exists to carry the negative
//! predator exponent), and a short ensemble confirms it.
//!
//! Run with: cargo run --release --example switching_headline

use kolmo::classify::classify_3d;
use kolmo::model::{Subcommunity, Tolerances};
use kolmo::sim::{estimate_exponents, verify_classification, SimConfig};
use kolmo::zoo::{
    switching_exponent_table, switching_model, switching_ode_permanence, SwitchParams,
};

fn main() {
    let p = SwitchParams {
        r: 1.0,
        beta: 1.2,
        d: 0.5,
        c: 0.1,
        eps: 0.05,
    };
    let tol = Tolerances::default();

    println!(
        "deterministic permanence: {:?}",
        switching_ode_permanence(&p).unwrap()
    );

    let table = switching_exponent_table(&p, &tol).unwrap();
    for row in table.rows() {
        let lambdas: Vec<String> = row.exponents.iter().map(|l| format!("{l:+.4}")).collect();
        println!(
            "  {:<8} lambda = ({})",
            row.support.to_string(),
            lambdas.join(", ")
        );
    }
    let outcome = classify_3d(&table, &tol);
    println!("stochastic verdict: {}", outcome.kind.name());

    // Cross-check one closed form by simulation: the predator's invasion
    // rate against a single prey equals r - d - eps^2.
    let model = switching_model(&p).unwrap();
    let cfg = SimConfig {
        t_final: 2e3,
        dt: 1e-3,
        seed: 4,
        ..SimConfig::default()
    };
    let est = estimate_exponents(&model, &Subcommunity::singleton(0), &cfg).unwrap();
    println!(
        "predator invasion rate against prey 1: estimate {:+.4} vs closed form {:+.4}",
        est.exponents[2],
        p.r - p.d - p.eps * p.eps
    );

    let report = verify_classification(&model, &outcome, &cfg, 10).unwrap();
    for check in &report.checks {
        println!(
            "{} {} — {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
}
