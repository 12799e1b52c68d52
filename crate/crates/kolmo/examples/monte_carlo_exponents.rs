//! Estimate invasion exponents by simulating a boundary face and compare
//! them with the analytic linear-solve values.
//!
//! Run with: cargo run --release --example monte_carlo_exponents

use kolmo::lv::build_measure_tree;
use kolmo::model::{Subcommunity, Tolerances};
use kolmo::sim::{estimate_exponents, SimConfig};
use kolmo::zoo::{rps_model, RpsParams};

fn main() {
    let model = rps_model(&RpsParams {
        alpha: 1.2,
        beta: 0.6,
        sigma: 0.5,
    })
    .unwrap();
    let support = Subcommunity::singleton(0);

    let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
    let analytic = table.row(&support).unwrap();

    let cfg = SimConfig {
        t_final: 5e3,
        dt: 1e-3,
        seed: 1,
        ..SimConfig::default()
    };
    let estimate = estimate_exponents(&model, &support, &cfg).unwrap();
    let se = estimate.std_errors.as_ref().unwrap();

    println!("monoculture of species 1, horizon {}", cfg.t_final);
    println!(
        "{:<10} {:>10} {:>12} {:>10}",
        "species", "analytic", "estimate", "se"
    );
    for i in 0..3 {
        println!(
            "{:<10} {:>10.4} {:>12.4} {:>10.2e}",
            i + 1,
            analytic.exponents[i],
            estimate.exponents[i],
            se[i]
        );
    }
    println!(
        "resident mean: estimate {:.4} vs analytic {:.4}",
        estimate.mean[0], analytic.mean[0]
    );
}
