//! Phase diagram of the symmetric cyclic model over the (alpha, beta)
//! rectangle: the persistence region is exactly alpha + beta < 2.
//!
//! Run with: cargo run --example sweep_dichotomy

use kolmo::classify::classify_3d;
use kolmo::lv::build_measure_tree;
use kolmo::model::{OutcomeKind, Tolerances};
use kolmo::zoo::{rps_model, RpsParams};

fn main() {
    let tol = Tolerances::default();
    let mut csv = String::from("alpha,beta,outcome,criterion\n");
    println!("rows: beta 0.95 down to 0.05; columns: alpha 1.05 to 1.95");
    for j in (0..10).rev() {
        let beta = 0.05 + j as f64 * 0.1;
        let mut line = String::new();
        for i in 0..10 {
            let alpha = 1.05 + i as f64 * 0.1;
            let model = rps_model(&RpsParams {
                alpha,
                beta,
                sigma: 0.5,
            })
            .unwrap();
            let table = build_measure_tree(&model, &tol).unwrap();
            let outcome = classify_3d(&table, &tol);
            let glyph = match outcome.kind {
                OutcomeKind::Persistence => '#',
                OutcomeKind::RpsBoundaryAttraction { .. } => '.',
                _ => '?',
            };
            line.push(glyph);
            csv.push_str(&format!(
                "{alpha},{beta},{},{}\n",
                outcome.kind.name(),
                outcome
                    .evidence
                    .criterion
                    .map(|c| c.to_string())
                    .unwrap_or_default()
            ));
        }
        println!("beta {beta:.2}  {line}");
    }
    let path = std::env::temp_dir().join("kolmo_dichotomy.csv");
    std::fs::write(&path, csv).unwrap();
    println!(
        "(# persistence, . boundary attraction); full grid in {}",
        path.display()
    );
}
