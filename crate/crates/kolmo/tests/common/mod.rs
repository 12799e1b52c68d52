//! Shared test support: an independent brute-force classifier and a random
//! model generator.
//!
//! The oracle here deliberately re-derives everything from the model with
//! its own arithmetic (Cramer-rule solves, literal sign conditions over all
//! subcommunities) so that it shares no code path with the library's
//! partial-pivot solver, existence recursion, or decision list.

#![allow(dead_code)]

use kolmo::model::{LVModel, NoiseCovariance};
use rand::Rng;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    AllExtinct,
    Persistence,
    /// Sorted zero-based supports of the attracting boundary measures.
    Attractors(Vec<Vec<usize>>),
    RpsBoundary,
    Degenerate,
}

struct Measure {
    support: Vec<usize>,
    lambda: [f64; 3],
}

/// Brute-force three-species classification straight from the definitions.
pub fn oracle_classify(model: &LVModel, tol: f64) -> OracleOutcome {
    assert_eq!(model.n(), 3);
    let m = model.m();
    let a = |i: usize, j: usize| model.a(i, j);
    let half = |i: usize| model.sigma().diag(i) / 2.0;

    let lambda_at = |mean: &[f64; 3]| -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = m[i] + (0..3).map(|j| a(i, j) * mean[j]).sum::<f64>() - half(i);
        }
        out
    };

    let origin = lambda_at(&[0.0, 0.0, 0.0]);
    if origin.iter().any(|l| l.abs() <= tol) {
        return OracleOutcome::Degenerate;
    }

    let mut measures = vec![Measure {
        support: vec![],
        lambda: origin,
    }];

    // Singles: one ergodic measure per species that grows at the origin.
    let mut single_lambda: [Option<[f64; 3]>; 3] = [None, None, None];
    for i in 0..3 {
        if origin[i] > 0.0 {
            let xbar = (half(i) - m[i]) / a(i, i);
            assert!(xbar > 0.0, "single-species mean must be interior");
            let mut mean = [0.0; 3];
            mean[i] = xbar;
            let lambda = lambda_at(&mean);
            for j in 0..3 {
                if j != i && lambda[j].abs() <= tol {
                    return OracleOutcome::Degenerate;
                }
            }
            single_lambda[i] = Some(lambda);
            measures.push(Measure {
                support: vec![i],
                lambda,
            });
        }
    }

    // Pairs: the planar coexistence disjunction, written out literally.
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut exists = false;
            for (u, v) in [(i, j), (j, i)] {
                let lu = origin[u];
                let lv_origin = origin[v];
                if lu > 0.0 {
                    if let Some(lam_u) = single_lambda[u] {
                        if lam_u[v] > 0.0 {
                            if lv_origin < 0.0 {
                                exists = true;
                            } else if lv_origin > 0.0 {
                                if let Some(lam_v) = single_lambda[v] {
                                    if lam_v[u] > 0.0 {
                                        exists = true;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            if !exists {
                continue;
            }
            // Cramer's rule on the restricted 2x2 system.
            let det = a(i, i) * a(j, j) - a(i, j) * a(j, i);
            if det.abs() < 1e-14 {
                return OracleOutcome::Degenerate;
            }
            let bi = half(i) - m[i];
            let bj = half(j) - m[j];
            let xi = (bi * a(j, j) - a(i, j) * bj) / det;
            let xj = (a(i, i) * bj - bi * a(j, i)) / det;
            assert!(
                xi > 0.0 && xj > 0.0,
                "coexisting pair must have an interior mean, got ({xi}, {xj})"
            );
            let mut mean = [0.0; 3];
            mean[i] = xi;
            mean[j] = xj;
            let lambda = lambda_at(&mean);
            let k = 3 - i - j;
            if lambda[k].abs() <= tol {
                return OracleOutcome::Degenerate;
            }
            measures.push(Measure {
                support: vec![i, j],
                lambda,
            });
        }
    }

    // Cyclic invasion structure among the three monocultures.
    if origin.iter().all(|l| *l > 0.0) {
        let s = |res: usize, inv: usize| single_lambda[res].unwrap()[inv];
        let type_a =
            s(1, 0).min(s(2, 1)).min(s(0, 2)) > 0.0 && 0.0 > s(2, 0).max(s(0, 1)).max(s(1, 2));
        let type_b =
            s(1, 0).max(s(2, 1)).max(s(0, 2)) < 0.0 && 0.0 < s(2, 0).min(s(0, 1)).min(s(1, 2));
        if type_a || type_b {
            let criterion = s(1, 0) * s(2, 1) * s(0, 2) + s(2, 0) * s(0, 1) * s(1, 2);
            let scale = (s(1, 0) * s(2, 1) * s(0, 2))
                .abs()
                .max((s(2, 0) * s(0, 1) * s(1, 2)).abs());
            if criterion.abs() <= tol * scale {
                return OracleOutcome::Degenerate;
            }
            return if criterion > 0.0 {
                OracleOutcome::Persistence
            } else {
                OracleOutcome::RpsBoundary
            };
        }
    }

    if origin.iter().all(|l| *l < 0.0) {
        return OracleOutcome::AllExtinct;
    }

    // Persistence: every boundary measure has an invader.
    let invadable = |mu: &Measure| {
        (0..3)
            .filter(|k| !mu.support.contains(k))
            .any(|k| mu.lambda[k] > 0.0)
    };
    if measures.iter().all(invadable) {
        return OracleOutcome::Persistence;
    }

    // Otherwise, the attractors: boundary measures with no invader.
    let mut attractors: Vec<Vec<usize>> = measures
        .iter()
        .filter(|mu| {
            (0..3)
                .filter(|k| !mu.support.contains(k))
                .all(|k| mu.lambda[k] < 0.0)
        })
        .map(|mu| mu.support.clone())
        .collect();
    attractors.sort();
    assert!(!attractors.is_empty());
    OracleOutcome::Attractors(attractors)
}

/// Random three-species Lotka-Volterra model with self-limitation and a mix
/// of competitive and prey-predator pairs (never mutualism).
pub fn random_lv<R: Rng>(rng: &mut R) -> LVModel {
    let m: Vec<f64> = (0..3).map(|_| rng.random_range(0.2..1.4)).collect();
    let mut rows = vec![vec![0.0; 3]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = -rng.random_range(0.4..1.6);
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if rng.random_bool(0.5) {
                // Competition.
                rows[i][j] = -rng.random_range(0.0..1.4);
                rows[j][i] = -rng.random_range(0.0..1.4);
            } else {
                // Predation; the random direction decides who eats whom.
                let (pred, prey) = if rng.random_bool(0.5) { (i, j) } else { (j, i) };
                rows[pred][prey] = rng.random_range(0.05..0.9);
                rows[prey][pred] = -rng.random_range(0.1..1.4);
            }
        }
    }
    let sigma: Vec<f64> = (0..3).map(|_| rng.random_range(0.02..0.4)).collect();
    LVModel::new(m, &rows, NoiseCovariance::diagonal(&sigma).unwrap()).unwrap()
}

/// Sorted zero-based supports of an outcome's attractor list.
pub fn outcome_supports(kind: &kolmo::OutcomeKind) -> Vec<Vec<usize>> {
    let mut supports: Vec<Vec<usize>> = match kind {
        kolmo::OutcomeKind::AttractorSet(ms) => {
            ms.iter().map(|m| m.support.members().to_vec()).collect()
        }
        _ => Vec::new(),
    };
    supports.sort();
    supports
}
