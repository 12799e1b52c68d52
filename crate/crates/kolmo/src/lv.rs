//! Analytic boundary means and external Lyapunov exponents for
//! Lotka-Volterra drift.
//!
//! For an ergodic measure `μ` with species support `I`, the mean vector
//! solves the linear system
//!
//! ```text
//! m_i + Σ_j a_ij x̄_j − σ_ii/2 = 0   for i ∈ I,     x̄_i = 0 for i ∉ I,
//! ```
//!
//! and every exponent is then the same affine expression evaluated at `x̄`:
//!
//! ```text
//! λ_i(μ) = m_i + Σ_j a_ij x̄_j − σ_ii/2.
//! ```
//!
//! Supported species get exactly zero (up to solver round-off); the others
//! get their invasion rates. [`build_measure_tree`] runs the existence
//! recursion over supports: a single-species measure exists when its origin
//! exponent is positive, and a two-species measure exists when the face
//! restricted to the pair satisfies the planar coexistence sign conditions.
//! Only boundary measures are tabulated; persistence of the full community
//! is decided downstream from boundary data alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::model::{ErgodicMeasureInfo, LVModel, Subcommunity, Tolerances};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LvAnalysisError {
    #[error("restricted interaction matrix for support {support} is singular (condition {condition:.3e})")]
    SingularSystem {
        support: Subcommunity,
        condition: f64,
    },
    #[error("boundary mean for support {support} leaves the open face: {mean:?}")]
    NonpositiveMean {
        support: Subcommunity,
        mean: Vec<f64>,
    },
    #[error("measure tree construction is limited to 3 species, got {n}")]
    TooManySpecies { n: usize },
}

/// `λ_i(δ*) = m_i − σ_ii/2`: per-capita growth rates at the origin.
pub fn exponents_at_origin(model: &LVModel) -> Vec<f64> {
    (0..model.n())
        .map(|i| model.m()[i] - model.sigma().diag(i) / 2.0)
        .collect()
}

/// Solve the boundary-mean system for `support`; entries off the support are
/// zero, entries on it must come out strictly positive.
pub fn solve_boundary_means(
    model: &LVModel,
    support: &Subcommunity,
    tol: &Tolerances,
) -> Result<Vec<f64>, LvAnalysisError> {
    let n = model.n();
    let members = support.members();
    let k = members.len();
    assert!(k > 0, "boundary means are defined for nonempty supports");

    let mut sub = vec![0.0; k * k];
    let mut rhs = vec![0.0; k];
    for (r, &i) in members.iter().enumerate() {
        for (c, &j) in members.iter().enumerate() {
            sub[r * k + c] = model.a(i, j);
        }
        rhs[r] = model.sigma().diag(i) / 2.0 - model.m()[i];
    }

    let condition = linalg::condition_one_norm(k, &sub);
    match condition {
        None => {
            return Err(LvAnalysisError::SingularSystem {
                support: support.clone(),
                condition: f64::INFINITY,
            })
        }
        Some(c) if c > tol.tol_singular => {
            return Err(LvAnalysisError::SingularSystem {
                support: support.clone(),
                condition: c,
            })
        }
        Some(_) => {}
    }

    let restricted = linalg::solve(k, &sub, &rhs).map_err(|_| LvAnalysisError::SingularSystem {
        support: support.clone(),
        condition: f64::INFINITY,
    })?;

    if restricted.iter().any(|&x| x <= 0.0) {
        let mut mean = vec![0.0; n];
        for (r, &i) in members.iter().enumerate() {
            mean[i] = restricted[r];
        }
        return Err(LvAnalysisError::NonpositiveMean {
            support: support.clone(),
            mean,
        });
    }

    let mut mean = vec![0.0; n];
    for (r, &i) in members.iter().enumerate() {
        mean[i] = restricted[r];
    }
    Ok(mean)
}

/// Full exponent row `λ_i(μ)` for a measure whose mean is already known.
pub fn exponents_at(model: &LVModel, measure: &ErgodicMeasureInfo) -> Vec<f64> {
    exponent_row(model, &measure.mean)
}

fn exponent_row(model: &LVModel, mean: &[f64]) -> Vec<f64> {
    let n = model.n();
    let mut ax = vec![0.0; n];
    linalg::mat_vec(n, model.a_flat(), mean, &mut ax);
    (0..n)
        .map(|i| model.m()[i] + ax[i] - model.sigma().diag(i) / 2.0)
        .collect()
}

/// The tabulated boundary measures of a model: one row per support for which
/// existence was established, always including the origin row, plus the set
/// of exponents that fell inside the degeneracy tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentTable {
    n: usize,
    rows: BTreeMap<Subcommunity, ErgodicMeasureInfo>,
    degenerate_flags: BTreeSet<(Subcommunity, usize)>,
}

impl ExponentTable {
    pub fn new(n: usize) -> Self {
        ExponentTable {
            n,
            rows: BTreeMap::new(),
            degenerate_flags: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, info: ErgodicMeasureInfo) {
        debug_assert!(info.support.len() < self.n || self.n == 0 || info.support.is_empty());
        self.rows.insert(info.support.clone(), info);
    }

    pub fn flag_degenerate(&mut self, support: Subcommunity, species: usize) {
        self.degenerate_flags.insert((support, species));
    }

    pub fn row(&self, support: &Subcommunity) -> Option<&ErgodicMeasureInfo> {
        self.rows.get(support)
    }

    pub fn origin(&self) -> &ErgodicMeasureInfo {
        self.rows
            .get(&Subcommunity::empty())
            .expect("table always contains the origin row")
    }

    pub fn rows(&self) -> impl Iterator<Item = &ErgodicMeasureInfo> {
        self.rows.values()
    }

    pub fn supports(&self) -> impl Iterator<Item = &Subcommunity> {
        self.rows.keys()
    }

    pub fn degenerate_flags(&self) -> &BTreeSet<(Subcommunity, usize)> {
        &self.degenerate_flags
    }

    pub fn has_flags(&self) -> bool {
        !self.degenerate_flags.is_empty()
    }

    /// Exponent of species `i` against the measure supported on `support`,
    /// if that row exists.
    pub fn exponent(&self, support: &Subcommunity, species: usize) -> Option<f64> {
        self.rows.get(support).map(|r| r.exponents[species])
    }
}

/// Sign with a dead zone: `None` inside `±tol`.
fn sign_within(value: f64, tol: f64) -> Option<bool> {
    if value.abs() <= tol {
        None
    } else {
        Some(value > 0.0)
    }
}

/// Build the full boundary measure table for `model` (`n ≤ 3`).
///
/// Existence recursion: the origin row always exists; the single-species row
/// for `i` exists exactly when `λ_i(δ*) > 0`; the pair row for `{i, j}`
/// exists exactly when the face satisfies the planar coexistence condition
/// (at least one single on the face exists and every existing single is
/// invadable by the missing face species). Exponents inside `tol_zero` are
/// recorded in the degeneracy flags and any decision that would read them is
/// skipped, leaving dependent rows out of the table.
pub fn build_measure_tree(
    model: &LVModel,
    tol: &Tolerances,
) -> Result<ExponentTable, LvAnalysisError> {
    let n = model.n();
    if n > 3 {
        return Err(LvAnalysisError::TooManySpecies { n });
    }
    let mut table = ExponentTable::new(n);

    let origin_exp = exponents_at_origin(model);
    let origin =
        ErgodicMeasureInfo::new_analytic(Subcommunity::empty(), vec![0.0; n], origin_exp.clone())
            .expect("origin row is structurally valid");
    table.insert(origin);

    // Single-species rows.
    let mut single_exists = vec![false; n];
    for i in 0..n {
        match sign_within(origin_exp[i], tol.tol_zero) {
            None => {
                table.flag_degenerate(Subcommunity::empty(), i);
            }
            Some(true) => {
                let support = Subcommunity::singleton(i);
                let mean = solve_boundary_means(model, &support, tol)?;
                let exps = exponent_row(model, &mean);
                let info = ErgodicMeasureInfo::new_analytic(support.clone(), mean, exps.clone())
                    .expect("single-species row is structurally valid");
                for j in 0..n {
                    if j != i && sign_within(exps[j], tol.tol_zero).is_none() {
                        table.flag_degenerate(support.clone(), j);
                    }
                }
                table.insert(info);
                single_exists[i] = true;
            }
            Some(false) => {}
        }
    }

    // Pair rows exist only in dimension 3 (a pair is full-support otherwise).
    if n == 3 {
        for i in 0..n {
            for j in i + 1..n {
                match pair_face_persistent(&table, i, j, tol) {
                    Some(true) => {
                        let support = Subcommunity::pair(i, j);
                        let mean = solve_boundary_means(model, &support, tol)?;
                        let exps = exponent_row(model, &mean);
                        let info =
                            ErgodicMeasureInfo::new_analytic(support.clone(), mean, exps.clone())
                                .expect("pair row is structurally valid");
                        let k = (0..n).find(|k| *k != i && *k != j).unwrap();
                        if sign_within(exps[k], tol.tol_zero).is_none() {
                            table.flag_degenerate(support.clone(), k);
                        }
                        table.insert(info);
                    }
                    Some(false) => {}
                    // A governing exponent is inside the dead zone; it is
                    // already flagged, so just stop propagating below it.
                    None => {}
                }
            }
        }
    }

    Ok(table)
}

/// Planar coexistence condition for face `{i, j}` read off the table signs:
/// some single on the face exists, and every existing single is invadable by
/// the other species. `None` when a governing exponent is flagged.
pub(crate) fn pair_face_persistent(
    table: &ExponentTable,
    i: usize,
    j: usize,
    tol: &Tolerances,
) -> Option<bool> {
    let origin = table.origin();
    let oi = sign_within(origin.exponents[i], tol.tol_zero)?;
    let oj = sign_within(origin.exponents[j], tol.tol_zero)?;
    if !oi && !oj {
        return Some(false);
    }
    for (res, inv, exists) in [(i, j, oi), (j, i, oj)] {
        if exists {
            let row = table.row(&Subcommunity::singleton(res))?;
            if !sign_within(row.exponents[inv], tol.tol_zero)? {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Every off-support exponent whose magnitude is at or below `tol_zero`,
/// paired with the support it belongs to. An empty list certifies that the
/// sign calculus is decisive at the configured tolerance.
pub fn detect_degeneracy(table: &ExponentTable, tol: &Tolerances) -> Vec<(Subcommunity, usize)> {
    let mut flagged = Vec::new();
    for info in table.rows() {
        for (species, lambda) in info.external_exponents() {
            if lambda.abs() <= tol.tol_zero {
                flagged.push((info.support.clone(), species));
            }
        }
    }
    flagged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NoiseCovariance;
    use approx::assert_abs_diff_eq;

    fn rps_sym(alpha: f64, beta: f64, sigma: f64) -> LVModel {
        LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, -alpha, -beta],
                vec![-beta, -1.0, -alpha],
                vec![-alpha, -beta, -1.0],
            ],
            NoiseCovariance::scalar(3, sigma).unwrap(),
        )
        .unwrap()
    }

    fn figure1_i() -> LVModel {
        LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![-2.0, -1.0, 0.0],
                vec![-2.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn origin_exponents_formula() {
        let model = LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        assert_eq!(exponents_at_origin(&model), vec![0.96875, 0.96875, 0.96875]);
    }

    #[test]
    fn origin_exponent_negative_growth() {
        let model = LVModel::new(
            vec![1.0, 1.0, -0.1],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(exponents_at_origin(&model)[2], -0.13125, epsilon = 1e-15);
    }

    #[test]
    fn origin_exponent_exact_cancellation_flags() {
        let model = LVModel::new(
            vec![1.0],
            &[vec![-1.0]],
            NoiseCovariance::scalar(1, 2.0).unwrap(),
        )
        .unwrap();
        assert_eq!(exponents_at_origin(&model), vec![0.0]);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        assert!(table
            .degenerate_flags()
            .contains(&(Subcommunity::empty(), 0)));
        assert!(table.row(&Subcommunity::singleton(0)).is_none());
    }

    #[test]
    fn boundary_mean_single_species_rps() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let mean =
            solve_boundary_means(&model, &Subcommunity::singleton(0), &Tolerances::default())
                .unwrap();
        assert_eq!(mean, vec![0.75, 0.0, 0.0]);
    }

    #[test]
    fn boundary_mean_pair_figure1_ii() {
        let model = LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, -2.0, 0.0],
                vec![-2.0, -1.0, 0.0],
                vec![-2.0, -2.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        let mean = solve_boundary_means(&model, &Subcommunity::pair(0, 1), &Tolerances::default())
            .unwrap();
        let expected = 0.96875 / 3.0;
        assert_abs_diff_eq!(mean[0], expected, epsilon = 1e-12);
        assert_abs_diff_eq!(mean[1], expected, epsilon = 1e-12);
        assert_eq!(mean[2], 0.0);
    }

    #[test]
    fn boundary_mean_singular_submatrix() {
        let model = LVModel::new(
            vec![1.0, 1.0],
            &[vec![-1.0, -1.0], vec![-1.0, -1.0]],
            NoiseCovariance::scalar(2, 0.0625).unwrap(),
        )
        .unwrap();
        let err = solve_boundary_means(&model, &Subcommunity::pair(0, 1), &Tolerances::default());
        assert!(matches!(err, Err(LvAnalysisError::SingularSystem { .. })));
    }

    #[test]
    fn boundary_mean_nonpositive_reported() {
        // A lone predator with negative intrinsic growth has no measure on
        // its axis; the formal solve leaves the open face.
        let model = LVModel::new(
            vec![1.0, -1.0],
            &[vec![-1.0, -0.5], vec![0.5, -1.0]],
            NoiseCovariance::scalar(2, 0.0625).unwrap(),
        )
        .unwrap();
        let err = solve_boundary_means(&model, &Subcommunity::singleton(1), &Tolerances::default());
        assert!(matches!(err, Err(LvAnalysisError::NonpositiveMean { .. })));
    }

    #[test]
    fn exponents_at_rps_single_measure() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        let mu1 = table.row(&Subcommunity::singleton(0)).unwrap();
        // Next species in the cycle invades, previous is repelled.
        assert_abs_diff_eq!(mu1.exponents[1], 0.30, epsilon = 1e-12);
        assert_abs_diff_eq!(mu1.exponents[2], -0.15, epsilon = 1e-12);
        assert!(mu1.exponents[0].abs() <= 1e-12);
        // Same numbers through the public entry point.
        let recomputed = exponents_at(&model, mu1);
        assert_eq!(recomputed, mu1.exponents);
    }

    #[test]
    fn exponents_at_figure1_i() {
        let model = figure1_i();
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        let mu1 = table.row(&Subcommunity::singleton(0)).unwrap();
        assert_abs_diff_eq!(mu1.mean[0], 0.96875, epsilon = 1e-12);
        assert_abs_diff_eq!(mu1.exponents[1], -0.96875, epsilon = 1e-12);
        assert_abs_diff_eq!(mu1.exponents[2], -0.96875, epsilon = 1e-12);
    }

    #[test]
    fn supported_exponents_vanish_for_all_rows() {
        let model = rps_sym(1.4, 0.3, 0.25);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        for info in table.rows() {
            for &i in info.support.members() {
                assert!(info.exponents[i].abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn tree_rps_has_singles_and_no_pairs() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        let supports: Vec<String> = table.supports().map(|s| s.to_string()).collect();
        assert_eq!(supports, ["origin", "{1}", "{2}", "{3}"]);
        assert!(!table.has_flags());
    }

    #[test]
    fn tree_decoupled_has_all_rows() {
        let model = LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        assert_eq!(table.rows().count(), 7); // origin + 3 singles + 3 pairs
                                             // Decoupling makes every invasion exponent equal its origin value.
        for info in table.rows() {
            for (j, lambda) in info.external_exponents() {
                assert_eq!(lambda, table.origin().exponents[j]);
            }
        }
    }

    #[test]
    fn tree_all_negative_growth_keeps_origin_only() {
        let model = LVModel::new(
            vec![-1.0, -1.0, -1.0],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        assert_eq!(table.rows().count(), 1);
        assert!(table.row(&Subcommunity::empty()).is_some());
    }

    #[test]
    fn degeneracy_scan_criterion_tie_is_clean() {
        // Exponent signs are all decisive even when the cyclic product
        // criterion cancels exactly; that tie is the classifier's concern.
        let model = rps_sym(1.3, 0.7, 0.5);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        assert!(detect_degeneracy(&table, &Tolerances::default()).is_empty());
    }

    #[test]
    fn degeneracy_scan_flags_origin_zero() {
        let model = LVModel::new(
            vec![1.0, 1.0],
            &[vec![-1.0, 0.0], vec![0.0, -1.0]],
            NoiseCovariance::diagonal(&[2.0, 0.0625]).unwrap(),
        )
        .unwrap();
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        let flags = detect_degeneracy(&table, &Tolerances::default());
        assert!(flags.contains(&(Subcommunity::empty(), 0)));
    }

    #[test]
    fn random_competitive_models_are_nondegenerate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m: Vec<f64> = (0..3).map(|_| rng.random_range(0.3..1.5)).collect();
            let a: Vec<Vec<f64>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            if i == j {
                                -rng.random_range(0.5..1.5)
                            } else {
                                -rng.random_range(0.05..1.2)
                            }
                        })
                        .collect()
                })
                .collect();
            let sigma = NoiseCovariance::diagonal(&[rng.random_range(0.02..0.3); 3]).unwrap();
            let model = LVModel::new(m, &a, sigma).unwrap();
            if let Ok(table) = build_measure_tree(&model, &Tolerances::default()) {
                assert!(detect_degeneracy(&table, &Tolerances::default()).is_empty());
            }
        }
    }

    #[test]
    fn residuals_within_bound_for_all_supports() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let table = build_measure_tree(&model, &Tolerances::default()).unwrap();
        for info in table.rows() {
            let row = exponents_at(&model, info);
            for &i in info.support.members() {
                assert!(row[i].abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn permutation_equivariance_of_table() {
        let model = LVModel::new(
            vec![1.0, 0.8, 1.1],
            &[
                vec![-1.0, -0.4, -0.2],
                vec![-0.3, -0.9, -0.5],
                vec![-0.6, -0.1, -1.2],
            ],
            NoiseCovariance::diagonal(&[0.0625, 0.09, 0.04]).unwrap(),
        )
        .unwrap();
        let tol = Tolerances::default();
        let base = build_measure_tree(&model, &tol).unwrap();
        for perm in [[1usize, 2, 0], [2, 0, 1], [0, 2, 1]] {
            let permuted_model = model.permuted(&perm);
            let permuted = build_measure_tree(&permuted_model, &tol).unwrap();
            assert_eq!(base.rows().count(), permuted.rows().count());
            for info in permuted.rows() {
                // New index i is old index perm[i].
                let original_support =
                    Subcommunity::new(info.support.members().iter().map(|&i| perm[i]));
                let original = base.row(&original_support).unwrap();
                for i in 0..3 {
                    assert_abs_diff_eq!(info.mean[i], original.mean[perm[i]], epsilon = 1e-12);
                    assert_abs_diff_eq!(
                        info.exponents[i],
                        original.exponents[perm[i]],
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn scaling_preserves_sign_pattern() {
        let model = LVModel::new(
            vec![1.0, 0.8, 1.1],
            &[
                vec![-1.0, -1.4, -0.2],
                vec![-0.3, -0.9, -1.5],
                vec![-0.6, -0.1, -1.2],
            ],
            NoiseCovariance::scalar(3, 0.08).unwrap(),
        )
        .unwrap();
        let tol = Tolerances::default();
        let base = build_measure_tree(&model, &tol).unwrap();
        for c in [0.5, 2.0] {
            let m: Vec<f64> = model.m().iter().map(|v| c * v).collect();
            let a: Vec<Vec<f64>> = model
                .a_rows()
                .iter()
                .map(|row| row.iter().map(|v| c * v).collect())
                .collect();
            let sigma = NoiseCovariance::scalar(3, c * 0.08).unwrap();
            let scaled_model = LVModel::new(m, &a, sigma).unwrap();
            let scaled = build_measure_tree(&scaled_model, &tol).unwrap();
            assert_eq!(base.rows().count(), scaled.rows().count());
            for info in base.rows() {
                let other = scaled.row(&info.support).unwrap();
                for (l0, l1) in info.exponents.iter().zip(&other.exponents) {
                    if l0.abs() > 1e-9 {
                        assert_eq!(l0 > &0.0, l1 > &0.0);
                        assert_abs_diff_eq!(c * l0, *l1, epsilon = 1e-9);
                    }
                }
            }
        }
    }
}
