//! The decision procedure on top of an exponent table.
//!
//! For three species the procedure is: detect a rock-paper-scissors invasion
//! cycle first and settle it with the cyclic product criterion; otherwise
//! the system persists exactly when every boundary measure can be invaded
//! (`max_i λ_i(μ) > 0` for every tabulated `μ`), and when it does not
//! persist the long run is captured by the transversal attractors — the
//! boundary measures whose external exponents are all negative. Every
//! decision is a strict sign decision; anything inside the dead zone makes
//! the verdict `Degenerate` rather than a guess.

mod cases;

pub use cases::{match_case, CaseMatch, DecisionOutcome};

use serde::Serialize;
use thiserror::Error;

use crate::lv::{self, ExponentTable};
use crate::model::{
    ClassificationOutcome, DegeneracyReport, ErgodicMeasureInfo, Evidence, FlaggedExponent,
    OutcomeKind, Subcommunity, Tolerances,
};

#[derive(Debug, Error, Clone)]
pub enum ClassifyError {
    #[error("degenerate exponent data: {report}")]
    Degenerate { report: String },
    #[error("table is for {got} species, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("table is missing the row for support {0}")]
    MissingRow(Subcommunity),
}

/// Invasion cycle orientation. `Forward` means species i+1 invades the
/// monoculture of species i (cyclically); `Backward` is the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RpsOrientation {
    Forward,
    Backward,
}

/// A detected rock-paper-scissors structure: all three single-species
/// measures exist and the six invasion exponents split into one all-positive
/// and one all-negative cyclic triple.
#[derive(Debug, Clone, Serialize)]
pub struct RpsStructure {
    pub orientation: RpsOrientation,
    pub single_measures: Vec<ErgodicMeasureInfo>,
    /// Product of the three positive invasion exponents.
    pub positive_product: f64,
    /// Absolute value of the product of the three negative invasion
    /// exponents.
    pub negative_product: f64,
}

impl RpsStructure {
    /// Signed persistence criterion: positive product minus the magnitude of
    /// the negative product. Positive means the invasion cycle on average
    /// pushes inward (persistence); negative means boundary attraction.
    pub fn criterion(&self) -> f64 {
        self.positive_product - self.negative_product
    }

    /// The criterion is a difference of products of the governing
    /// exponents, so its dead zone scales with the product magnitude.
    pub fn criterion_is_degenerate(&self, tol: &Tolerances) -> bool {
        let scale = self.positive_product.max(self.negative_product);
        self.criterion().abs() <= tol.tol_zero * scale
    }
}

fn sign(value: f64, tol: &Tolerances) -> Option<bool> {
    if value.abs() <= tol.tol_zero {
        None
    } else {
        Some(value > 0.0)
    }
}

/// One-species verdict from the origin exponent alone.
pub fn classify_1d(lambda_origin: f64, tol: &Tolerances) -> ClassificationOutcome {
    let kind = match sign(lambda_origin, tol) {
        Some(true) => OutcomeKind::Persistence,
        Some(false) => OutcomeKind::AllExtinct,
        None => OutcomeKind::Degenerate(DegeneracyReport {
            flagged: vec![FlaggedExponent {
                support: Subcommunity::empty(),
                species: 0,
                value: lambda_origin,
            }],
            criterion_value: None,
            message: format!(
                "origin exponent {lambda_origin:.3e} is within ±{:.1e} of zero",
                tol.tol_zero
            ),
        }),
    };
    ClassificationOutcome {
        kind,
        evidence: Evidence::default(),
    }
}

/// The four planar outcomes for a two-species face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Face2dOutcome {
    /// Both face species die out.
    Extinction,
    /// The given species excludes the other one with probability one.
    Winner(usize),
    /// Both monocultures attract; either species wins with positive
    /// probability.
    Bistable,
    /// Unique coexistence measure on the open face.
    Coexistence,
}

/// Classify the restriction of the dynamics to a two-species face, reading
/// only exponent signs from the table.
pub fn classify_2d_face(
    table: &ExponentTable,
    face: &Subcommunity,
    tol: &Tolerances,
) -> Result<Face2dOutcome, ClassifyError> {
    if face.len() != 2 {
        return Err(ClassifyError::WrongDimension {
            expected: 2,
            got: face.len(),
        });
    }
    let (i, j) = (face.members()[0], face.members()[1]);
    let origin = table.origin();

    let degenerate =
        |support: &Subcommunity, species: usize, value: f64| ClassifyError::Degenerate {
            report: format!(
                "exponent of species {} against {} is {:.3e}, inside ±{:.1e}",
                species + 1,
                support,
                value,
                tol.tol_zero
            ),
        };

    let oi = sign(origin.exponents[i], tol)
        .ok_or_else(|| degenerate(&Subcommunity::empty(), i, origin.exponents[i]))?;
    let oj = sign(origin.exponents[j], tol)
        .ok_or_else(|| degenerate(&Subcommunity::empty(), j, origin.exponents[j]))?;

    if !oi && !oj {
        return Ok(Face2dOutcome::Extinction);
    }

    // Cross-invasion signs for the singles that exist.
    let mut cross = [(i, j, oi, None::<bool>), (j, i, oj, None::<bool>)];
    for entry in &mut cross {
        let (res, inv, exists, slot) = (entry.0, entry.1, entry.2, &mut entry.3);
        if exists {
            let support = Subcommunity::singleton(res);
            let row = table
                .row(&support)
                .ok_or_else(|| ClassifyError::MissingRow(support.clone()))?;
            let value = row.exponents[inv];
            *slot = Some(sign(value, tol).ok_or_else(|| degenerate(&support, inv, value))?);
        }
    }
    let inv_into_i = cross[0].3; // sign of λ_j(μ_i), when μ_i exists
    let inv_into_j = cross[1].3;

    let invadable = |s: Option<bool>| s != Some(false);
    if (oi || oj) && invadable(inv_into_i) && invadable(inv_into_j) {
        return Ok(Face2dOutcome::Coexistence);
    }
    if inv_into_i == Some(false) && inv_into_j == Some(false) {
        return Ok(Face2dOutcome::Bistable);
    }
    // Exactly one monoculture is uninvadable; it wins.
    if inv_into_i == Some(false) {
        Ok(Face2dOutcome::Winner(i))
    } else {
        Ok(Face2dOutcome::Winner(j))
    }
}

/// Detect a rock-paper-scissors invasion cycle among the three single
/// species measures.
pub fn detect_rps(
    table: &ExponentTable,
    tol: &Tolerances,
) -> Result<Option<RpsStructure>, ClassifyError> {
    if table.n() != 3 {
        return Err(ClassifyError::WrongDimension {
            expected: 3,
            got: table.n(),
        });
    }
    let origin = table.origin();
    for i in 0..3 {
        match sign(origin.exponents[i], tol) {
            Some(true) => {}
            Some(false) => return Ok(None),
            None => {
                return Err(ClassifyError::Degenerate {
                    report: format!(
                        "origin exponent of species {} is {:.3e}, inside the dead zone",
                        i + 1,
                        origin.exponents[i]
                    ),
                })
            }
        }
    }

    let mut singles = Vec::with_capacity(3);
    for i in 0..3 {
        let support = Subcommunity::singleton(i);
        singles.push(
            table
                .row(&support)
                .ok_or(ClassifyError::MissingRow(support))?
                .clone(),
        );
    }

    // s[i][j] = sign of λ_j(μ_i), j ≠ i.
    let mut s = [[false; 3]; 3];
    for (i, single) in singles.iter().enumerate() {
        for j in 0..3 {
            if i == j {
                continue;
            }
            s[i][j] = sign(single.exponents[j], tol).ok_or_else(|| ClassifyError::Degenerate {
                report: format!(
                    "invasion exponent of species {} against {{{}}} is {:.3e}, inside the dead zone",
                    j + 1,
                    i + 1,
                    single.exponents[j]
                ),
            })?;
        }
    }

    // Forward cycle: λ_1(μ_0), λ_2(μ_1), λ_0(μ_2) positive, mirror negative.
    let forward = s[0][1] && s[1][2] && s[2][0] && !s[0][2] && !s[1][0] && !s[2][1];
    let backward = s[0][2] && s[1][0] && s[2][1] && !s[0][1] && !s[1][2] && !s[2][0];
    let orientation = match (forward, backward) {
        (true, false) => RpsOrientation::Forward,
        (false, true) => RpsOrientation::Backward,
        _ => return Ok(None),
    };

    type CycleTriple = [(usize, usize); 3];
    let (pos_idx, neg_idx): (CycleTriple, CycleTriple) = match orientation {
        RpsOrientation::Forward => ([(0, 1), (1, 2), (2, 0)], [(0, 2), (1, 0), (2, 1)]),
        RpsOrientation::Backward => ([(0, 2), (1, 0), (2, 1)], [(0, 1), (1, 2), (2, 0)]),
    };
    let product = |idx: &[(usize, usize); 3]| {
        idx.iter()
            .map(|&(res, inv)| singles[res].exponents[inv])
            .product::<f64>()
    };
    let positive_product = product(&pos_idx);
    let negative_product = product(&neg_idx).abs();

    Ok(Some(RpsStructure {
        orientation,
        single_measures: singles,
        positive_product,
        negative_product,
    }))
}

/// Signed cyclic product criterion of a detected structure.
pub fn rps_criterion(structure: &RpsStructure) -> f64 {
    structure.criterion()
}

fn degenerate_outcome(table: &ExponentTable, tol: &Tolerances) -> Option<ClassificationOutcome> {
    let mut flagged: Vec<FlaggedExponent> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (support, species) in table.degenerate_flags() {
        if seen.insert((support.clone(), *species)) {
            let value = table.exponent(support, *species).unwrap_or(f64::NAN);
            flagged.push(FlaggedExponent {
                support: support.clone(),
                species: *species,
                value,
            });
        }
    }
    for (support, species) in lv::detect_degeneracy(table, tol) {
        if seen.insert((support.clone(), species)) {
            let value = table.exponent(&support, species).unwrap();
            flagged.push(FlaggedExponent {
                support,
                species,
                value,
            });
        }
    }
    if flagged.is_empty() {
        return None;
    }
    let message = format!(
        "{} exponent(s) inside ±{:.1e}; classification withheld",
        flagged.len(),
        tol.tol_zero
    );
    Some(ClassificationOutcome {
        kind: OutcomeKind::Degenerate(DegeneracyReport {
            flagged,
            criterion_value: None,
            message,
        }),
        evidence: Evidence {
            table: Some(table.clone()),
            ..Evidence::default()
        },
    })
}

/// Full three-species verdict from a boundary exponent table.
pub fn classify_3d(table: &ExponentTable, tol: &Tolerances) -> ClassificationOutcome {
    assert_eq!(table.n(), 3, "classify_3d expects a three-species table");

    // Every tabulated exponent governs at least one existence or attractor
    // decision in dimension three, so any flag forces a degenerate verdict.
    if let Some(outcome) = degenerate_outcome(table, tol) {
        return outcome;
    }

    let case = match_case(table, tol);
    let case_id = case.as_ref().map(|c| c.id.to_string());
    let mut evidence = Evidence {
        table: Some(table.clone()),
        case_id,
        criterion: None,
        notes: Vec::new(),
    };

    // Rock-paper-scissors first: the sign table alone cannot settle it.
    match detect_rps(table, tol) {
        Ok(Some(structure)) => {
            let criterion = structure.criterion();
            evidence.criterion = Some(criterion);
            evidence.notes.push(format!(
                "invasion cycle ({:?}): positive product {:.6e}, negative product {:.6e}",
                structure.orientation, structure.positive_product, structure.negative_product
            ));
            if structure.criterion_is_degenerate(tol) {
                return ClassificationOutcome {
                    kind: OutcomeKind::Degenerate(DegeneracyReport {
                        flagged: Vec::new(),
                        criterion_value: Some(criterion),
                        message: format!(
                            "cyclic product criterion {criterion:.3e} is within tolerance of zero"
                        ),
                    }),
                    evidence,
                };
            }
            let kind = if criterion > 0.0 {
                OutcomeKind::Persistence
            } else {
                OutcomeKind::RpsBoundaryAttraction {
                    measures: structure.single_measures.clone(),
                }
            };
            return ClassificationOutcome { kind, evidence };
        }
        Ok(None) => {}
        Err(ClassifyError::Degenerate { report }) => {
            return ClassificationOutcome {
                kind: OutcomeKind::Degenerate(DegeneracyReport {
                    flagged: Vec::new(),
                    criterion_value: None,
                    message: report,
                }),
                evidence,
            };
        }
        Err(e) => unreachable!("table invariant violated: {e}"),
    }

    let origin = table.origin();
    if origin.exponents.iter().all(|&l| l < -tol.tol_zero) {
        debug_assert_eq!(table.rows().count(), 1);
        return ClassificationOutcome {
            kind: OutcomeKind::AllExtinct,
            evidence,
        };
    }

    // Persistence needs every boundary measure to be invadable.
    let persistent = table
        .rows()
        .all(|row| matches!(row.max_external(), Some(l) if l > tol.tol_zero));
    if persistent {
        return ClassificationOutcome {
            kind: OutcomeKind::Persistence,
            evidence,
        };
    }

    // Otherwise the transversal attractors take over.
    let attractors: Vec<ErgodicMeasureInfo> = table
        .rows()
        .filter(|row| matches!(row.max_external(), Some(l) if l < -tol.tol_zero))
        .cloned()
        .collect();
    assert!(
        !attractors.is_empty() && attractors.len() <= 3,
        "non-persistent table must expose 1..=3 attractors"
    );
    for a in &attractors {
        for b in &attractors {
            if a.support != b.support {
                assert!(
                    !a.support.is_subset_of(&b.support),
                    "attractor supports must not be nested"
                );
            }
        }
    }
    ClassificationOutcome {
        kind: OutcomeKind::AttractorSet(attractors),
        evidence,
    }
}

/// Dispatch on the table dimension (1, 2, or 3 species).
pub fn classify_table(table: &ExponentTable, tol: &Tolerances) -> ClassificationOutcome {
    match table.n() {
        1 => {
            let mut outcome = classify_1d(table.origin().exponents[0], tol);
            outcome.evidence.table = Some(table.clone());
            outcome
        }
        2 => classify_2d_table(table, tol),
        3 => classify_3d(table, tol),
        n => panic!("classification is defined for 1..=3 species, got {n}"),
    }
}

fn classify_2d_table(table: &ExponentTable, tol: &Tolerances) -> ClassificationOutcome {
    if let Some(outcome) = degenerate_outcome(table, tol) {
        return outcome;
    }
    let evidence = Evidence {
        table: Some(table.clone()),
        ..Evidence::default()
    };
    let face = Subcommunity::pair(0, 1);
    match classify_2d_face(table, &face, tol) {
        Ok(Face2dOutcome::Extinction) => ClassificationOutcome {
            kind: OutcomeKind::AllExtinct,
            evidence,
        },
        Ok(Face2dOutcome::Coexistence) => ClassificationOutcome {
            kind: OutcomeKind::Persistence,
            evidence,
        },
        Ok(Face2dOutcome::Winner(w)) => {
            let row = table.row(&Subcommunity::singleton(w)).unwrap().clone();
            ClassificationOutcome {
                kind: OutcomeKind::AttractorSet(vec![row]),
                evidence,
            }
        }
        Ok(Face2dOutcome::Bistable) => {
            let rows = (0..2)
                .map(|i| table.row(&Subcommunity::singleton(i)).unwrap().clone())
                .collect();
            ClassificationOutcome {
                kind: OutcomeKind::AttractorSet(rows),
                evidence,
            }
        }
        Err(ClassifyError::Degenerate { report }) => ClassificationOutcome {
            kind: OutcomeKind::Degenerate(DegeneracyReport {
                flagged: Vec::new(),
                criterion_value: None,
                message: report,
            }),
            evidence,
        },
        Err(e) => unreachable!("table invariant violated: {e}"),
    }
}

/// The empirical contract implied by an attractor verdict: each listed
/// survivor pattern occurs with positive probability and the patterns
/// exhaust all interior starts.
#[derive(Debug, Clone, Serialize)]
pub struct ProbabilityContract {
    pub patterns: Vec<Subcommunity>,
    /// Re-verified pairwise non-nesting of the listed supports.
    pub pairwise_non_nested: bool,
}

impl ProbabilityContract {
    /// With a single pattern the contract pins its frequency exactly.
    pub fn exact_frequency(&self) -> Option<f64> {
        (self.patterns.len() == 1).then_some(1.0)
    }
}

/// Contract for an `AttractorSet` outcome; `None` for other kinds.
pub fn attractor_probability_contract(
    outcome: &ClassificationOutcome,
) -> Option<ProbabilityContract> {
    match &outcome.kind {
        OutcomeKind::AttractorSet(measures) => {
            let patterns: Vec<Subcommunity> = measures.iter().map(|m| m.support.clone()).collect();
            let mut non_nested = true;
            for a in &patterns {
                for b in &patterns {
                    if a != b && a.is_subset_of(b) {
                        non_nested = false;
                    }
                }
            }
            Some(ProbabilityContract {
                patterns,
                pairwise_non_nested: non_nested,
            })
        }
        _ => None,
    }
}
