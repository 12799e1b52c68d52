//! The three-species outcome catalogue as a decision list keyed on exponent
//! sign patterns.
//!
//! Each rule pins the signs of the origin exponents, a set of single-measure
//! invasion exponents, and the externals of whichever pair measures the
//! pattern forces to exist. Rules are written for one canonical labeling and
//! matched under all six species permutations; the first hit wins. Case ids
//! follow a stable `group.case[sub]` scheme: group 1 has all three species
//! viable on their own, group 2 two, group 3 one, and case `0` is the
//! all-extinct pattern.
//!
//! This list is deliberately independent of the theorem-walk classifier in
//! the parent module; the test suites assert that both always agree.

use crate::lv::ExponentTable;
use crate::model::{Subcommunity, Tolerances};

#[derive(Debug, Clone, Copy)]
pub(crate) enum Req {
    /// Sign of `λ_inv(μ_res)` for a single-species measure.
    Single {
        res: usize,
        inv: usize,
        positive: bool,
    },
    /// At least one of the two invasion exponents of `μ_res` is positive.
    SingleAnyPos { res: usize },
    /// Sign of the third species' exponent against the pair measure
    /// `μ_{a,b}`.
    Pair { a: usize, b: usize, positive: bool },
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum CaseOutcome {
    AllExtinct,
    Persistence,
    Attractors(&'static [&'static [usize]]),
    /// Rock-paper-scissors pattern: the verdict comes from the cyclic
    /// product criterion, not from the sign table alone.
    RpsByCriterion,
}

pub(crate) struct CaseRule {
    pub id: &'static str,
    /// Required signs of the three origin exponents, canonical order.
    pub origins: [bool; 3],
    pub reqs: &'static [Req],
    pub outcome: CaseOutcome,
}

const fn sp(res: usize, inv: usize) -> Req {
    Req::Single {
        res,
        inv,
        positive: true,
    }
}

const fn sn(res: usize, inv: usize) -> Req {
    Req::Single {
        res,
        inv,
        positive: false,
    }
}

const fn pp(a: usize, b: usize) -> Req {
    Req::Pair {
        a,
        b,
        positive: true,
    }
}

const fn pn(a: usize, b: usize) -> Req {
    Req::Pair {
        a,
        b,
        positive: false,
    }
}

const ANY2: Req = Req::SingleAnyPos { res: 2 };

use CaseOutcome::{AllExtinct, Attractors, Persistence, RpsByCriterion};

pub(crate) const RULES: &[CaseRule] = &[
    CaseRule {
        id: "0",
        origins: [false, false, false],
        reqs: &[],
        outcome: AllExtinct,
    },
    // Group 1: every species survives on its own.
    CaseRule {
        id: "1.1",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sn(1, 0), sn(1, 2), sn(2, 0), sn(2, 1)],
        outcome: Attractors(&[&[0], &[1], &[2]]),
    },
    CaseRule {
        id: "1.2",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sn(1, 0), sn(1, 2), ANY2],
        outcome: Attractors(&[&[0], &[1]]),
    },
    CaseRule {
        id: "1.3a",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 2), sp(2, 1), pp(1, 2)],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "1.3b",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 2), sp(2, 1), pn(1, 2)],
        outcome: Attractors(&[&[0], &[1, 2]]),
    },
    CaseRule {
        id: "1.4",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 2), sn(2, 1), sp(2, 0)],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "1.5",
        origins: [true, true, true],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 0), sn(1, 2), ANY2],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "1.6",
        origins: [true, true, true],
        reqs: &[sp(0, 1), sn(0, 2), sp(1, 2), sn(1, 0), sp(2, 0), sn(2, 1)],
        outcome: RpsByCriterion,
    },
    CaseRule {
        id: "1.7a",
        origins: [true, true, true],
        reqs: &[sp(0, 1), sn(0, 2), sp(1, 0), sn(1, 2), ANY2, pp(0, 1)],
        outcome: Persistence,
    },
    CaseRule {
        id: "1.7b",
        origins: [true, true, true],
        reqs: &[sp(0, 1), sn(0, 2), sp(1, 0), sn(1, 2), ANY2, pn(0, 1)],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "1.8a",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sn(2, 1),
            pp(0, 1),
        ],
        outcome: Persistence,
    },
    CaseRule {
        id: "1.8b",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sn(2, 1),
            pn(0, 1),
        ],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "1.9a",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 1),
            pp(0, 1),
            pp(1, 2),
        ],
        outcome: Persistence,
    },
    CaseRule {
        id: "1.9b",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 1),
            pn(0, 1),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "1.9c",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 1),
            pp(0, 1),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[1, 2]]),
    },
    CaseRule {
        id: "1.9d",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sn(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 1),
            pn(0, 1),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[1, 2]]),
    },
    CaseRule {
        id: "1.10a",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sp(2, 1),
            pp(0, 1),
            pp(0, 2),
            pp(1, 2),
        ],
        outcome: Persistence,
    },
    CaseRule {
        id: "1.10b",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sp(2, 1),
            pn(0, 1),
            pp(0, 2),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "1.10c",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sp(2, 1),
            pn(0, 1),
            pn(0, 2),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[0, 2]]),
    },
    CaseRule {
        id: "1.10d",
        origins: [true, true, true],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            sp(2, 0),
            sp(2, 1),
            pn(0, 1),
            pn(0, 2),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[0, 2], &[1, 2]]),
    },
    // Group 2: two species survive on their own, the third does not.
    CaseRule {
        id: "2.1",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sn(0, 2), sn(1, 0), sn(1, 2)],
        outcome: Attractors(&[&[0], &[1]]),
    },
    CaseRule {
        id: "2.2",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 0), sn(1, 2)],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "2.3a",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 2), pp(1, 2)],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "2.3b",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sn(0, 2), sp(1, 2), pn(1, 2)],
        outcome: Attractors(&[&[0], &[1, 2]]),
    },
    CaseRule {
        id: "2.4a",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sn(0, 2), sp(1, 0), sn(1, 2), pn(0, 1)],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "2.4b",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sn(0, 2), sp(1, 0), sn(1, 2), pp(0, 1)],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.5a",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pn(0, 2)],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "2.5b",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pp(0, 2)],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.6a",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pp(0, 2), pp(0, 1)],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.6b",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pn(0, 2), pp(0, 1)],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "2.6c",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pp(0, 2), pn(0, 1)],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "2.6d",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sp(1, 0), sn(1, 2), pn(0, 2), pn(0, 1)],
        outcome: Attractors(&[&[0, 1], &[0, 2]]),
    },
    CaseRule {
        id: "2.7i-a",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pp(0, 2), pp(1, 2)],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.7i-b",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pn(0, 2), pp(1, 2)],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "2.7i-c",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pp(0, 2), pn(1, 2)],
        outcome: Attractors(&[&[1, 2]]),
    },
    CaseRule {
        id: "2.7i-d",
        origins: [true, true, false],
        reqs: &[sp(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pn(0, 2), pn(1, 2)],
        outcome: Attractors(&[&[0, 2], &[1, 2]]),
    },
    CaseRule {
        id: "2.7ii-a",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pp(0, 2), pp(1, 2)],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.7ii-b",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pn(0, 2), pp(1, 2)],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "2.7ii-c",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pp(0, 2), pn(1, 2)],
        outcome: Attractors(&[&[1, 2]]),
    },
    CaseRule {
        id: "2.7ii-d",
        origins: [true, true, false],
        reqs: &[sn(0, 1), sp(0, 2), sn(1, 0), sp(1, 2), pn(0, 2), pn(1, 2)],
        outcome: Attractors(&[&[0, 2], &[1, 2]]),
    },
    CaseRule {
        id: "2.8a",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pp(0, 1),
            pp(0, 2),
            pp(1, 2),
        ],
        outcome: Persistence,
    },
    CaseRule {
        id: "2.8b",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pn(0, 1),
            pp(0, 2),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "2.8c",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pp(0, 1),
            pn(0, 2),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "2.8d",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pp(0, 1),
            pp(0, 2),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[1, 2]]),
    },
    CaseRule {
        id: "2.8e",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pn(0, 1),
            pn(0, 2),
            pp(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[0, 2]]),
    },
    CaseRule {
        id: "2.8f",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pn(0, 1),
            pp(0, 2),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[1, 2]]),
    },
    CaseRule {
        id: "2.8g",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pp(0, 1),
            pn(0, 2),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[0, 2], &[1, 2]]),
    },
    CaseRule {
        id: "2.8h",
        origins: [true, true, false],
        reqs: &[
            sp(0, 1),
            sp(0, 2),
            sp(1, 0),
            sp(1, 2),
            pn(0, 1),
            pn(0, 2),
            pn(1, 2),
        ],
        outcome: Attractors(&[&[0, 1], &[0, 2], &[1, 2]]),
    },
    // Group 3: only one species survives on its own.
    CaseRule {
        id: "3.1",
        origins: [true, false, false],
        reqs: &[sn(0, 1), sn(0, 2)],
        outcome: Attractors(&[&[0]]),
    },
    CaseRule {
        id: "3.2a",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sn(0, 2), pp(0, 1)],
        outcome: Persistence,
    },
    CaseRule {
        id: "3.2b",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sn(0, 2), pn(0, 1)],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "3.3a",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sp(0, 2), pp(0, 1), pp(0, 2)],
        outcome: Persistence,
    },
    CaseRule {
        id: "3.3b",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sp(0, 2), pn(0, 1), pp(0, 2)],
        outcome: Attractors(&[&[0, 1]]),
    },
    CaseRule {
        id: "3.3c",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sp(0, 2), pp(0, 1), pn(0, 2)],
        outcome: Attractors(&[&[0, 2]]),
    },
    CaseRule {
        id: "3.3d",
        origins: [true, false, false],
        reqs: &[sp(0, 1), sp(0, 2), pn(0, 1), pn(0, 2)],
        outcome: Attractors(&[&[0, 1], &[0, 2]]),
    },
];

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// A matched decision-list entry: its stable case id and the outcome it
/// prescribes (before the cyclic criterion is applied, where relevant).
#[derive(Debug, Clone)]
pub struct CaseMatch {
    pub id: &'static str,
    pub outcome: DecisionOutcome,
}

/// Outcome shape prescribed by a decision-list entry.
#[derive(Debug, Clone, PartialEq)]
pub enum DecisionOutcome {
    AllExtinct,
    Persistence,
    Attractors(Vec<Subcommunity>),
    RpsByCriterion,
}

fn sign(value: f64, tol: &Tolerances) -> Option<bool> {
    if value.abs() <= tol.tol_zero {
        None
    } else {
        Some(value > 0.0)
    }
}

fn req_holds(table: &ExponentTable, tol: &Tolerances, perm: &[usize; 3], req: &Req) -> bool {
    match *req {
        Req::Single { res, inv, positive } => {
            table
                .exponent(&Subcommunity::singleton(perm[res]), perm[inv])
                .and_then(|l| sign(l, tol))
                == Some(positive)
        }
        Req::SingleAnyPos { res } => {
            let support = Subcommunity::singleton(perm[res]);
            match table.row(&support) {
                Some(row) => row
                    .external_exponents()
                    .any(|(_, l)| sign(l, tol) == Some(true)),
                None => false,
            }
        }
        Req::Pair { a, b, positive } => {
            let support = Subcommunity::pair(perm[a], perm[b]);
            let third = (0..3).find(|k| !support.contains(*k)).unwrap();
            table.exponent(&support, third).and_then(|l| sign(l, tol)) == Some(positive)
        }
    }
}

/// Match a three-species table against the catalogue, trying every species
/// relabeling. Returns `None` when no rule fits, which for decisive sign
/// data indicates an internal inconsistency caught by the test suite.
pub fn match_case(table: &ExponentTable, tol: &Tolerances) -> Option<CaseMatch> {
    assert_eq!(table.n(), 3);
    let origin = table.origin();
    for perm in &PERMS {
        let origin_signs: [Option<bool>; 3] = [
            sign(origin.exponents[perm[0]], tol),
            sign(origin.exponents[perm[1]], tol),
            sign(origin.exponents[perm[2]], tol),
        ];
        'rules: for rule in RULES {
            for c in 0..3 {
                if origin_signs[c] != Some(rule.origins[c]) {
                    continue 'rules;
                }
            }
            for req in rule.reqs {
                if !req_holds(table, tol, perm, req) {
                    continue 'rules;
                }
            }
            let outcome = match rule.outcome {
                CaseOutcome::AllExtinct => DecisionOutcome::AllExtinct,
                CaseOutcome::Persistence => DecisionOutcome::Persistence,
                CaseOutcome::RpsByCriterion => DecisionOutcome::RpsByCriterion,
                CaseOutcome::Attractors(sets) => DecisionOutcome::Attractors(
                    sets.iter()
                        .map(|set| Subcommunity::new(set.iter().map(|&c| perm[c])))
                        .collect(),
                ),
            };
            return Some(CaseMatch {
                id: rule.id,
                outcome,
            });
        }
    }
    None
}
