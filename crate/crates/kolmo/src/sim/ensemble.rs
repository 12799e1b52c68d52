//! Ensembles of independent trials: survivor-pattern frequencies and
//! empirical verification of classifier verdicts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::stats::SlopeAccumulator;
use super::{integrate, SimConfig, SimError};
use crate::classify::attractor_probability_contract;
use crate::model::{ClassificationOutcome, Dynamics, OutcomeKind, Subcommunity};

/// Extinct species must also show a clearly negative log-density slope;
/// this guards survivor labeling against slow transients.
const DECAY_SLOPE_TOL: f64 = 1e-3;

/// Heuristic near-axis test for cyclic boundary attraction: a sample is
/// "near an axis" when all but one coordinate lie within this Euclidean
/// distance of zero.
const NEAR_AXIS_RADIUS: f64 = 0.05;

/// Required fraction of post-burn-in samples near an axis.
const NEAR_AXIS_MASS: f64 = 0.90;

/// Required fraction of trials whose terminal minimum density decayed.
const DECAYED_TRIAL_FRACTION: f64 = 0.95;

/// Allowed fraction of samples with a near-zero minimum species under a
/// non-cyclic persistence verdict.
const NEAR_ZERO_MASS: f64 = 0.01;

/// Slope bound for the log of the minimum density under cyclic persistence:
/// a persistent cycle has no systematic decay trend (observed slopes sit
/// within a few hundredths of zero), while boundary attraction drives the
/// minimum down at a rate several times this bound.
const CYCLIC_SLOPE_TOL: f64 = 0.05;

/// Allowed fraction of unresolved trials.
const UNRESOLVED_FRACTION: f64 = 0.02;

/// Streaming per-trial tallies gathered in one pass.
struct TrialTally {
    n: usize,
    terminal: Vec<f64>,
    sum: Vec<f64>,
    slopes: Vec<SlopeAccumulator>,
    logmin_slope: SlopeAccumulator,
    near_zero: usize,
    near_axis: usize,
    samples: usize,
}

impl TrialTally {
    fn new(n: usize) -> Self {
        TrialTally {
            n,
            terminal: vec![0.0; n],
            sum: vec![0.0; n],
            slopes: vec![SlopeAccumulator::default(); n],
            logmin_slope: SlopeAccumulator::default(),
            near_zero: 0,
            near_axis: 0,
            samples: 0,
        }
    }

    fn observe(&mut self, t: f64, x: &[f64], thr: f64) {
        self.samples += 1;
        let mut min = f64::INFINITY;
        for i in 0..self.n {
            self.sum[i] += x[i];
            min = min.min(x[i]);
            if x[i] > 0.0 {
                self.slopes[i].push(t, x[i].ln());
            }
        }
        if min < thr {
            self.near_zero += 1;
        }
        if min > 0.0 {
            self.logmin_slope.push(t, min.ln());
        }
        if near_axis(x) {
            self.near_axis += 1;
        }
    }

    fn mean(&self, i: usize) -> f64 {
        self.sum[i] / self.samples as f64
    }

    /// Survivor pattern with the two-sided extinction guard: a species is
    /// extinct when its terminal density is below the threshold AND its
    /// log-density slope is clearly negative. `None` marks the trial
    /// unresolved.
    fn survivor_pattern(&self, thr: f64) -> Option<Subcommunity> {
        let mut members = Vec::new();
        for i in 0..self.n {
            if self.terminal[i] >= thr {
                members.push(i);
            } else {
                match self.slopes[i].slope() {
                    // Identically-zero species have no samples: extinct.
                    None => {}
                    Some(s) if s < -DECAY_SLOPE_TOL => {}
                    Some(_) => return None,
                }
            }
        }
        Some(Subcommunity::new(members))
    }
}

fn near_axis(x: &[f64]) -> bool {
    (0..x.len()).any(|axis| {
        let off: f64 = x
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != axis)
            .map(|(_, v)| v * v)
            .sum();
        off.sqrt() < NEAR_AXIS_RADIUS
    })
}

fn run_trial_tally<M: Dynamics + ?Sized>(
    model: &M,
    y0: &[f64],
    cfg: &SimConfig,
    trial: u64,
) -> Result<TrialTally, SimError> {
    let n = model.dim();
    let burn_t = cfg.burn_in * cfg.t_final;
    let thr = cfg.extinction_threshold;
    let mut tally = TrialTally::new(n);
    integrate(model, y0, cfg, trial, |_k, t, x| {
        if t >= burn_t {
            tally.observe(t, x, thr);
        }
        tally.terminal.copy_from_slice(x);
    })?;
    Ok(tally)
}

/// Survivor-pattern frequencies over independent trials.
#[derive(Debug, Clone, Serialize)]
pub struct FrequencyReport {
    pub trials: usize,
    pub counts: BTreeMap<Subcommunity, usize>,
    pub unresolved: usize,
}

impl FrequencyReport {
    pub fn frequency(&self, pattern: &Subcommunity) -> f64 {
        *self.counts.get(pattern).unwrap_or(&0) as f64 / self.trials as f64
    }

    pub fn frequencies(&self) -> Vec<(Subcommunity, f64)> {
        self.counts
            .iter()
            .map(|(s, c)| (s.clone(), *c as f64 / self.trials as f64))
            .collect()
    }
}

/// Run `trials` independent trajectories (streams `0..trials` of the config
/// seed) and tabulate terminal survivor patterns.
pub fn estimate_outcome_frequencies<M: Dynamics + Sync + ?Sized>(
    model: &M,
    y0: &[f64],
    trials: usize,
    cfg: &SimConfig,
) -> Result<FrequencyReport, SimError> {
    assert!(trials >= 1, "need at least one trial");
    let tallies: Result<Vec<TrialTally>, SimError> = (0..trials)
        .into_par_iter()
        .map(|k| run_trial_tally(model, y0, cfg, k as u64))
        .collect();
    let tallies = tallies?;
    let mut counts = BTreeMap::new();
    let mut unresolved = 0usize;
    for tally in &tallies {
        match tally.survivor_pattern(cfg.extinction_threshold) {
            Some(pattern) => *counts.entry(pattern).or_insert(0usize) += 1,
            None => unresolved += 1,
        }
    }
    Ok(FrequencyReport {
        trials,
        counts,
        unresolved,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of checking a classifier verdict against simulation.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub outcome: String,
    pub checks: Vec<CheckResult>,
    pub frequencies: Option<FrequencyReport>,
    /// Machine-readable summary numbers (fractions, counts).
    pub stats: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Verify an analytic verdict empirically with an ensemble of `trials`
/// trajectories started from `0.5` in every coordinate.
///
/// - `Persistence`: every species' time-average density stays positive in
///   every trial, and either (non-cyclic verdicts) the pooled mass of
///   samples whose minimum species is below the extinction threshold stays
///   under 1%, or (verdicts settled by the cyclic product criterion) the
///   per-trial trend of the log minimum density shows no systematic decay.
///   A persistent invasion cycle parks its momentarily-losing species at
///   astronomically small densities for a stationary fraction of the time,
///   so a near-zero occupation bound cannot certify it; the absence of a
///   decay trend is what separates it from boundary attraction.
/// - `AttractorSet`: observed survivor patterns are exactly the declared
///   supports, each observed at least once, with at most 2% unresolved.
/// - `RpsBoundaryAttraction`: the terminal minimum density decays in at
///   least 95% of trials and at least 90% of pooled post-burn-in samples sit
///   within 0.05 of a coordinate axis (a heuristic occupancy bound, not a
///   sharp theoretical rate).
/// - `AllExtinct`: every trial ends with the empty survivor pattern.
pub fn verify_classification<M: Dynamics + Sync + ?Sized>(
    model: &M,
    outcome: &ClassificationOutcome,
    cfg: &SimConfig,
    trials: usize,
) -> Result<VerificationReport, SimError> {
    let n = model.dim();
    let y0 = vec![0.5; n];
    let mut report = VerificationReport {
        outcome: outcome.kind.name().to_string(),
        checks: Vec::new(),
        frequencies: None,
        stats: BTreeMap::new(),
    };

    match &outcome.kind {
        OutcomeKind::Degenerate(_) => {
            report.push(
                "degenerate-verdict",
                true,
                "degenerate verdicts carry no empirical contract".into(),
            );
            return Ok(report);
        }
        OutcomeKind::Persistence => {
            let tallies: Result<Vec<TrialTally>, SimError> = (0..trials)
                .into_par_iter()
                .map(|k| run_trial_tally(model, &y0, cfg, k as u64))
                .collect();
            let tallies = tallies?;
            let mut min_avg = f64::INFINITY;
            let mut near_zero = 0usize;
            let mut samples = 0usize;
            for tally in &tallies {
                for i in 0..n {
                    min_avg = min_avg.min(tally.mean(i));
                }
                near_zero += tally.near_zero;
                samples += tally.samples;
            }
            let near_zero_frac = near_zero as f64 / samples as f64;
            report.stats.insert("min_time_average".into(), min_avg);
            report
                .stats
                .insert("near_zero_fraction".into(), near_zero_frac);
            report.push(
                "time-averages-positive",
                min_avg > cfg.extinction_threshold,
                format!(
                    "smallest per-trial time-average density {:.3e} (threshold {:.1e})",
                    min_avg, cfg.extinction_threshold
                ),
            );
            if outcome.evidence.criterion.is_some() {
                let slopes: Vec<f64> = tallies
                    .iter()
                    .filter_map(|t| t.logmin_slope.slope())
                    .collect();
                let recurrent = slopes.iter().filter(|s| **s > -CYCLIC_SLOPE_TOL).count();
                let k = slopes.len().max(1) as f64;
                let mean_slope = slopes.iter().sum::<f64>() / k;
                let var = slopes.iter().map(|s| (s - mean_slope).powi(2)).sum::<f64>()
                    / (k - 1.0).max(1.0);
                let se_mean = (var / k).sqrt();
                // Fail only on a decay trend that is both material and
                // statistically significant; short noisy ensembles widen
                // the bound instead of raising false alarms.
                let bound = CYCLIC_SLOPE_TOL.max(2.0 * se_mean);
                report.stats.insert("mean_logmin_slope".into(), mean_slope);
                report
                    .stats
                    .insert("recurrent_trials".into(), recurrent as f64);
                report.push(
                    "min-density-recurrent",
                    mean_slope > -bound,
                    format!(
                        "mean log min-density slope {mean_slope:+.4} (bound -{bound:.4}; \
                         slope above -{CYCLIC_SLOPE_TOL} in {recurrent}/{trials} individual trials)"
                    ),
                );
            } else {
                report.push(
                    "near-zero-mass",
                    near_zero_frac < NEAR_ZERO_MASS,
                    format!(
                        "fraction of samples with a species below {:.1e}: {:.4} (limit {})",
                        cfg.extinction_threshold, near_zero_frac, NEAR_ZERO_MASS
                    ),
                );
            }
        }
        OutcomeKind::AllExtinct => {
            let freqs = estimate_outcome_frequencies(model, &y0, trials, cfg)?;
            let all_empty = freqs.counts.iter().all(|(s, _)| s.is_empty());
            report.push(
                "all-species-decay",
                all_empty && freqs.unresolved == 0,
                format!("patterns observed: {:?}", freqs.counts),
            );
            report.frequencies = Some(freqs);
        }
        OutcomeKind::AttractorSet(_) => {
            let contract =
                attractor_probability_contract(outcome).expect("attractor outcome has a contract");
            let freqs = estimate_outcome_frequencies(model, &y0, trials, cfg)?;
            let declared = &contract.patterns;
            let observed_subset = freqs
                .counts
                .keys()
                .all(|pattern| declared.contains(pattern));
            report.push(
                "observed-within-declared",
                observed_subset,
                format!(
                    "observed {:?}, declared {:?}",
                    freqs.counts.keys().collect::<Vec<_>>(),
                    declared
                ),
            );
            let mut all_seen = true;
            for pattern in declared {
                let f = freqs.frequency(pattern);
                report.stats.insert(format!("frequency[{pattern}]"), f);
                if f == 0.0 {
                    all_seen = false;
                }
            }
            report.push(
                "each-attractor-reached",
                all_seen,
                "every declared survivor pattern observed with positive frequency".into(),
            );
            let unresolved_frac = freqs.unresolved as f64 / freqs.trials as f64;
            report
                .stats
                .insert("unresolved_fraction".into(), unresolved_frac);
            report.push(
                "unresolved-bounded",
                unresolved_frac <= UNRESOLVED_FRACTION,
                format!("unresolved fraction {unresolved_frac:.4} (limit {UNRESOLVED_FRACTION})"),
            );
            report.push(
                "supports-not-nested",
                contract.pairwise_non_nested,
                "declared supports pass the pairwise non-nesting check".into(),
            );
            report.frequencies = Some(freqs);
        }
        OutcomeKind::RpsBoundaryAttraction { .. } => {
            let tallies: Result<Vec<TrialTally>, SimError> = (0..trials)
                .into_par_iter()
                .map(|k| run_trial_tally(model, &y0, cfg, k as u64))
                .collect();
            let tallies = tallies?;
            let decayed = tallies
                .iter()
                .filter(|t| {
                    t.terminal.iter().fold(f64::INFINITY, |a, &b| a.min(b))
                        < cfg.extinction_threshold
                })
                .count();
            let samples: usize = tallies.iter().map(|t| t.samples).sum();
            let near_axis: usize = tallies.iter().map(|t| t.near_axis).sum();
            let near_axis_frac = near_axis as f64 / samples as f64;
            let decayed_frac = decayed as f64 / trials as f64;
            report.stats.insert("decayed_trials".into(), decayed as f64);
            report.stats.insert("decayed_fraction".into(), decayed_frac);
            report
                .stats
                .insert("near_axis_fraction".into(), near_axis_frac);
            report.push(
                "terminal-minimum-decays",
                decayed_frac >= DECAYED_TRIAL_FRACTION,
                format!(
                    "terminal min density below {:.1e} in {decayed}/{trials} trials",
                    cfg.extinction_threshold
                ),
            );
            report.push(
                "occupation-near-axes",
                near_axis_frac >= NEAR_AXIS_MASS,
                format!(
                    "{:.1}% of post-burn-in samples within {NEAR_AXIS_RADIUS} of an axis \
                     (needs {:.0}%)",
                    100.0 * near_axis_frac,
                    100.0 * NEAR_AXIS_MASS
                ),
            );
        }
    }
    Ok(report)
}
