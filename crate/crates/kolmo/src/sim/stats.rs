//! Time-averaged statistics of sample paths: occupation means, empirical
//! Lyapunov exponents, decay slopes of dying species, and marginal
//! histograms.

use serde::Serialize;

use super::{integrate, SimConfig, SimError, Stepper};
use crate::model::{Dynamics, ErgodicMeasureInfo, Provenance, Subcommunity};

/// Marginal occupation histogram of one species over uniform bins on
/// `[0, max]`; masses sum to one.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
}

const HISTOGRAM_BINS: usize = 50;

fn histogram(values: &[f64]) -> Histogram {
    let max = values.iter().copied().fold(0.0_f64, f64::max).max(1e-300);
    let width = max / HISTOGRAM_BINS as f64;
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for &v in values {
        let bin = ((v / width) as usize).min(HISTOGRAM_BINS - 1);
        counts[bin] += 1;
    }
    let total = values.len().max(1) as f64;
    Histogram {
        edges: (0..=HISTOGRAM_BINS).map(|k| k as f64 * width).collect(),
        masses: counts.iter().map(|&c| c as f64 / total).collect(),
    }
}

/// Post-burn-in summary of a trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct OccupationStats {
    /// Time-averaged densities.
    pub mean: Vec<f64>,
    /// Time average of the exponent integrand `f_i − σ_ii g_i²/2` per
    /// species.
    pub empirical_exponents: Vec<f64>,
    /// Least-squares slope of `ln X_i` versus `t`, computed only for species
    /// whose terminal density is below the extinction threshold.
    pub decay_slopes: Vec<Option<f64>>,
    pub histograms: Vec<Histogram>,
    /// Number of post-burn-in samples the averages are over.
    pub samples: usize,
}

/// Least-squares slope accumulator for `y` against `t`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct SlopeAccumulator {
    n: f64,
    st: f64,
    sy: f64,
    stt: f64,
    sty: f64,
}

impl SlopeAccumulator {
    pub(crate) fn push(&mut self, t: f64, y: f64) {
        self.n += 1.0;
        self.st += t;
        self.sy += y;
        self.stt += t * t;
        self.sty += t * y;
    }

    pub(crate) fn slope(&self) -> Option<f64> {
        if self.n < 2.0 {
            return None;
        }
        let denom = self.n * self.stt - self.st * self.st;
        if denom == 0.0 {
            return None;
        }
        Some((self.n * self.sty - self.st * self.sy) / denom)
    }
}

/// Compute occupation statistics of a stored trajectory. The model supplies
/// the drift and diffusion evaluations behind the empirical exponents.
pub fn occupation_stats<M: Dynamics + ?Sized>(
    model: &M,
    traj: &super::Trajectory,
    cfg: &SimConfig,
) -> Result<OccupationStats, SimError> {
    let n = traj.n();
    let burn_t = cfg.burn_in * cfg.t_final;
    let mut stepper = Stepper::new(model, cfg.dt, cfg.scheme)?;
    let mut integrand = vec![0.0; n];

    let mut mean = vec![0.0; n];
    let mut exp_sum = vec![0.0; n];
    let mut slopes: Vec<SlopeAccumulator> = vec![SlopeAccumulator::default(); n];
    let mut per_species: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut samples = 0usize;

    for (t, x) in traj.samples() {
        if t < burn_t {
            continue;
        }
        samples += 1;
        stepper.exponent_integrand(x, &mut integrand);
        for i in 0..n {
            mean[i] += x[i];
            exp_sum[i] += integrand[i];
            per_species[i].push(x[i]);
            if x[i] > 0.0 {
                slopes[i].push(t, x[i].ln());
            }
        }
    }
    if samples == 0 {
        return Err(SimError::InvalidConfig(
            "trajectory has no samples after burn-in".into(),
        ));
    }
    let count = samples as f64;
    for i in 0..n {
        mean[i] /= count;
        exp_sum[i] /= count;
    }
    let terminal = traj.last_state();
    let decay_slopes = (0..n)
        .map(|i| {
            if terminal[i] < cfg.extinction_threshold {
                slopes[i].slope()
            } else {
                None
            }
        })
        .collect();
    let histograms = per_species.iter().map(|v| histogram(v)).collect();
    Ok(OccupationStats {
        mean,
        empirical_exponents: exp_sum,
        decay_slopes,
        histograms,
        samples,
    })
}

const BATCHES: usize = 10;

/// Monte Carlo estimate of the exponent row against the boundary measure on
/// `support`, obtained by simulating the face subsystem (only supported
/// species are stepped) and time-averaging the exponent integrand for every
/// species. Standard errors come from ten batch means; a batch mean more
/// than five batch standard deviations from the overall mean flags the face
/// as a non-ergodicity suspect.
///
/// The empty support needs no sampling: the origin is a point, so the
/// integrand is evaluated there exactly.
pub fn estimate_exponents<M: Dynamics + ?Sized>(
    model: &M,
    support: &Subcommunity,
    cfg: &SimConfig,
) -> Result<ErgodicMeasureInfo, SimError> {
    let n = model.dim();
    if support.is_empty() {
        let origin = vec![0.0; n];
        let mut stepper = Stepper::new(model, cfg.dt, cfg.scheme)?;
        let mut integrand = vec![0.0; n];
        stepper.exponent_integrand(&origin, &mut integrand);
        let mut info =
            ErgodicMeasureInfo::new_monte_carlo(support.clone(), origin, integrand, vec![0.0; n]);
        info.provenance = Provenance::Analytic;
        info.std_errors = None;
        return Ok(info);
    }

    cfg.validate()?;
    let y0: Vec<f64> = (0..n)
        .map(|i| if support.contains(i) { 1.0 } else { 0.0 })
        .collect();

    let burn_steps = cfg.burn_in_steps();
    let total = cfg.steps() + 1 - burn_steps;
    let batch_len = (total / BATCHES).max(1);

    let mut stepper = Stepper::new(model, cfg.dt, cfg.scheme)?;
    let mut integrand = vec![0.0; n];
    let mut mean = vec![0.0; n];
    let mut batch_sums = vec![0.0; BATCHES * n];
    let mut batch_counts = [0usize; BATCHES];
    let mut samples = 0usize;

    integrate(model, &y0, cfg, 0, |k, _t, x| {
        if k < burn_steps {
            return;
        }
        let batch = ((k - burn_steps) / batch_len).min(BATCHES - 1);
        stepper.exponent_integrand(x, &mut integrand);
        for i in 0..n {
            mean[i] += x[i];
            batch_sums[batch * n + i] += integrand[i];
        }
        batch_counts[batch] += 1;
        samples += 1;
    })?;

    let count = samples as f64;
    for m in mean.iter_mut() {
        *m /= count;
    }

    let mut exponents = vec![0.0; n];
    let mut std_errors = vec![0.0; n];
    for i in 0..n {
        let batch_means: Vec<f64> = (0..BATCHES)
            .filter(|&b| batch_counts[b] > 0)
            .map(|b| batch_sums[b * n + i] / batch_counts[b] as f64)
            .collect();
        let k = batch_means.len() as f64;
        let overall = batch_means.iter().sum::<f64>() / k;
        let var = batch_means
            .iter()
            .map(|b| (b - overall).powi(2))
            .sum::<f64>()
            / (k - 1.0);
        let batch_std = var.sqrt();
        let spread = batch_means
            .iter()
            .map(|b| (b - overall).abs())
            .fold(0.0, f64::max);
        if batch_std > 0.0 && spread > 5.0 * batch_std {
            return Err(SimError::NonErgodicSuspect {
                species: i,
                spread,
                batch_std,
            });
        }
        exponents[i] = overall;
        std_errors[i] = batch_std / k.sqrt();
    }

    // Zero off-support means exactly (they were never stepped).
    for i in 0..n {
        if !support.contains(i) {
            mean[i] = 0.0;
        }
    }
    Ok(ErgodicMeasureInfo::new_monte_carlo(
        support.clone(),
        mean,
        exponents,
        std_errors,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{LVModel, NoiseCovariance, Tolerances};
    use crate::sim::{simulate, SimConfig};

    fn logistic_1d() -> LVModel {
        LVModel::new(
            vec![1.0],
            &[vec![-1.0]],
            NoiseCovariance::scalar(1, 0.0625).unwrap(),
        )
        .unwrap()
    }

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

    #[test]
    fn logistic_mean_smoke() {
        // Short-horizon sanity check; the long-run bound is enforced by the
        // acceptance suite.
        let model = logistic_1d();
        let cfg = SimConfig {
            t_final: 2000.0,
            seed: 3,
            store_stride: 10,
            ..SimConfig::default()
        };
        let traj = simulate(&model, &[0.5], &cfg).unwrap();
        let stats = occupation_stats(&model, &traj, &cfg).unwrap();
        assert!(
            (stats.mean[0] - 0.96875).abs() < 0.05,
            "mean {} too far from stationary value",
            stats.mean[0]
        );
        // Supported species: empirical exponent near zero.
        assert!(stats.empirical_exponents[0].abs() < 0.02);
        // Histogram masses sum to one.
        let total: f64 = stats.histograms[0].masses.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(stats.decay_slopes[0].is_none());
    }

    #[test]
    fn decay_slope_of_excluded_species() {
        // One-axis attractor: species 2 and 3 decay at their invasion rates.
        let model = LVModel::new(
            vec![1.0, 1.0, 1.0],
            &[
                vec![-1.0, 0.0, 0.0],
                vec![-2.0, -1.0, 0.0],
                vec![-2.0, 0.0, -1.0],
            ],
            NoiseCovariance::scalar(3, 0.0625).unwrap(),
        )
        .unwrap();
        let cfg = SimConfig {
            t_final: 100.0,
            seed: 9,
            ..SimConfig::default()
        };
        let traj = simulate(&model, &[0.5, 0.5, 0.5], &cfg).unwrap();
        let stats = occupation_stats(&model, &traj, &cfg).unwrap();
        let slope = stats.decay_slopes[1].expect("species 2 decays");
        assert!(
            (slope + 0.96875).abs() < 0.15 * 0.96875,
            "slope {slope} too far from -0.96875"
        );
    }

    #[test]
    fn exponents_at_origin_need_no_sampling() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let cfg = SimConfig::default();
        let info = estimate_exponents(&model, &Subcommunity::empty(), &cfg).unwrap();
        assert_eq!(info.exponents, vec![0.75, 0.75, 0.75]);
        assert_eq!(info.provenance, Provenance::Analytic);
    }

    #[test]
    fn empirical_exponents_match_analytic_smoke() {
        let model = rps_sym(1.2, 0.6, 0.5);
        let cfg = SimConfig {
            t_final: 2000.0,
            seed: 17,
            ..SimConfig::default()
        };
        let info = estimate_exponents(&model, &Subcommunity::singleton(0), &cfg).unwrap();
        let table = crate::lv::build_measure_tree(&model, &Tolerances::default()).unwrap();
        let analytic = table.row(&Subcommunity::singleton(0)).unwrap();
        for i in 0..3 {
            let se = info.std_errors.as_ref().unwrap()[i];
            let tol = f64::max(0.05, 3.0 * se);
            assert!(
                (info.exponents[i] - analytic.exponents[i]).abs() < tol,
                "species {i}: estimate {} vs analytic {}",
                info.exponents[i],
                analytic.exponents[i]
            );
        }
        assert!(info.mean[1] == 0.0 && info.mean[2] == 0.0);
    }

    #[test]
    fn refining_dt_with_coupled_noise_changes_little() {
        use rand_distr::{Distribution, StandardNormal};
        // Common-random-number comparison: the coarse path uses the summed
        // fine increments, isolating the discretization error.
        let model = logistic_1d();
        let t_final = 500.0;
        let dt_fine = 5e-4;
        let steps_fine = (t_final / dt_fine) as usize;
        let mut rng = crate::sim::trial_rng(23, 0);
        let z: Vec<f64> = (0..steps_fine)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();

        let run = |dt: f64, draws: &[f64]| -> f64 {
            let mut stepper = Stepper::new(&model, dt, crate::sim::Scheme::LogEuler).unwrap();
            let mut x = vec![0.5];
            let mut integrand = vec![0.0];
            let mut acc = 0.0;
            let mut count = 0usize;
            let burn = (draws.len() as f64 * 0.2) as usize;
            for (k, &zk) in draws.iter().enumerate() {
                if k >= burn {
                    stepper.exponent_integrand(&x, &mut integrand);
                    acc += integrand[0];
                    count += 1;
                }
                stepper.step(k as f64 * dt, &mut x, &[zk]).unwrap();
            }
            acc / count as f64
        };

        let fine = run(dt_fine, &z);
        let coarse_draws: Vec<f64> = z
            .chunks_exact(2)
            .map(|pair| (pair[0] + pair[1]) / 2.0_f64.sqrt())
            .collect();
        let coarse = run(2.0 * dt_fine, &coarse_draws);
        // Batch-means SE of this average is about 1e-2; the coupled
        // difference must sit well inside it.
        assert!(
            (fine - coarse).abs() < 5e-3,
            "dt refinement moved the exponent by {}",
            (fine - coarse).abs()
        );
    }
}
