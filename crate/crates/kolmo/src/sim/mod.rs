//! Numerical integration of the Kolmogorov SDE and everything built on it:
//! occupation statistics, Monte Carlo exponent estimation, survivor-pattern
//! ensembles, and empirical verification of classifier verdicts.
//!
//! The default scheme integrates the exact Itô transform of the log
//! densities,
//!
//! ```text
//! X_i(t+dt) = X_i(t) · exp( (f_i(X) − σ_ii g_i(X)²/2) dt + g_i(X) (L z)_i √dt ),
//! ```
//!
//! with `L` the lower Cholesky factor of `Σ` and `z` a standard normal
//! vector. Positivity is preserved exactly, zero coordinates stay exactly
//! zero, and the drift is precisely the Lyapunov-exponent integrand, so the
//! empirical exponent of a species is a straight time average of its drift
//! term. A plain Euler-Maruyama variant is available for comparison only.

mod ensemble;
mod stats;

pub use ensemble::{
    estimate_outcome_frequencies, verify_classification, CheckResult, FrequencyReport,
    VerificationReport,
};
pub use stats::{estimate_exponents, occupation_stats, Histogram, OccupationStats};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::model::{Dynamics, NoiseCovariance};

#[derive(Debug, Error, Clone)]
pub enum SimError {
    #[error("noise covariance is not positive definite: {0}")]
    NotPositiveDefinite(linalg::LinalgError),
    #[error("non-finite dynamics at t = {t}: state {state:?}")]
    NonFinite { t: f64, state: Vec<f64> },
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error(
        "batch means of species {species} disagree beyond 5 standard errors \
         (spread {spread:.3e}, batch std {batch_std:.3e}); the face system may not be ergodic"
    )]
    NonErgodicSuspect {
        species: usize,
        spread: f64,
        batch_std: f64,
    },
}

/// Integration scheme. Log-Euler is exact in the noise term and preserves
/// positivity; plain Euler-Maruyama is kept for comparison and truncates
/// negative excursions at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Scheme {
    #[default]
    LogEuler,
    EulerMaruyama,
}

/// Simulation parameters. `seed` fully determines the noise; ensemble trial
/// `k` runs on stream `k` of the same seed, so trial results never depend on
/// ensemble size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub t_final: f64,
    /// Fraction of the horizon discarded before computing time averages.
    pub burn_in: f64,
    pub seed: u64,
    /// Density below which a species counts as extinct in output labeling.
    pub extinction_threshold: f64,
    /// Keep every `store_stride`-th grid point when materializing a
    /// trajectory.
    pub store_stride: usize,
    pub scheme: Scheme,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-3,
            t_final: 100.0,
            burn_in: 0.2,
            seed: 0,
            extinction_threshold: 1e-8,
            store_stride: 1,
            scheme: Scheme::LogEuler,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.dt > 0.0 && self.dt < self.t_final) {
            return Err(SimError::InvalidConfig(format!(
                "need 0 < dt < t_final, got dt = {}, t_final = {}",
                self.dt, self.t_final
            )));
        }
        if !(0.0..1.0).contains(&self.burn_in) {
            return Err(SimError::InvalidConfig(format!(
                "burn_in must lie in [0, 1), got {}",
                self.burn_in
            )));
        }
        if self.store_stride == 0 {
            return Err(SimError::InvalidConfig(
                "store_stride must be positive".into(),
            ));
        }
        if self.extinction_threshold <= 0.0 {
            return Err(SimError::InvalidConfig(
                "extinction_threshold must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).floor() as usize
    }

    /// First step index whose samples enter time averages.
    pub fn burn_in_steps(&self) -> usize {
        (self.steps() as f64 * self.burn_in).ceil() as usize
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Lower-triangular `L` with `L Lᵀ = Σ`, as a row-major matrix.
///
/// Noise increments are generated as `dE = L z √dt` for standard normal `z`,
/// which gives `Cov(dE) = Σ dt`. In the driving-noise convention
/// `E = Γᵀ B` with `Γᵀ Γ = Σ`, this `L` is `Γᵀ`.
pub fn noise_factor(sigma: &NoiseCovariance) -> Result<Vec<f64>, SimError> {
    linalg::cholesky_lower(sigma.n(), sigma.entries()).map_err(SimError::NotPositiveDefinite)
}

/// Reusable stepping context: the Cholesky factor plus scratch buffers.
pub struct Stepper<'m, M: Dynamics + ?Sized> {
    model: &'m M,
    n: usize,
    chol: Vec<f64>,
    drift: Vec<f64>,
    noise_scale: Vec<f64>,
    correlated: Vec<f64>,
    sqrt_dt: f64,
    dt: f64,
    scheme: Scheme,
}

impl<'m, M: Dynamics + ?Sized> Stepper<'m, M> {
    pub fn new(model: &'m M, dt: f64, scheme: Scheme) -> Result<Self, SimError> {
        let n = model.dim();
        let chol = noise_factor(model.sigma())?;
        Ok(Stepper {
            model,
            n,
            chol,
            drift: vec![0.0; n],
            noise_scale: vec![0.0; n],
            correlated: vec![0.0; n],
            sqrt_dt: dt.sqrt(),
            dt,
            scheme,
        })
    }

    /// Advance `state` in place by one step using the standard normal draws
    /// `z`. Zero coordinates are left exactly zero.
    pub fn step(&mut self, t: f64, state: &mut [f64], z: &[f64]) -> Result<(), SimError> {
        debug_assert_eq!(state.len(), self.n);
        debug_assert_eq!(z.len(), self.n);
        self.model.drift(state, &mut self.drift);
        self.model.noise_scale(state, &mut self.noise_scale);
        linalg::mat_vec(self.n, &self.chol, z, &mut self.correlated);
        let sigma = self.model.sigma();
        for i in 0..self.n {
            if state[i] == 0.0 {
                continue;
            }
            let g = self.noise_scale[i];
            let noise = g * self.correlated[i] * self.sqrt_dt;
            let next = match self.scheme {
                Scheme::LogEuler => {
                    let log_drift = self.drift[i] - sigma.diag(i) * g * g / 2.0;
                    state[i] * (log_drift * self.dt + noise).exp()
                }
                Scheme::EulerMaruyama => {
                    let candidate = state[i] * (1.0 + self.drift[i] * self.dt + noise);
                    candidate.max(0.0)
                }
            };
            if !next.is_finite() {
                return Err(SimError::NonFinite {
                    t,
                    state: state.to_vec(),
                });
            }
            state[i] = next;
        }
        Ok(())
    }

    /// Lyapunov-exponent integrand `f_i(x) − σ_ii g_i(x)²/2` for the current
    /// state, written into `out`.
    pub fn exponent_integrand(&mut self, state: &[f64], out: &mut [f64]) {
        self.model.drift(state, &mut self.drift);
        self.model.noise_scale(state, &mut self.noise_scale);
        let sigma = self.model.sigma();
        for i in 0..self.n {
            out[i] = self.drift[i] - sigma.diag(i) * self.noise_scale[i].powi(2) / 2.0;
        }
    }
}

/// One log-Euler step as a standalone call; builds the noise factor on the
/// fly, so prefer [`Stepper`] in loops.
pub fn step_log_euler<M: Dynamics + ?Sized>(
    model: &M,
    state: &[f64],
    dt: f64,
    z: &[f64],
) -> Result<Vec<f64>, SimError> {
    let mut stepper = Stepper::new(model, dt, Scheme::LogEuler)?;
    let mut next = state.to_vec();
    stepper.step(0.0, &mut next, z)?;
    Ok(next)
}

/// RNG for ensemble trial `k` under base seed `seed`: same keystream family,
/// independent stream per trial.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Drive the integrator over the full grid, handing every step (including
/// the initial state at index 0) to `observer`. Nothing is stored.
pub(crate) fn integrate<M, F>(
    model: &M,
    y0: &[f64],
    cfg: &SimConfig,
    trial: u64,
    mut observer: F,
) -> Result<(), SimError>
where
    M: Dynamics + ?Sized,
    F: FnMut(usize, f64, &[f64]),
{
    cfg.validate()?;
    let n = model.dim();
    assert_eq!(y0.len(), n, "initial state dimension mismatch");
    let mut stepper = Stepper::new(model, cfg.dt, cfg.scheme)?;
    let mut rng = trial_rng(cfg.seed, trial);
    let mut state = y0.to_vec();
    let mut z = vec![0.0; n];
    observer(0, 0.0, &state);
    let steps = cfg.steps();
    for k in 1..=steps {
        for zi in z.iter_mut() {
            *zi = StandardNormal.sample(&mut rng);
        }
        let t = (k - 1) as f64 * cfg.dt;
        stepper.step(t, &mut state, &z)?;
        observer(k, k as f64 * cfg.dt, &state);
    }
    Ok(())
}

/// A stored sample path on the uniform grid, every `store_stride`-th point.
#[derive(Debug, Clone)]
pub struct Trajectory {
    n: usize,
    times: Vec<f64>,
    states: Vec<f64>, // row-major: sample index × species
    seed: u64,
    model_label: String,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.n..(k + 1) * self.n]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn model_label(&self) -> &str {
        &self.model_label
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.times
            .iter()
            .copied()
            .zip(self.states.chunks_exact(self.n))
    }

    /// CSV with header `t,x1,..,xn`, one row per stored grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for i in 0..self.n {
            out.push_str(&format!(",x{}", i + 1));
        }
        out.push('\n');
        for (t, x) in self.samples() {
            out.push_str(&format!("{t}"));
            for v in x {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Integrate and store the path. Reproducible: identical `(model, y0, cfg)`
/// gives a bitwise-identical trajectory.
pub fn simulate<M: Dynamics + ?Sized>(
    model: &M,
    y0: &[f64],
    cfg: &SimConfig,
) -> Result<Trajectory, SimError> {
    simulate_trial(model, y0, cfg, 0, model.label())
}

pub(crate) fn simulate_trial<M: Dynamics + ?Sized>(
    model: &M,
    y0: &[f64],
    cfg: &SimConfig,
    trial: u64,
    model_label: String,
) -> Result<Trajectory, SimError> {
    let n = model.dim();
    let steps = cfg.steps();
    let stored = steps / cfg.store_stride + 1;
    let mut times = Vec::with_capacity(stored);
    let mut states = Vec::with_capacity(stored * n);
    integrate(model, y0, cfg, trial, |k, t, x| {
        if k % cfg.store_stride == 0 {
            times.push(t);
            states.extend_from_slice(x);
        }
    })?;
    Ok(Trajectory {
        n,
        times,
        states,
        seed: cfg.seed,
        model_label,
    })
}
