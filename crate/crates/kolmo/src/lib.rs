//! Long-term behavior of small stochastic interacting-species models.
//!
//! The systems under study are Kolmogorov SDEs on the non-negative orthant,
//!
//! ```text
//! dX_i = X_i f_i(X) dt + X_i g_i(X) dE_i,      i = 1..n,  n ≤ 3,
//! ```
//!
//! driven by correlated Brownian noise with covariance `Σ`. Their long-run
//! statistics are decided by the external Lyapunov exponents
//!
//! ```text
//! λ_i(μ) = ∫ ( f_i(x) − σ_ii g_i(x)²/2 ) μ(dx)
//! ```
//!
//! of the boundary ergodic measures `μ`: the average per-capita growth rate
//! of species `i` while it is infinitesimally rare and the rest of the
//! community has settled into `μ`. For Lotka-Volterra drift the exponents
//! come out of small linear solves ([`lv`]); for general drift they are
//! estimated by simulation ([`sim`]). The sign pattern of the table decides
//! among persistence, convergence to boundary attractors, cyclic
//! rock-paper-scissors extinction, or full extinction ([`classify`]).
//!
//! The crate ships:
//!
//! - [`model`] — shared domain types and Lotka-Volterra validation,
//! - [`lv`] — analytic boundary means and exponent tables,
//! - [`classify`] — the sign-pattern decision procedure,
//! - [`sim`] — a positivity-preserving log-Euler integrator, occupation
//!   statistics, Monte Carlo exponent estimation, and empirical verification
//!   of classifier verdicts,
//! - [`zoo`] — ready-made models (symmetric cyclic competition, prey
//!   switching, the standard nine-panel family),
//! - [`modelfile`] / [`cli`] — the JSON model-file schema and the `kolmo`
//!   command-line tool.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example classify_rps`.

pub mod classify;
pub mod cli;
pub mod expr;
pub mod linalg;
pub mod lv;
pub mod manifest;
pub mod model;
pub mod modelfile;
pub mod sim;
pub mod zoo;

pub use classify::{classify_3d, classify_table, detect_rps, rps_criterion};
pub use lv::{
    build_measure_tree, detect_degeneracy, exponents_at, exponents_at_origin, solve_boundary_means,
    ExponentTable,
};
pub use model::{
    AnyModel, ClassificationOutcome, Dynamics, ErgodicMeasureInfo, KolmogorovModel, LVModel,
    NoiseCovariance, OutcomeKind, Subcommunity, Tolerances,
};
