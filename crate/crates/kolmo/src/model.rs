//! Core domain types shared by the analytic, classification, and simulation
//! layers.
//!
//! The process under study is the Kolmogorov SDE
//!
//! ```text
//! dX_i = X_i f_i(X) dt + X_i g_i(X) dE_i,   E = Γᵀ B,  ΓᵀΓ = Σ
//! ```
//!
//! on the non-negative orthant. [`LVModel`] is the Lotka-Volterra special
//! case `f_i(x) = m_i + Σ_j a_ij x_j`, `g ≡ 1`, for which everything is
//! computable in closed form; [`KolmogorovModel`] carries general per-capita
//! drift and diffusion as evaluators and is handled by Monte Carlo only.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// A set of species indices, the species support `I_μ` of a boundary ergodic
/// measure. Indices are stored zero-based and canonically sorted; the empty
/// set stands for the Dirac measure at the origin. All user-facing rendering
/// is one-based.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Subcommunity {
    members: Vec<usize>,
}

impl Subcommunity {
    /// Canonical construction: sorts and deduplicates.
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Subcommunity { members }
    }

    pub fn empty() -> Self {
        Subcommunity::default()
    }

    pub fn singleton(i: usize) -> Self {
        Subcommunity { members: vec![i] }
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Subcommunity::new([i, j])
    }

    pub fn full(n: usize) -> Self {
        Subcommunity {
            members: (0..n).collect(),
        }
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> Self {
        Subcommunity {
            members: (0..n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &Subcommunity) -> bool {
        self.members.iter().all(|i| other.contains(*i))
    }

    /// Parse a one-based comma list such as `"1,3"`. Empty input is the
    /// origin support.
    pub fn parse_one_based(s: &str, n: usize) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subcommunity::empty());
        }
        let mut members = Vec::new();
        for part in s.split(',') {
            let idx: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("invalid species index `{part}`"))?;
            if idx == 0 || idx > n {
                return Err(format!("species index {idx} out of range 1..{n}"));
            }
            members.push(idx - 1);
        }
        Ok(Subcommunity::new(members))
    }
}

impl fmt::Display for Subcommunity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "origin");
        }
        write!(f, "{{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subcommunity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Order by cardinality first, then lexicographically, so tables render as
// origin, singles, pairs.
impl Ord for Subcommunity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl PartialOrd for Subcommunity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Subcommunity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // One-based in any serialized form, matching the CLI conventions.
        let one_based: Vec<usize> = self.members.iter().map(|i| i + 1).collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subcommunity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(deserializer)?;
        if one_based.contains(&0) {
            return Err(serde::de::Error::custom("species indices are one-based"));
        }
        Ok(Subcommunity::new(one_based.into_iter().map(|i| i - 1)))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("noise covariance must be square, got {rows} rows of length {cols}")]
    CovarianceShape { rows: usize, cols: usize },
    #[error("noise covariance is not positive definite: {0}")]
    CovarianceNotPd(linalg::LinalgError),
    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{0}")]
    InvalidParameter(String),
}

/// Symmetric positive definite noise covariance `Σ = (σ_ij)`.
///
/// Construction symmetrizes the input and accepts it exactly when a Cholesky
/// factorization of the symmetric part succeeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseCovariance {
    n: usize,
    entries: Vec<f64>, // row-major, symmetric
}

impl NoiseCovariance {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self, ModelError> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(ModelError::CovarianceShape {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        linalg::cholesky_lower(n, &entries).map_err(ModelError::CovarianceNotPd)?;
        Ok(NoiseCovariance { n, entries })
    }

    /// Diagonal covariance `diag(values)`.
    pub fn diagonal(values: &[f64]) -> Result<Self, ModelError> {
        let n = values.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { values[i] } else { 0.0 })
                    .collect()
            })
            .collect();
        NoiseCovariance::new(&rows)
    }

    /// `σ · I` in dimension `n`.
    pub fn scalar(n: usize, sigma: f64) -> Result<Self, ModelError> {
        NoiseCovariance::diagonal(&vec![sigma; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.get(i, i)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

/// Lotka-Volterra SDE: `dX_i = X_i (m_i + Σ_j a_ij X_j) dt + X_i dE_i`.
///
/// The diffusion scale is identically one; general `g` goes through
/// [`KolmogorovModel`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LVModel {
    m: Vec<f64>,
    a: Vec<f64>, // row-major n×n
    sigma: NoiseCovariance,
}

impl LVModel {
    pub fn new(
        m: Vec<f64>,
        a_rows: &[Vec<f64>],
        sigma: NoiseCovariance,
    ) -> Result<Self, ModelError> {
        let n = m.len();
        if n == 0 {
            return Err(ModelError::InvalidParameter(
                "species count must be at least 1".into(),
            ));
        }
        if a_rows.len() != n {
            return Err(ModelError::DimensionMismatch {
                what: "interaction matrix rows",
                got: a_rows.len(),
                expected: n,
            });
        }
        let mut a = Vec::with_capacity(n * n);
        for row in a_rows {
            if row.len() != n {
                return Err(ModelError::DimensionMismatch {
                    what: "interaction matrix columns",
                    got: row.len(),
                    expected: n,
                });
            }
            a.extend_from_slice(row);
        }
        if sigma.n() != n {
            return Err(ModelError::DimensionMismatch {
                what: "noise covariance",
                got: sigma.n(),
                expected: n,
            });
        }
        Ok(LVModel { m, a, sigma })
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[f64] {
        &self.m
    }

    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n() + j]
    }

    pub fn a_flat(&self) -> &[f64] {
        &self.a
    }

    pub fn a_rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| self.a[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    pub fn sigma(&self) -> &NoiseCovariance {
        &self.sigma
    }

    /// Per-capita drift `f(x) = m + A x`.
    pub fn drift(&self, x: &[f64], out: &mut [f64]) {
        linalg::mat_vec(self.n(), &self.a, x, out);
        for (o, m) in out.iter_mut().zip(&self.m) {
            *o += m;
        }
    }

    /// Relabel species through `perm`, where new index `i` is old index
    /// `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LVModel {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let m = perm.iter().map(|&p| self.m[p]).collect();
        let a_rows: Vec<Vec<f64>> = perm
            .iter()
            .map(|&pi| perm.iter().map(|&pj| self.a(pi, pj)).collect())
            .collect();
        let sig_rows: Vec<Vec<f64>> = perm
            .iter()
            .map(|&pi| perm.iter().map(|&pj| self.sigma.get(pi, pj)).collect())
            .collect();
        LVModel::new(m, &a_rows, NoiseCovariance::new(&sig_rows).unwrap()).unwrap()
    }
}

type EvalFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

/// General Kolmogorov model with evaluator-backed per-capita drift `f` and
/// diffusion scale `g`.
#[derive(Clone)]
pub struct KolmogorovModel {
    n: usize,
    f: EvalFn,
    g: EvalFn,
    sigma: NoiseCovariance,
    name: String,
    params: BTreeMap<String, f64>,
}

impl KolmogorovModel {
    pub fn new(
        n: usize,
        f: EvalFn,
        g: EvalFn,
        sigma: NoiseCovariance,
        name: impl Into<String>,
        params: BTreeMap<String, f64>,
    ) -> Result<Self, ModelError> {
        if sigma.n() != n {
            return Err(ModelError::DimensionMismatch {
                what: "noise covariance",
                got: sigma.n(),
                expected: n,
            });
        }
        Ok(KolmogorovModel {
            n,
            f,
            g,
            sigma,
            name: name.into(),
            params,
        })
    }

    /// Convenience constructor for `g ≡ 1`.
    pub fn with_unit_noise(
        n: usize,
        f: EvalFn,
        sigma: NoiseCovariance,
        name: impl Into<String>,
        params: BTreeMap<String, f64>,
    ) -> Result<Self, ModelError> {
        let g: EvalFn = Arc::new(|_x: &[f64], out: &mut [f64]| out.fill(1.0));
        KolmogorovModel::new(n, f, g, sigma, name, params)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn sigma(&self) -> &NoiseCovariance {
        &self.sigma
    }

    pub fn drift(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }

    pub fn noise_scale(&self, x: &[f64], out: &mut [f64]) {
        (self.g)(x, out)
    }
}

impl fmt::Debug for KolmogorovModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KolmogorovModel")
            .field("n", &self.n)
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

/// Per-capita dynamics abstraction consumed by the SDE engine.
pub trait Dynamics: Send + Sync {
    fn dim(&self) -> usize;
    /// Per-capita drift `f(x)` written into `out`.
    fn drift(&self, x: &[f64], out: &mut [f64]);
    /// Per-capita diffusion scale `g(x)` written into `out`.
    fn noise_scale(&self, x: &[f64], out: &mut [f64]);
    fn sigma(&self) -> &NoiseCovariance;
    /// Short descriptive label recorded in trajectories.
    fn label(&self) -> String {
        format!("{}-species model", self.dim())
    }
}

impl Dynamics for LVModel {
    fn dim(&self) -> usize {
        self.n()
    }
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        LVModel::drift(self, x, out)
    }
    fn noise_scale(&self, _x: &[f64], out: &mut [f64]) {
        out.fill(1.0);
    }
    fn sigma(&self) -> &NoiseCovariance {
        LVModel::sigma(self)
    }
    fn label(&self) -> String {
        format!("lotka-volterra(n={})", self.n())
    }
}

impl Dynamics for KolmogorovModel {
    fn dim(&self) -> usize {
        self.n
    }
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        KolmogorovModel::drift(self, x, out)
    }
    fn noise_scale(&self, x: &[f64], out: &mut [f64]) {
        KolmogorovModel::noise_scale(self, x, out)
    }
    fn sigma(&self) -> &NoiseCovariance {
        &self.sigma
    }
    fn label(&self) -> String {
        self.name.clone()
    }
}

/// Either model flavor, as parsed from a model file or built by the zoo.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Lv(LVModel),
    General(KolmogorovModel),
}

impl AnyModel {
    pub fn as_lv(&self) -> Option<&LVModel> {
        match self {
            AnyModel::Lv(m) => Some(m),
            AnyModel::General(_) => None,
        }
    }
}

impl Dynamics for AnyModel {
    fn dim(&self) -> usize {
        match self {
            AnyModel::Lv(m) => m.n(),
            AnyModel::General(m) => m.n(),
        }
    }
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        match self {
            AnyModel::Lv(m) => Dynamics::drift(m, x, out),
            AnyModel::General(m) => Dynamics::drift(m, x, out),
        }
    }
    fn noise_scale(&self, x: &[f64], out: &mut [f64]) {
        match self {
            AnyModel::Lv(m) => Dynamics::noise_scale(m, x, out),
            AnyModel::General(m) => Dynamics::noise_scale(m, x, out),
        }
    }
    fn sigma(&self) -> &NoiseCovariance {
        match self {
            AnyModel::Lv(m) => m.sigma(),
            AnyModel::General(m) => m.sigma(),
        }
    }
    fn label(&self) -> String {
        match self {
            AnyModel::Lv(m) => Dynamics::label(m),
            AnyModel::General(m) => Dynamics::label(m),
        }
    }
}

/// Where the numbers in an [`ErgodicMeasureInfo`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Analytic,
    MonteCarlo,
}

/// A boundary ergodic measure: its species support, mean density vector, and
/// the full row of Lyapunov exponents `λ_j(μ)` (zero on the support, the
/// external invasion rates off it).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErgodicMeasureInfo {
    pub support: Subcommunity,
    pub mean: Vec<f64>,
    pub exponents: Vec<f64>,
    pub provenance: Provenance,
    /// Batch-means standard errors; only attached by the Monte Carlo
    /// estimator.
    pub std_errors: Option<Vec<f64>>,
}

impl ErgodicMeasureInfo {
    /// Analytic construction. Enforces the support pattern of the mean and
    /// that supported exponents vanish to solver precision.
    pub fn new_analytic(
        support: Subcommunity,
        mean: Vec<f64>,
        exponents: Vec<f64>,
    ) -> Result<Self, ModelError> {
        let n = mean.len();
        if exponents.len() != n {
            return Err(ModelError::DimensionMismatch {
                what: "exponent row",
                got: exponents.len(),
                expected: n,
            });
        }
        for i in 0..n {
            if support.contains(i) {
                if mean[i] <= 0.0 {
                    return Err(ModelError::InvalidParameter(format!(
                        "mean of supported species {} must be positive, got {}",
                        i + 1,
                        mean[i]
                    )));
                }
                if exponents[i].abs() > SUPPORTED_EXPONENT_RESIDUAL {
                    return Err(ModelError::InvalidParameter(format!(
                        "supported species {} has non-vanishing exponent {:.3e}",
                        i + 1,
                        exponents[i]
                    )));
                }
            } else if mean[i] != 0.0 {
                return Err(ModelError::InvalidParameter(format!(
                    "unsupported species {} must have zero mean, got {}",
                    i + 1,
                    mean[i]
                )));
            }
        }
        Ok(ErgodicMeasureInfo {
            support,
            mean,
            exponents,
            provenance: Provenance::Analytic,
            std_errors: None,
        })
    }

    /// Monte Carlo construction; supported exponents are estimates near zero
    /// rather than exact zeros, so no residual check applies.
    pub fn new_monte_carlo(
        support: Subcommunity,
        mean: Vec<f64>,
        exponents: Vec<f64>,
        std_errors: Vec<f64>,
    ) -> Self {
        ErgodicMeasureInfo {
            support,
            mean,
            exponents,
            provenance: Provenance::MonteCarlo,
            std_errors: Some(std_errors),
        }
    }

    pub fn n(&self) -> usize {
        self.mean.len()
    }

    /// External exponents, i.e. entries off the support.
    pub fn external_exponents(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.exponents
            .iter()
            .copied()
            .enumerate()
            .filter(|(i, _)| !self.support.contains(*i))
    }

    pub fn max_external(&self) -> Option<f64> {
        self.external_exponents()
            .map(|(_, l)| l)
            .fold(None, |acc, l| Some(acc.map_or(l, |a: f64| a.max(l))))
    }
}

/// Residual bound for supported exponents of analytic rows. The boundary
/// means solve the linear system to machine precision, so anything above
/// this indicates a solver fault rather than round-off.
pub const SUPPORTED_EXPONENT_RESIDUAL: f64 = 1e-10;

/// Numerical guard rails for sign decisions, linear solves, and extinction
/// labeling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Exponents with magnitude at or below this are flagged degenerate; the
    /// classifier refuses to decide on them.
    pub tol_zero: f64,
    /// One-norm condition bound above which a restricted interaction matrix
    /// is reported singular.
    pub tol_singular: f64,
    /// Density below which a species counts as extinct in simulation output.
    pub extinction_threshold: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_zero: 1e-9,
            tol_singular: 1e12,
            extinction_threshold: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.tol_zero > 0.0 && self.tol_singular > 0.0 && self.extinction_threshold > 0.0 {
            Ok(())
        } else {
            Err(ModelError::InvalidParameter(
                "tolerances must be strictly positive".into(),
            ))
        }
    }

    pub fn with_tol_zero(mut self, tol_zero: f64) -> Self {
        self.tol_zero = tol_zero;
        self
    }
}

/// One violated constraint of the Lotka-Volterra sign assumptions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LvViolation {
    /// `a_ii` must be negative (self-limitation).
    NonNegativeDiagonal { species: usize, value: f64 },
    /// `a_ij > 0` for `i ≠ j` requires `a_ji < 0`; mutualistic or
    /// commensal pairs are rejected.
    ForbiddenPairSigns {
        i: usize,
        j: usize,
        a_ij: f64,
        a_ji: f64,
    },
}

impl fmt::Display for LvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LvViolation::NonNegativeDiagonal { species, value } => write!(
                f,
                "a_{s}{s} must be negative, got {value}",
                s = species + 1
            ),
            LvViolation::ForbiddenPairSigns { i, j, a_ij, a_ji } => write!(
                f,
                "a_{i}{j} = {a_ij} > 0 requires a_{j}{i} < 0, got {a_ji} (mutualistic pair forbidden)",
                i = i + 1,
                j = j + 1
            ),
        }
    }
}

/// Report of [`validate_lv`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LvValidation {
    pub violations: Vec<LvViolation>,
}

impl LvValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the Lotka-Volterra sign assumptions: negative diagonal and no
/// mutualistic pairs. Positive definiteness of `Σ` is guaranteed by
/// [`NoiseCovariance`] construction and together with these signs implies
/// the stochastic boundedness condition, so no further check is needed.
pub fn validate_lv(model: &LVModel) -> LvValidation {
    let n = model.n();
    let mut violations = Vec::new();
    for i in 0..n {
        let aii = model.a(i, i);
        if aii >= 0.0 {
            violations.push(LvViolation::NonNegativeDiagonal {
                species: i,
                value: aii,
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && model.a(i, j) > 0.0 && model.a(j, i) >= 0.0 {
                violations.push(LvViolation::ForbiddenPairSigns {
                    i,
                    j,
                    a_ij: model.a(i, j),
                    a_ji: model.a(j, i),
                });
            }
        }
    }
    LvValidation { violations }
}

/// The classifier verdict, together with the evidence it was decided on.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationOutcome {
    pub kind: OutcomeKind,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Serialize)]
pub enum OutcomeKind {
    /// Every species dies out; the origin attracts all interior starts.
    AllExtinct,
    /// Unique full-support stationary distribution attracting every
    /// interior start.
    Persistence,
    /// Convergence to one of the listed boundary measures, each reached
    /// with positive probability.
    AttractorSet(Vec<ErgodicMeasureInfo>),
    /// Cyclic boundary attraction: occupation measures settle on convex
    /// combinations of the three single-species measures.
    RpsBoundaryAttraction { measures: Vec<ErgodicMeasureInfo> },
    /// Some governing exponent (or the cyclic product criterion) is within
    /// tolerance of zero; the sign calculus refuses to guess.
    Degenerate(DegeneracyReport),
}

impl OutcomeKind {
    pub fn name(&self) -> &'static str {
        match self {
            OutcomeKind::AllExtinct => "AllExtinct",
            OutcomeKind::Persistence => "Persistence",
            OutcomeKind::AttractorSet(_) => "AttractorSet",
            OutcomeKind::RpsBoundaryAttraction { .. } => "RpsBoundaryAttraction",
            OutcomeKind::Degenerate(_) => "Degenerate",
        }
    }

    /// Supports of the attractor measures, when the outcome lists any.
    pub fn attractor_supports(&self) -> Vec<Subcommunity> {
        match self {
            OutcomeKind::AttractorSet(ms) => ms.iter().map(|m| m.support.clone()).collect(),
            OutcomeKind::RpsBoundaryAttraction { measures } => {
                measures.iter().map(|m| m.support.clone()).collect()
            }
            OutcomeKind::AllExtinct => vec![Subcommunity::empty()],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyReport {
    /// Flagged `(support, species)` exponents with their values.
    pub flagged: Vec<FlaggedExponent>,
    /// Set when the cyclic product criterion itself is within tolerance of
    /// zero while individual exponents are clean.
    pub criterion_value: Option<f64>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlaggedExponent {
    pub support: Subcommunity,
    pub species: usize,
    pub value: f64,
}

/// Supporting data the decision was made on.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Evidence {
    /// The boundary exponent table the verdict was read off.
    pub table: Option<crate::lv::ExponentTable>,
    /// Identifier of the matched entry in the sign-pattern decision list,
    /// e.g. `"1.3a"`; `None` for dimensions below 3 or degenerate input.
    pub case_id: Option<String>,
    /// Signed cyclic product criterion, when a rock-paper-scissors structure
    /// was detected.
    pub criterion: Option<f64>,
    pub notes: Vec<String>,
}
