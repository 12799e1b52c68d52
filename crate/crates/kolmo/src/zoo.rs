//! Ready-made models: symmetric three-species cyclic competition, the
//! two-prey/one-predator switching model, and the standard nine-panel family
//! of competitive examples, together with the closed-form analyses that go
//! with them.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::lv::ExponentTable;
use crate::model::{
    AnyModel, ErgodicMeasureInfo, KolmogorovModel, LVModel, ModelError, NoiseCovariance,
    Subcommunity, Tolerances,
};

#[derive(Debug, Error, Clone)]
pub enum ZooError {
    #[error("parameter violation: {0}")]
    Parameter(String),
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("unknown nine-panel variant `{0}` (expected i..ix)")]
    UnknownVariant(String),
    #[error(
        "no closed-form exponent table: {0}; estimate the missing exponents by simulation instead"
    )]
    NotAnalytic(String),
}

/// Parameters of the symmetric cyclic competition model: each species loses
/// to the next one (coefficient `alpha > 1`) and beats the previous one
/// (coefficient `beta < 1`), with common noise variance `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RpsParams {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
}

impl RpsParams {
    pub fn validate(&self) -> Result<(), ZooError> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(ZooError::Parameter(format!(
                "beta must lie in (0, 1), got {}",
                self.beta
            )));
        }
        if self.alpha <= 1.0 {
            return Err(ZooError::Parameter(format!(
                "alpha must exceed 1, got {}",
                self.alpha
            )));
        }
        if self.sigma <= 0.0 {
            return Err(ZooError::Parameter(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Cyclic competition as a Lotka-Volterra model: unit intrinsic rates,
/// interaction rows `(-1, -α, -β)` rotated, `Σ = σ·I`.
pub fn rps_model(p: &RpsParams) -> Result<LVModel, ZooError> {
    p.validate()?;
    let (a, b) = (p.alpha, p.beta);
    Ok(LVModel::new(
        vec![1.0, 1.0, 1.0],
        &[vec![-1.0, -a, -b], vec![-b, -1.0, -a], vec![-a, -b, -1.0]],
        NoiseCovariance::scalar(3, p.sigma)?,
    )?)
}

/// Interior equilibrium of the deterministic cyclic competition flow:
/// `1/(1+α+β)` in every coordinate.
pub fn rps_interior_equilibrium(p: &RpsParams) -> f64 {
    1.0 / (1.0 + p.alpha + p.beta)
}

/// Deterministic long-run regimes of the cyclic competition ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OdeTrichotomy {
    /// `α + β < 2`: the interior equilibrium attracts everything.
    Stable,
    /// `α + β > 2`: the boundary heteroclinic cycle attracts everything off
    /// the diagonal.
    Heteroclinic,
    /// `α + β = 2`: a continuum of periodic orbits.
    Periodic,
}

const TIE_TOL: f64 = 1e-9;

/// Regime of the deterministic cyclic competition flow by the sign of
/// `α + β − 2`.
pub fn rps_ode_trichotomy(p: &RpsParams) -> OdeTrichotomy {
    let margin = p.alpha + p.beta - 2.0;
    if margin.abs() <= TIE_TOL {
        OdeTrichotomy::Periodic
    } else if margin < 0.0 {
        OdeTrichotomy::Stable
    } else {
        OdeTrichotomy::Heteroclinic
    }
}

/// Parameters of the two-prey/one-predator switching model. The predator
/// allocates search effort to each prey in proportion to its share of the
/// prey community.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwitchParams {
    /// Prey intrinsic growth rate.
    pub r: f64,
    /// Interspecific prey competition.
    pub beta: f64,
    /// Predator death rate.
    pub d: f64,
    /// Predator self-limitation.
    pub c: f64,
    /// Noise amplitude; `Σ = eps²·I`.
    pub eps: f64,
}

impl SwitchParams {
    pub fn validate(&self) -> Result<(), ZooError> {
        if self.r <= 0.0 || self.d <= 0.0 || self.c <= 0.0 {
            return Err(ZooError::Parameter("r, d, and c must be positive".into()));
        }
        if self.beta <= 0.0 {
            return Err(ZooError::Parameter("beta must be positive".into()));
        }
        if self.eps < 0.0 {
            return Err(ZooError::Parameter("eps must be non-negative".into()));
        }
        Ok(())
    }
}

/// The switching SDE as an evaluator-backed model.
///
/// The raw per-capita rates contain `x_i/(x_1+x_2)` terms that have no limit
/// at `x_1 = x_2 = 0`; the full drift `x_i f_i` extends continuously by zero
/// there, and the predator rate extends to `−d − c x_3`. The evaluator
/// returns that extension (with the prey search shares set to zero), which
/// is only ever multiplied by `x_i = 0` by the integrator, so the convention
/// never reaches the dynamics.
pub fn switching_model(p: &SwitchParams) -> Result<KolmogorovModel, ZooError> {
    p.validate()?;
    if p.eps <= 0.0 {
        return Err(ZooError::Parameter(
            "the SDE needs eps > 0 (the ODE analysis has its own entry point)".into(),
        ));
    }
    let SwitchParams { r, beta, d, c, .. } = *p;
    let f = Arc::new(move |x: &[f64], out: &mut [f64]| {
        let s = x[0] + x[1];
        let (share0, share1, intake) = if s > 0.0 {
            (x[0] / s, x[1] / s, (x[0] * x[0] + x[1] * x[1]) / s)
        } else {
            (0.0, 0.0, 0.0)
        };
        out[0] = r - x[0] - beta * x[1] - share0 * x[2];
        out[1] = r - x[1] - beta * x[0] - share1 * x[2];
        out[2] = intake - d - c * x[2];
    });
    let params = BTreeMap::from([
        ("r".to_string(), p.r),
        ("beta".to_string(), p.beta),
        ("d".to_string(), p.d),
        ("c".to_string(), p.c),
        ("eps".to_string(), p.eps),
    ]);
    Ok(KolmogorovModel::with_unit_noise(
        3,
        f,
        NoiseCovariance::scalar(3, p.eps * p.eps)?,
        "switching",
        params,
    )?)
}

/// Closed-form boundary means and exponents of the switching model.
///
/// On each face the drift is affine, so the boundary rows follow from the
/// same linear relations as in the Lotka-Volterra case:
///
/// - origin: `λ_1 = λ_2 = r − ε²/2`, `λ_3 = −d − ε²/2`;
/// - single prey `i`: mean `x̄_i = r − ε²/2`, other-prey exponent
///   `r − β x̄_i − ε²/2`, predator exponent `x̄_i − d − ε²/2 = r − d − ε²`;
/// - prey-predator pair `{i, 3}`: means `x̂_3 = (r − d − ε²)/(1 + c)` and
///   `x̂_i = (rc + d + ε²)/(1 + c) − ε²/2`, missing-prey exponent
///   `r − β x̂_i − ε²/2`.
///
/// When the cross-prey exponent is positive a prey-prey measure exists and
/// its predator invasion rate involves a non-affine average; that regime has
/// no closed form here and is reported as such.
pub fn switching_exponent_table(
    p: &SwitchParams,
    tol: &Tolerances,
) -> Result<ExponentTable, ZooError> {
    p.validate()?;
    let SwitchParams { r, beta, d, c, eps } = *p;
    let half_var = eps * eps / 2.0;
    let mut table = ExponentTable::new(3);

    let origin_exp = vec![r - half_var, r - half_var, -d - half_var];
    table.insert(
        ErgodicMeasureInfo::new_analytic(Subcommunity::empty(), vec![0.0; 3], origin_exp.clone())
            .expect("origin row is structurally valid"),
    );
    for i in 0..3 {
        if origin_exp[i].abs() <= tol.tol_zero {
            table.flag_degenerate(Subcommunity::empty(), i);
        }
    }

    let prey_growth = r - half_var;
    if prey_growth <= tol.tol_zero {
        // No prey measure can form; the table stops at the origin row.
        return Ok(table);
    }

    let xbar = prey_growth;
    let cross_prey = r - beta * xbar - half_var;
    let predator_invasion = r - d - eps * eps;
    for i in 0..2 {
        let other = 1 - i;
        let mut mean = vec![0.0; 3];
        mean[i] = xbar;
        let mut exps = vec![0.0; 3];
        exps[other] = cross_prey;
        exps[2] = predator_invasion;
        let support = Subcommunity::singleton(i);
        for (j, &l) in exps.iter().enumerate() {
            if j != i && l.abs() <= tol.tol_zero {
                table.flag_degenerate(support.clone(), j);
            }
        }
        table.insert(
            ErgodicMeasureInfo::new_analytic(support, mean, exps)
                .expect("prey row is structurally valid"),
        );
    }

    if cross_prey > tol.tol_zero {
        return Err(ZooError::NotAnalytic(format!(
            "cross-prey invasion exponent {cross_prey:.4} is positive, so a prey-prey measure \
             exists and its predator exponent averages a non-affine intake rate"
        )));
    }

    if predator_invasion > tol.tol_zero {
        let x3 = (r - d - eps * eps) / (1.0 + c);
        let xprey = (r * c + d + eps * eps) / (1.0 + c) - half_var;
        if xprey <= 0.0 || x3 <= 0.0 {
            return Err(ZooError::NotAnalytic(format!(
                "prey-predator face means are not interior: prey {xprey:.4}, predator {x3:.4}"
            )));
        }
        let missing_prey = r - beta * xprey - half_var;
        for i in 0..2 {
            let other = 1 - i;
            let mut mean = vec![0.0; 3];
            mean[i] = xprey;
            mean[2] = x3;
            let mut exps = vec![0.0; 3];
            exps[other] = missing_prey;
            let support = Subcommunity::pair(i, 2);
            if missing_prey.abs() <= tol.tol_zero {
                table.flag_degenerate(support.clone(), other);
            }
            table.insert(
                ErgodicMeasureInfo::new_analytic(support, mean, exps)
                    .expect("prey-predator row is structurally valid"),
            );
        }
    }

    Ok(table)
}

/// Deterministic permanence verdict for the switching ODE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Permanence {
    Permanent,
    Impermanent,
    Degenerate,
}

/// Permanence of the switching ODE (requires `β > 1`): permanent exactly
/// when `r/(1+β) > d` and `(r/β)(1 + c(1−β)) > d` both hold strictly.
pub fn switching_ode_permanence(p: &SwitchParams) -> Result<Permanence, ZooError> {
    p.validate()?;
    if p.beta <= 1.0 {
        return Err(ZooError::Parameter(format!(
            "the permanence dichotomy assumes beta > 1, got {}",
            p.beta
        )));
    }
    let first = p.r / (1.0 + p.beta) - p.d;
    let second = (p.r / p.beta) * (1.0 + p.c * (1.0 - p.beta)) - p.d;
    if first.abs() <= TIE_TOL || second.abs() <= TIE_TOL {
        return Ok(Permanence::Degenerate);
    }
    if first > 0.0 && second > 0.0 {
        Ok(Permanence::Permanent)
    } else {
        Ok(Permanence::Impermanent)
    }
}

/// The nine standard panels of three-species dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Figure1Variant {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
}

impl Figure1Variant {
    pub const ALL: [Figure1Variant; 9] = [
        Figure1Variant::I,
        Figure1Variant::Ii,
        Figure1Variant::Iii,
        Figure1Variant::Iv,
        Figure1Variant::V,
        Figure1Variant::Vi,
        Figure1Variant::Vii,
        Figure1Variant::Viii,
        Figure1Variant::Ix,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Figure1Variant::I => "i",
            Figure1Variant::Ii => "ii",
            Figure1Variant::Iii => "iii",
            Figure1Variant::Iv => "iv",
            Figure1Variant::V => "v",
            Figure1Variant::Vi => "vi",
            Figure1Variant::Vii => "vii",
            Figure1Variant::Viii => "viii",
            Figure1Variant::Ix => "ix",
        }
    }
}

impl FromStr for Figure1Variant {
    type Err = ZooError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Figure1Variant::I),
            "ii" | "2" => Ok(Figure1Variant::Ii),
            "iii" | "3" => Ok(Figure1Variant::Iii),
            "iv" | "4" => Ok(Figure1Variant::Iv),
            "v" | "5" => Ok(Figure1Variant::V),
            "vi" | "6" => Ok(Figure1Variant::Vi),
            "vii" | "7" => Ok(Figure1Variant::Vii),
            "viii" | "8" => Ok(Figure1Variant::Viii),
            "ix" | "9" => Ok(Figure1Variant::Ix),
            other => Err(ZooError::UnknownVariant(other.to_string())),
        }
    }
}

/// Default noise amplitude of the nine panels: diffusion `0.25 X_i dB_i`,
/// i.e. `σ_ii = 0.0625`.
pub const FIGURE1_DEFAULT_NOISE: f64 = 0.25;

/// Build one of the nine panels with noise amplitude `noise` (`σ_ii =
/// noise²`) and the drift scale `c = 1` where the panel carries one.
pub fn figure1_model(variant: Figure1Variant, noise: f64) -> Result<AnyModel, ZooError> {
    figure1_model_scaled(variant, noise, 1.0)
}

/// Like [`figure1_model`] with an explicit drift scale for the panels that
/// carry the leading factor `c` (variants viii and ix).
pub fn figure1_model_scaled(
    variant: Figure1Variant,
    noise: f64,
    c: f64,
) -> Result<AnyModel, ZooError> {
    if noise <= 0.0 {
        return Err(ZooError::Parameter(format!(
            "noise amplitude must be positive, got {noise}"
        )));
    }
    if c <= 0.0 {
        return Err(ZooError::Parameter(format!(
            "drift scale must be positive, got {c}"
        )));
    }
    let sigma = NoiseCovariance::scalar(3, noise * noise)?;
    let lv = |m: [f64; 3], a: [[f64; 3]; 3]| -> Result<AnyModel, ZooError> {
        Ok(AnyModel::Lv(LVModel::new(
            m.to_vec(),
            &a.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
            sigma.clone(),
        )?))
    };
    match variant {
        Figure1Variant::I => lv(
            [1.0, 1.0, 1.0],
            [[-1.0, 0.0, 0.0], [-2.0, -1.0, 0.0], [-2.0, 0.0, -1.0]],
        ),
        Figure1Variant::Ii => lv(
            [1.0, 1.0, 1.0],
            [[-1.0, -2.0, 0.0], [-2.0, -1.0, 0.0], [-2.0, -2.0, -1.0]],
        ),
        Figure1Variant::Iii => lv(
            [1.0, 1.0, 1.0],
            [[-1.0, -2.0, -2.0], [-2.0, -1.0, -2.0], [-2.0, -2.0, -1.0]],
        ),
        Figure1Variant::Iv => lv(
            [1.0, 1.0, 1.0],
            [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [-1.0, -1.0, -1.0]],
        ),
        Figure1Variant::V => lv(
            [1.0, 1.0, 1.0],
            [[-1.0, 0.0, -2.0], [0.0, -1.0, -2.0], [-1.0, -1.0, -1.0]],
        ),
        Figure1Variant::Vi => lv(
            [1.0, -0.1, 1.0],
            [[-1.0, 0.0, -2.0], [0.4, -0.5, 0.4], [-2.0, -1.0, 0.0]],
        ),
        Figure1Variant::Vii => {
            let f = Arc::new(|x: &[f64], out: &mut [f64]| {
                out[0] = 1.0 - x[0] - 4.0 * x[1] * x[2];
                out[1] = 1.0 - x[1] - 4.0 * x[0] * x[2];
                out[2] = 1.0 - x[2] - x[0] * x[1];
            });
            Ok(AnyModel::General(KolmogorovModel::with_unit_noise(
                3,
                f,
                sigma,
                "figure1-vii",
                BTreeMap::from([("noise".to_string(), noise)]),
            )?))
        }
        Figure1Variant::Viii => lv(
            [c, c, c],
            [
                [-c, -2.0 * c, -0.8 * c],
                [-0.8 * c, -c, -2.0 * c],
                [-2.0 * c, -0.8 * c, -c],
            ],
        ),
        Figure1Variant::Ix => lv([c, c, c], [[-c, 0.0, 0.0], [0.0, -c, 0.0], [0.0, 0.0, -c]]),
    }
}
