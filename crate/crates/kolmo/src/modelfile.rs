//! The JSON model-file schema: raw Lotka-Volterra coefficients, named
//! zoo models with parameter records, or custom per-capita drift given as
//! arithmetic expressions in `x1..xn`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr;
use crate::model::{AnyModel, KolmogorovModel, LVModel, NoiseCovariance};
use crate::zoo::{self, Figure1Variant, RpsParams, SwitchParams};

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid model file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Model(#[from] crate::model::ModelError),
    #[error("invalid builtin parameters: {0}")]
    Zoo(#[from] zoo::ZooError),
    #[error("drift expression {index} is invalid: {source}")]
    Expr {
        index: usize,
        source: expr::ExprError,
    },
    #[error("{0}")]
    Schema(String),
}

/// On-disk model description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelFile {
    LotkaVolterra {
        m: Vec<f64>,
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        sigma: Vec<Vec<f64>>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, serde_json::Value>,
    },
    CustomExpression {
        f: Vec<String>,
        sigma: Vec<Vec<f64>>,
    },
}

/// A parsed model together with its file form (kept for hashing, manifests,
/// and builtin-specific analysis paths).
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub file: ModelFile,
    pub model: AnyModel,
}

impl LoadedModel {
    pub fn n(&self) -> usize {
        match &self.model {
            AnyModel::Lv(m) => m.n(),
            AnyModel::General(m) => m.n(),
        }
    }

    /// Switching-model parameters when the file names that builtin.
    pub fn switching_params(&self) -> Option<SwitchParams> {
        match &self.file {
            ModelFile::Builtin { name, params } if name == "switching" => Some(SwitchParams {
                r: number(params, "r").unwrap_or(1.0),
                beta: number(params, "beta").unwrap_or(1.2),
                d: number(params, "d").unwrap_or(0.5),
                c: number(params, "c").unwrap_or(0.1),
                eps: number(params, "eps").unwrap_or(0.05),
            }),
            _ => None,
        }
    }
}

fn number(params: &BTreeMap<String, serde_json::Value>, key: &str) -> Option<f64> {
    params.get(key).and_then(|v| v.as_f64())
}

fn require_number(
    params: &BTreeMap<String, serde_json::Value>,
    key: &str,
    default: Option<f64>,
) -> Result<f64, ModelFileError> {
    match params.get(key) {
        Some(v) => v
            .as_f64()
            .ok_or_else(|| ModelFileError::Schema(format!("parameter `{key}` must be a number"))),
        None => default
            .ok_or_else(|| ModelFileError::Schema(format!("missing required parameter `{key}`"))),
    }
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, ModelFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    /// Instantiate the described model.
    pub fn build(&self) -> Result<LoadedModel, ModelFileError> {
        let model = match self {
            ModelFile::LotkaVolterra { m, a, sigma } => {
                let n = m.len();
                if a.len() != n || a.iter().any(|row| row.len() != n) {
                    return Err(ModelFileError::Schema(format!(
                        "A must be {n}x{n} to match m"
                    )));
                }
                let sigma = NoiseCovariance::new(sigma)?;
                AnyModel::Lv(LVModel::new(m.clone(), a, sigma)?)
            }
            ModelFile::Builtin { name, params } => build_builtin(name, params)?,
            ModelFile::CustomExpression { f, sigma } => {
                let n = f.len();
                if sigma.len() != n {
                    return Err(ModelFileError::Schema(format!(
                        "sigma must be {n}x{n} to match f"
                    )));
                }
                let sigma = NoiseCovariance::new(sigma)?;
                let exprs: Vec<expr::Expr> = f
                    .iter()
                    .enumerate()
                    .map(|(index, text)| {
                        expr::parse(text, n)
                            .map_err(|source| ModelFileError::Expr { index, source })
                    })
                    .collect::<Result<_, _>>()?;
                let eval = Arc::new(move |x: &[f64], out: &mut [f64]| {
                    for (o, e) in out.iter_mut().zip(&exprs) {
                        *o = e.eval(x);
                    }
                });
                AnyModel::General(KolmogorovModel::with_unit_noise(
                    n,
                    eval,
                    sigma,
                    "custom",
                    BTreeMap::new(),
                )?)
            }
        };
        Ok(LoadedModel {
            file: self.clone(),
            model,
        })
    }

    /// File form of a named zoo model, for round-tripping.
    pub fn builtin(name: &str, params: &[(&str, f64)]) -> ModelFile {
        ModelFile::Builtin {
            name: name.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
                .collect(),
        }
    }
}

fn build_builtin(
    name: &str,
    params: &BTreeMap<String, serde_json::Value>,
) -> Result<AnyModel, ModelFileError> {
    match name {
        "rps" => {
            let p = RpsParams {
                alpha: require_number(params, "alpha", None)?,
                beta: require_number(params, "beta", None)?,
                sigma: require_number(params, "sigma", None)?,
            };
            Ok(AnyModel::Lv(zoo::rps_model(&p)?))
        }
        "switching" => {
            let p = SwitchParams {
                r: require_number(params, "r", None)?,
                beta: require_number(params, "beta", None)?,
                d: require_number(params, "d", None)?,
                c: require_number(params, "c", None)?,
                eps: require_number(params, "eps", None)?,
            };
            Ok(AnyModel::General(zoo::switching_model(&p)?))
        }
        "figure1" => {
            let variant: Figure1Variant = params
                .get("variant")
                .and_then(|v| v.as_str())
                .ok_or_else(|| {
                    ModelFileError::Schema("figure1 needs a string parameter `variant`".into())
                })?
                .parse()?;
            let noise = require_number(params, "noise", Some(zoo::FIGURE1_DEFAULT_NOISE))?;
            let scale = require_number(params, "c", Some(1.0))?;
            Ok(zoo::figure1_model_scaled(variant, noise, scale)?)
        }
        other => Err(ModelFileError::Schema(format!(
            "unknown builtin `{other}` (expected rps, switching, or figure1)"
        ))),
    }
}

/// Read and build a model file from disk.
pub fn load(path: &Path) -> Result<(LoadedModel, Vec<u8>), ModelFileError> {
    let bytes = std::fs::read(path).map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let file = ModelFile::from_json(&text)?;
    Ok((file.build()?, bytes))
}
