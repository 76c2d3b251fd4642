//! Seeded randomized property suites and their reports.
//!
//! Each registered property draws its inputs from a private stream seeded by
//! `(suite seed, property, model, dimension, trial)`, so any failure can be
//! replayed from its recorded sub-seed. Trials run in parallel and are merged
//! in a fixed order; reports carry no timestamps and are byte-identical for
//! identical configurations.

mod ctx;
mod props;

use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use ctx::{Check, TrialCtx};

use crate::error::{Error, Result};
use crate::model::TripleModel;
use crate::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rect,
    Cstar,
    Jbstar,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Rect, ModelKind::Cstar, ModelKind::Jbstar];

    /// The model of size `dim`; rectangular models are `dim x (dim + 1)`.
    pub fn at(self, dim: usize) -> TripleModel {
        match self {
            ModelKind::Rect => TripleModel::Rect { m: dim, n: dim + 1 },
            ModelKind::Cstar => TripleModel::CStar { n: dim },
            ModelKind::Jbstar => TripleModel::JBStar { n: dim },
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Rect => "rect",
            ModelKind::Cstar => "cstar",
            ModelKind::Jbstar => "jbstar",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" => Ok(ModelKind::Rect),
            "cstar" => Ok(ModelKind::Cstar),
            "jbstar" => Ok(ModelKind::Jbstar),
            other => Err(Error::InvalidArgument(format!(
                "unknown model kind `{other}`"
            ))),
        }
    }
}

pub type TrialFn = fn(&mut TrialCtx) -> Result<Check>;

/// A registered property: name, the statement it checks, the models it
/// applies to, and its default trial budget and tolerance.
#[derive(Clone, Copy)]
pub struct Property {
    pub name: &'static str,
    pub anchor: &'static str,
    pub models: &'static [ModelKind],
    pub trials: usize,
    pub tol: f64,
    pub run: TrialFn,
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("anchor", &self.anchor)
            .field("models", &self.models)
            .finish()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyInfo {
    pub name: &'static str,
    pub anchor: &'static str,
    pub models: &'static [ModelKind],
}

pub fn registry() -> &'static [Property] {
    props::REGISTRY
}

pub fn registered_properties() -> Vec<PropertyInfo> {
    registry()
        .iter()
        .map(|p| PropertyInfo {
            name: p.name,
            anchor: p.anchor,
            models: p.models,
        })
        .collect()
}

pub fn lookup(name: &str) -> Result<&'static Property> {
    registry()
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownProperty(name.to_owned()))
}

/// One entry of a suite configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertySpec {
    pub name: String,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    /// Restricts the property's models; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub models: Option<Vec<ModelKind>>,
}

pub const DEFAULT_DIMS: [usize; 3] = [2, 3, 4];
pub const DEFAULT_SEED: u64 = 1;

/// Every registered property at its default budget over dims `{2, 3, 4}`.
pub fn default_suite(seed: u64) -> Vec<PropertySpec> {
    registry()
        .iter()
        .map(|p| PropertySpec {
            name: p.name.to_owned(),
            dims: DEFAULT_DIMS.to_vec(),
            trials: p.trials,
            tol: p.tol,
            seed,
            models: None,
        })
        .collect()
}

pub fn parse_config(json: &str) -> Result<Vec<PropertySpec>> {
    let specs: Vec<PropertySpec> = serde_json::from_str(json)?;
    for s in &specs {
        lookup(&s.name)?;
        if s.dims.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "{}: dimensions must be positive",
                s.name
            )));
        }
        if s.tol.is_nan() || s.tol < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{}: tolerance must be non-negative",
                s.name
            )));
        }
    }
    Ok(specs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureRecord {
    pub model: ModelKind,
    pub dim: usize,
    pub trial: usize,
    pub sub_seed: u64,
    pub input_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub anchor: &'static str,
    pub models: Vec<ModelKind>,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub tol: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureRecord>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub package: &'static str,
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
    pub float: &'static str,
    pub rng: &'static str,
}

impl Environment {
    pub fn current() -> Self {
        Self {
            package: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            float: "ieee754-binary64",
            rng: "chacha8",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub properties: Vec<PropertyReport>,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Result of a single trial, before merging.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub model: ModelKind,
    pub dim: usize,
    pub trial: usize,
    pub sub_seed: u64,
    pub input_hash: u64,
    pub result: std::result::Result<Check, String>,
}

impl TrialOutcome {
    fn passes(&self, tol: f64) -> bool {
        matches!(&self.result, Ok(c) if c.passes(tol))
    }
}

pub fn trial_seed(seed: u64, name: &str, model: ModelKind, dim: usize, trial: usize) -> u64 {
    random::sub_seed(seed, &format!("{name}/{model}/{dim}"), trial as u64)
}

/// Runs one trial from its sub-seed; the replay entry point.
pub fn run_trial(
    property: &Property,
    model: ModelKind,
    dim: usize,
    trial: usize,
    sub_seed: u64,
    tol: f64,
) -> TrialOutcome {
    let mut ctx = TrialCtx::new(model.at(dim), dim, tol, sub_seed);
    // a panicking trial is a failure to report, not a reason to lose the run
    let result = panic::catch_unwind(AssertUnwindSafe(|| (property.run)(&mut ctx)))
        .unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            Err(Error::InvalidArgument(format!("trial panicked: {msg}")))
        })
        .map_err(|e| e.to_string());
    TrialOutcome {
        model,
        dim,
        trial,
        sub_seed,
        input_hash: ctx.input_hash(),
        result,
    }
}

fn run_spec(spec: &PropertySpec) -> Result<PropertyReport> {
    let property = lookup(&spec.name)?;
    let models: Vec<ModelKind> = match &spec.models {
        Some(ms) => {
            let mut ms: Vec<ModelKind> = ms
                .iter()
                .copied()
                .filter(|m| property.models.contains(m))
                .collect();
            ms.sort();
            ms.dedup();
            ms
        }
        None => property.models.to_vec(),
    };
    let mut jobs = Vec::new();
    for &model in &models {
        for &dim in &spec.dims {
            for trial in 0..spec.trials {
                jobs.push((model, dim, trial));
            }
        }
    }
    let outcomes: Vec<TrialOutcome> = jobs
        .par_iter()
        .map(|&(model, dim, trial)| {
            let seed = trial_seed(spec.seed, property.name, model, dim, trial);
            run_trial(property, model, dim, trial, seed, spec.tol)
        })
        .collect();

    let mut report = PropertyReport {
        name: spec.name.clone(),
        anchor: property.anchor,
        models,
        dims: spec.dims.clone(),
        trials: outcomes.len(),
        failures: 0,
        worst_residual: 0.0,
        tol: spec.tol,
        seed: spec.seed,
        first_failure: None,
    };
    for o in &outcomes {
        if let Ok(c) = &o.result {
            if c.residual.is_nan() || c.residual > report.worst_residual {
                report.worst_residual = c.residual;
            }
        }
        if !o.passes(spec.tol) {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(FailureRecord {
                    model: o.model,
                    dim: o.dim,
                    trial: o.trial,
                    sub_seed: o.sub_seed,
                    input_hash: format!("{:016x}", o.input_hash),
                    residual: o.result.as_ref().ok().map(|c| c.residual),
                    error: o.result.as_ref().err().cloned(),
                });
            }
        }
    }
    Ok(report)
}

/// Runs every spec; unknown names are rejected before any trial runs.
pub fn run_suite(config: &[PropertySpec]) -> Result<VerificationReport> {
    for s in config {
        lookup(&s.name)?;
    }
    let properties = config.iter().map(run_spec).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        pass: properties.iter().all(PropertyReport::passed),
        properties,
        environment: Environment::current(),
    })
}
