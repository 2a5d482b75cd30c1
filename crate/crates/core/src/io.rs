//! JSON document forms for every evidence value.
//!
//! Documents are the on-disk interchange format: a `kind` tag plus the
//! payload schema of the corresponding type. Mass functions serialize
//! sparsely (subsets with zero mass are omitted; `"subset": []` is ∅),
//! ensembles and Gaussian states serialize densely. Wire numbers are `f64`;
//! conversion into the working scalar type happens on load.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experts::{BooleanEnsemble, PriorVector, ProbabilisticEnsemble};
use crate::frame::Frame;
use crate::logop::GaussianLogState;
use crate::mass::MassFunction;
use crate::scalar::Real;

/// Any loadable evidence payload, discriminated by the `kind` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceDocument {
    Mass(MassDoc),
    BooleanEnsemble(BooleanEnsembleDoc),
    ProbabilisticEnsemble(ProbabilisticEnsembleDoc),
    GaussianLogState(GaussianLogStateDoc),
}

impl EvidenceDocument {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    /// The document's frame labels, in order.
    pub fn frame_labels(&self) -> &[String] {
        match self {
            EvidenceDocument::Mass(d) => &d.frame,
            EvidenceDocument::BooleanEnsemble(d) => &d.frame,
            EvidenceDocument::ProbabilisticEnsemble(d) => &d.frame,
            EvidenceDocument::GaussianLogState(d) => &d.frame,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            EvidenceDocument::Mass(_) => "mass",
            EvidenceDocument::BooleanEnsemble(_) => "boolean_ensemble",
            EvidenceDocument::ProbabilisticEnsemble(_) => "probabilistic_ensemble",
            EvidenceDocument::GaussianLogState(_) => "gaussian_log_state",
        }
    }
}

/// One sparse mass assignment: the labels of a subset and its mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassEntry {
    pub subset: Vec<String>,
    pub value: f64,
}

/// Wire form of a mass function. Unlisted subsets carry zero mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassDoc {
    pub frame: Vec<String>,
    pub masses: Vec<MassEntry>,
}

impl MassDoc {
    pub fn to_mass<T: Real>(&self) -> Result<MassFunction<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let mut dense = vec![T::zero(); frame.subset_count()];
        let mut seen = vec![false; frame.subset_count()];
        for entry in &self.masses {
            let subset = frame.subset_of(&entry.subset)?;
            if seen[subset.index()] {
                return Err(Error::NotAMass(format!(
                    "subset {} listed twice",
                    frame.format_subset(subset)
                )));
            }
            seen[subset.index()] = true;
            dense[subset.index()] =
                T::from_f64(entry.value).ok_or(Error::NonFinite(entry.value))?;
        }
        MassFunction::new(frame, dense)
    }

    pub fn from_mass<T: Real>(mass: &MassFunction<T>) -> Self {
        MassDoc {
            frame: mass.frame().labels().to_vec(),
            masses: mass
                .focal_elements()
                .map(|(subset, value)| MassEntry {
                    subset: mass
                        .frame()
                        .subset_labels(subset)
                        .into_iter()
                        .map(str::to_string)
                        .collect(),
                    value: value.to_f64().unwrap_or(f64::NAN),
                })
                .collect(),
        }
    }
}

/// One boolean expert: a weight and the labels it deems possible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BooleanExpertDoc {
    pub weight: f64,
    pub possible: Vec<String>,
}

/// Wire form of a boolean ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BooleanEnsembleDoc {
    pub frame: Vec<String>,
    pub experts: Vec<BooleanExpertDoc>,
}

impl BooleanEnsembleDoc {
    pub fn to_ensemble<T: Real>(&self) -> Result<BooleanEnsemble<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let experts: Result<Vec<_>> = self
            .experts
            .iter()
            .map(|e| {
                let weight = T::from_f64(e.weight).ok_or(Error::NonFinite(e.weight))?;
                Ok((weight, frame.subset_of(&e.possible)?))
            })
            .collect();
        BooleanEnsemble::new(frame, experts?)
    }

    pub fn from_ensemble<T: Real>(ensemble: &BooleanEnsemble<T>) -> Self {
        BooleanEnsembleDoc {
            frame: ensemble.frame().labels().to_vec(),
            experts: ensemble
                .experts()
                .iter()
                .map(|e| BooleanExpertDoc {
                    weight: e.weight.to_f64().unwrap_or(f64::NAN),
                    possible: ensemble
                        .frame()
                        .subset_labels(e.opinion)
                        .into_iter()
                        .map(str::to_string)
                        .collect(),
                })
                .collect(),
        }
    }
}

/// One probabilistic expert: a weight and a per-label opinion vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilisticExpertDoc {
    pub weight: f64,
    pub opinion: Vec<f64>,
}

/// Wire form of a probabilistic ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilisticEnsembleDoc {
    pub frame: Vec<String>,
    pub experts: Vec<ProbabilisticExpertDoc>,
}

impl ProbabilisticEnsembleDoc {
    pub fn to_ensemble<T: Real>(&self) -> Result<ProbabilisticEnsemble<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let experts: Result<Vec<_>> = self
            .experts
            .iter()
            .map(|e| {
                let weight = T::from_f64(e.weight).ok_or(Error::NonFinite(e.weight))?;
                let opinion: Result<Vec<T>> = e
                    .opinion
                    .iter()
                    .map(|&p| T::from_f64(p).ok_or(Error::NonFinite(p)))
                    .collect();
                Ok((weight, opinion?))
            })
            .collect();
        ProbabilisticEnsemble::new(frame, experts?)
    }

    pub fn from_ensemble<T: Real>(ensemble: &ProbabilisticEnsemble<T>) -> Self {
        ProbabilisticEnsembleDoc {
            frame: ensemble.frame().labels().to_vec(),
            experts: ensemble
                .experts()
                .iter()
                .map(|e| ProbabilisticExpertDoc {
                    weight: e.weight.to_f64().unwrap_or(f64::NAN),
                    opinion: e
                        .opinion
                        .iter()
                        .map(|p| p.to_f64().unwrap_or(f64::NAN))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Wire form of a Gaussian log-opinion state; the covariance carries both
/// triangles and is validated symmetric on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianLogStateDoc {
    pub frame: Vec<String>,
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
    pub weight: f64,
}

impl GaussianLogStateDoc {
    pub fn to_state<T: Real>(&self) -> Result<GaussianLogState<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let mean: Result<Vec<T>> = self
            .mean
            .iter()
            .map(|&v| T::from_f64(v).ok_or(Error::NonFinite(v)))
            .collect();
        let cov: Result<Vec<Vec<T>>> = self
            .cov
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| T::from_f64(v).ok_or(Error::NonFinite(v)))
                    .collect()
            })
            .collect();
        let weight = T::from_f64(self.weight).ok_or(Error::NonFinite(self.weight))?;
        GaussianLogState::new(frame, mean?, cov?, weight)
    }

    pub fn from_state<T: Real>(state: &GaussianLogState<T>) -> Self {
        GaussianLogStateDoc {
            frame: state.frame().labels().to_vec(),
            mean: state
                .mean()
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
            cov: state
                .cov_rows()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| v.to_f64().unwrap_or(f64::NAN))
                        .collect()
                })
                .collect(),
            weight: state.weight().to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Wire form of a prior vector, loaded from `--priors` files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorDoc {
    pub frame: Vec<String>,
    pub values: Vec<f64>,
}

impl PriorDoc {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_priors<T: Real>(&self) -> Result<PriorVector<T>> {
        let frame = Frame::new(self.frame.clone())?;
        let values: Result<Vec<T>> = self
            .values
            .iter()
            .map(|&v| T::from_f64(v).ok_or(Error::NonFinite(v)))
            .collect();
        PriorVector::new(frame, values?)
    }
}
